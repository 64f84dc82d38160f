//! Trajectory log CSV: fixed column order, three decimals everywhere, and
//! a strict parser for feeding logs back into the plot command.

use std::fmt::Write as _;

use pipecrawler::TrajectoryLog;

use crate::config::ConfigError;

pub const HEADER: &str = "t_s,x_mm,y_mm,heading_deg,theta1_deg,v1_mm_s,v2_mm_s,v3_mm_s,w1_rad_s,w2_rad_s,w3_rad_s,c1,c2,c3,singular";

/// Fixed three decimals, with the negative-zero artifact folded away so
/// equal runs always serialize to identical bytes.
pub fn fmt3(value: f64) -> String {
    let s = format!("{value:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

pub fn write_log(log: &TrajectoryLog) -> String {
    let mut out = String::with_capacity(64 * (log.records.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in &log.records {
        let mut cols: Vec<String> = vec![
            fmt3(r.t_s),
            fmt3(r.x_mm),
            fmt3(r.y_mm),
            fmt3(r.heading_deg),
            fmt3(r.orientation_deg),
        ];
        cols.extend(r.speeds_mm_s.iter().map(|&v| fmt3(v)));
        cols.extend(r.omega_rad_s.iter().map(|&w| fmt3(w)));
        cols.extend(r.contact.iter().map(|&c| if c { "1".to_string() } else { "0".to_string() }));
        cols.push(if r.singular { "1" } else { "0" }.to_string());
        let _ = writeln!(out, "{}", cols.join(","));
    }
    out
}

/// The slice of a log row the plot command consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotRow {
    pub t_s: f64,
    pub omega_rad_s: [f64; 3],
}

/// Strict parse of a trajectory CSV: exact header, fifteen columns per
/// row, numeric where numbers belong, 0/1 flags. Errors carry the line.
pub fn parse_log(text: &str) -> Result<Vec<PlotRow>, ConfigError> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(ConfigError("log is empty".to_string()));
    };
    if header.trim_end() != HEADER {
        return Err(ConfigError(format!(
            "line 1: unexpected header \"{header}\""
        )));
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 15 {
            return Err(ConfigError(format!(
                "line {n}: expected 15 columns, got {}",
                cols.len()
            )));
        }
        let num = |idx: usize| -> Result<f64, ConfigError> {
            cols[idx].parse().map_err(|_| {
                ConfigError(format!(
                    "line {n}: column {} is not a number: \"{}\"",
                    idx + 1,
                    cols[idx]
                ))
            })
        };
        for idx in 11..15 {
            if cols[idx] != "0" && cols[idx] != "1" {
                return Err(ConfigError(format!(
                    "line {n}: column {} must be 0 or 1, got \"{}\"",
                    idx + 1,
                    cols[idx]
                )));
            }
        }
        let row = PlotRow {
            t_s: num(0)?,
            omega_rad_s: [num(8)?, num(9)?, num(10)?],
        };
        for idx in 1..8 {
            num(idx)?;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ConfigError("log has a header but no rows".to_string()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pipecrawler::{SimRecord, TrajectoryLog};

    fn record(t: f64) -> SimRecord {
        SimRecord {
            t_s: t,
            x_mm: -0.0,
            y_mm: 123.4567,
            heading_deg: 0.0,
            orientation_deg: 60.0,
            speeds_mm_s: [100.0, -27.027027, 100.0],
            omega_rad_s: [4.0, -1.0810811, 4.0],
            contact: [true, false, true],
            singular: true,
        }
    }

    #[test]
    fn rows_are_three_decimal_and_flag_columns() {
        let log = TrajectoryLog {
            records: vec![record(0.0)],
            dt_s: 0.01,
        };
        let text = write_log(&log);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "0.000,0.000,123.457,0.000,60.000,100.000,-27.027,100.000,4.000,-1.081,4.000,1,0,1,1"
        );
        assert!(lines.next().is_none());
    }

    #[test]
    fn negative_zero_never_reaches_the_file() {
        assert_eq!(fmt3(-0.0), "0.000");
        assert_eq!(fmt3(-0.0004), "0.000");
        assert_eq!(fmt3(-0.0006), "-0.001");
    }

    #[test]
    fn round_trips_through_the_parser() {
        let log = TrajectoryLog {
            records: vec![record(0.0), record(0.01)],
            dt_s: 0.01,
        };
        let rows = parse_log(&write_log(&log)).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].omega_rad_s, [4.0, -1.081, 4.0]);
        assert_eq!(rows[1].t_s, 0.01);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(parse_log("").is_err());
        assert!(parse_log("nonsense\n").unwrap_err().0.contains("line 1"));
        let short = format!("{HEADER}\n0.000,1.0\n");
        assert!(parse_log(&short).unwrap_err().0.contains("line 2"));
        let bad_flag = format!(
            "{HEADER}\n0,0,0,0,0,0,0,0,0,0,0,2,0,0,0\n"
        );
        assert!(parse_log(&bad_flag).unwrap_err().0.contains("must be 0 or 1"));
        let bad_num = format!(
            "{HEADER}\n0,x,0,0,0,0,0,0,0,0,0,0,0,0,0\n"
        );
        assert!(parse_log(&bad_num).unwrap_err().0.contains("column 2"));
        let header_only = format!("{HEADER}\n");
        assert!(parse_log(&header_only).unwrap_err().0.contains("no rows"));
    }
}
