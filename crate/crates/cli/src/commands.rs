//! Implementations behind the subcommands. Each returns the text it wants
//! written (report, CSV, or SVG) so the binary owns all I/O and exit
//! codes in one place.

use std::fmt;

use pipecrawler::angles::{cos_deg, normalize_orientation, sin_deg};
use pipecrawler::{
    cross_section, orientation_window, plan_network, ray_distance_to_ellipse, run_scenario,
    singularity_sector, singularity_threshold_inclination, Error, Extent, MotionPlan,
    OrientationWindow, PhaseKind, Point2, SectorReference,
};

use crate::config::{ConfigError, ScenarioConfig};
use crate::csv;
use crate::svg;

/// Anything a command can fail with, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad configuration, flags, or input file contents: exit 2.
    Config(String),
    /// The robot cannot move from some state in the run: exit 3.
    Stalled { t_s: f64 },
    /// The scenario is valid but cannot be planned or analyzed: exit 4.
    Infeasible(String),
    /// Filesystem trouble: exit 5.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Stalled { .. } => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Stalled { t_s } => write!(f, "robot stalled at t = {t_s:.3} s"),
            CliError::Infeasible(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Stalled { t_s } => CliError::Stalled { t_s },
            other => CliError::Infeasible(other.to_string()),
        }
    }
}

fn f3(v: f64) -> String {
    csv::fmt3(v)
}

/// Report of the unreachable sector at the configured analysis bend,
/// plus the section figure when asked for.
pub fn cmd_sector(config: &ScenarioConfig, want_svg: bool) -> Result<(String, Option<String>), CliError> {
    let params = &config.robot;
    let incl = config.options.analysis_inclination_deg;
    let compression = params.turn_compression_mm()?;
    let shift = params.center_shift_mm()?;
    let section = cross_section(params.pipe_radius_mm, incl)?;
    let sector = singularity_sector(params.pipe_radius_mm, incl, params.free_radius_mm, shift)?;

    let mut report = String::new();
    report.push_str(&format!(
        "section at {} deg: semi-minor {} mm, semi-major {} mm, eccentricity {}\n",
        f3(incl),
        f3(section.semi_minor_mm()),
        f3(section.semi_major_mm()),
        f3(section.eccentricity()),
    ));
    report.push_str(&format!(
        "inner spring compression in turn: {} mm\ncentre shift: {} mm\n",
        f3(compression),
        f3(shift),
    ));
    match singularity_threshold_inclination(params, shift)? {
        Some(t) => report.push_str(&format!("threshold inclination: {} deg\n", f3(t))),
        None => report.push_str("threshold inclination: none (reach never clears the bore)\n"),
    }
    match sector.points() {
        None => report.push_str("sector empty — no singularity\n"),
        Some((left, right)) => {
            report.push_str(&format!(
                "crossings: ({}, {}) and ({}, {}) mm\n",
                f3(left.x),
                f3(left.y),
                f3(right.x),
                f3(right.y),
            ));
            report.push_str(&format!(
                "sector angle (origin): {} deg\nsector angle (shifted centre): {} deg\n",
                f3(sector.sector_angle_deg(SectorReference::Origin)?),
                f3(sector.sector_angle_deg(SectorReference::ShiftedCenter)?),
            ));
        }
    }

    let figure = if want_svg {
        let theta1 = normalize_orientation(config.initial_theta1_deg);
        let mut modules = Vec::new();
        for i in 0..3 {
            let beta = -90.0 + theta1 + 120.0 * i as f64;
            let center = Point2::new(0.0, shift);
            let reach = ray_distance_to_ellipse(center, beta, &section)?;
            let contact = sin_deg(beta) <= 0.0 || reach <= params.free_radius_mm;
            let r = reach.min(params.free_radius_mm);
            let p = Point2::new(center.x + r * cos_deg(beta), center.y + r * sin_deg(beta));
            modules.push((p, contact));
        }
        Some(svg::sector_figure(
            &section,
            params.free_radius_mm,
            shift,
            sector.points(),
            &modules,
        ))
    } else {
        None
    };
    Ok((report, figure))
}

/// Allowed roll window about the preferred orientation, from both
/// reference centres, printed to two decimals.
pub fn cmd_window(config: &ScenarioConfig) -> Result<String, CliError> {
    let params = &config.robot;
    let shift = params.center_shift_mm()?;
    let sector = singularity_sector(
        params.pipe_radius_mm,
        config.options.analysis_inclination_deg,
        params.free_radius_mm,
        shift,
    )?;
    let mut out = String::new();
    for (label, reference) in [
        ("origin", SectorReference::Origin),
        ("shifted centre", SectorReference::ShiftedCenter),
    ] {
        match orientation_window(&sector, reference, 120.0) {
            OrientationWindow::Unconstrained => {
                out.push_str(&format!("orientation window ({label}): unconstrained\n"));
            }
            OrientationWindow::Limited { half_width_deg } => {
                out.push_str(&format!(
                    "orientation window ({label}): +/-{half_width_deg:.2} deg (total {:.2} deg)\n",
                    2.0 * half_width_deg
                ));
            }
        }
    }
    Ok(out)
}

fn phase_line(index: usize, phase: &pipecrawler::Phase) -> String {
    let speeds = format!(
        "{}/{}/{} mm/s",
        f3(phase.speeds_mm_s[0]),
        f3(phase.speeds_mm_s[1]),
        f3(phase.speeds_mm_s[2]),
    );
    let parity = match phase.parity {
        1 => "+1",
        -1 => "-1",
        _ => "0",
    };
    let body = match (phase.kind, phase.extent) {
        (PhaseKind::Straight, Extent::Arc { length_mm }) => {
            format!("straight       length {} mm  speeds {speeds}", f3(length_mm))
        }
        (PhaseKind::Reorient, Extent::Duration { seconds }) => format!(
            "reorient       duration {} s  roll {} deg -> orientation {} deg",
            f3(seconds),
            f3(phase.roll_delta_deg),
            f3(phase.target_orientation_deg.unwrap_or(0.0)),
        ),
        (PhaseKind::ElbowTurn, Extent::Turn { path_radius_mm, sweep_deg }) => format!(
            "elbow turn     radius {} mm  sweep {} deg  speeds {speeds}",
            f3(path_radius_mm),
            f3(sweep_deg),
        ),
        (PhaseKind::TJunctionTurn, Extent::Turn { path_radius_mm, sweep_deg }) => format!(
            "junction turn  radius {} mm  sweep {} deg  speeds {speeds}",
            f3(path_radius_mm),
            f3(sweep_deg),
        ),
        _ => "malformed phase".to_string(),
    };
    format!(
        "{index:>3}. segment {seg}  {body}  parity {parity}\n",
        seg = phase.segment
    )
}

fn build_plan(config: &ScenarioConfig) -> Result<MotionPlan, CliError> {
    Ok(plan_network(
        &config.network(),
        &config.robot,
        config.initial_theta1_deg,
        &config.options,
    )?)
}

/// Human-readable maneuver schedule for the configured network.
pub fn cmd_plan(config: &ScenarioConfig) -> Result<String, CliError> {
    let plan = build_plan(config)?;
    let mut out = String::new();
    let duration = match plan.nominal_duration_s() {
        Some(d) => format!("{} s", f3(d)),
        None => "never (plan cannot advance)".to_string(),
    };
    out.push_str(&format!(
        "plan: {} phases over {} segments, nominal duration {duration}\n",
        plan.phases.len(),
        config.segments.len(),
    ));
    out.push_str(&format!(
        "initial orientation: {} deg\n",
        f3(plan.initial_orientation_deg)
    ));
    for (i, phase) in plan.phases.iter().enumerate() {
        out.push_str(&phase_line(i + 1, phase));
    }
    Ok(out)
}

/// Plan, run, and serialize the trajectory log.
pub fn cmd_simulate(config: &ScenarioConfig) -> Result<String, CliError> {
    let plan = build_plan(config)?;
    let log = run_scenario(&config.network(), &config.robot, &plan, &config.sim)?;
    Ok(csv::write_log(&log))
}

const SWEEP_HEADER: &str = "value,sector_angle_origin_deg,sector_angle_shifted_deg,window_half_origin_deg,window_half_shifted_deg,threshold_deg";

/// One sector/window analysis per swept value, as a CSV table with blank
/// cells where a quantity is undefined at that value.
pub fn cmd_sweep(
    config: &ScenarioConfig,
    param: &str,
    from: f64,
    to: f64,
    step: f64,
) -> Result<String, CliError> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(CliError::Config(format!(
            "sweep step must be positive, got {step}"
        )));
    }
    if !(from <= to) {
        return Err(CliError::Config(format!(
            "sweep range is empty: from {from} to {to}"
        )));
    }
    match param {
        "inclination_deg" => {
            if from < 0.0 || to >= 90.0 {
                return Err(CliError::Config(format!(
                    "inclination sweep must stay in [0, 90), got {from}..{to}"
                )));
            }
        }
        "free_radius_mm" => {
            if from <= 0.0 {
                return Err(CliError::Config(format!(
                    "free radius sweep must be positive, got {from}..{to}"
                )));
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown sweep parameter \"{other}\"; use inclination_deg or free_radius_mm"
            )))
        }
    }

    let params = &config.robot;
    let shift = params.center_shift_mm()?;
    let rows = ((to - from) / step + 1e-9).floor() as usize + 1;
    let mut out = String::with_capacity(64 * (rows + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for i in 0..rows {
        let value = from + step * i as f64;
        let (incl, free) = match param {
            "inclination_deg" => (value, params.free_radius_mm),
            _ => (config.options.analysis_inclination_deg, value),
        };
        let sector = singularity_sector(params.pipe_radius_mm, incl, free, shift)?;
        let sector_cell = |reference| match sector.sector_angle_deg(reference) {
            Ok(angle) => f3(angle),
            Err(_) => String::new(),
        };
        let window_cell = |reference| match orientation_window(&sector, reference, 120.0) {
            OrientationWindow::Limited { half_width_deg } => f3(half_width_deg),
            OrientationWindow::Unconstrained => String::new(),
        };
        let threshold_params = pipecrawler::RobotParams {
            free_radius_mm: free,
            ..*params
        };
        let threshold = match singularity_threshold_inclination(&threshold_params, shift)? {
            Some(t) => f3(t),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            f3(value),
            sector_cell(SectorReference::Origin),
            sector_cell(SectorReference::ShiftedCenter),
            window_cell(SectorReference::Origin),
            window_cell(SectorReference::ShiftedCenter),
            threshold,
        ));
    }
    Ok(out)
}

/// Angular-velocity figure from a previously written trajectory CSV. The
/// columns mirror what `angular_velocity_trace` reports on a fresh log,
/// so plotting a just-simulated file draws the same figure.
pub fn cmd_plot(log_text: &str) -> Result<String, CliError> {
    let rows = csv::parse_log(log_text)?;
    let trace: Vec<(f64, f64, f64)> = rows
        .iter()
        .map(|r| (r.t_s, r.omega_rad_s[0], r.omega_rad_s[1]))
        .collect();
    Ok(svg::velocity_figure(&trace))
}
