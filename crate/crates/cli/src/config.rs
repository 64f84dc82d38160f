//! Flat `key = value` scenario configuration.
//!
//! One assignment per line, `#` starts a comment, dotted prefixes group
//! keys (`robot.`, `sim.`, `maneuver.`, `network.`). Later assignments win;
//! `network.segment` appends instead, with the first assignment replacing
//! the built-in default network. Unknown keys are rejected by name so a
//! typo cannot silently fall back to a default.

use std::fmt;
use std::fs;
use std::path::Path;

use pipecrawler::{BranchSide, PathModel, PipeSegment, PlanOptions, RobotParams, SimConfig};

/// A network segment before the bore radius is attached; the radius comes
/// from the robot parameters once the whole file is read, so segment lines
/// and `robot.pipe_radius_mm` may appear in any order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentSpec {
    Straight { length_mm: f64 },
    Elbow { bend_radius_mm: f64, bend_angle_deg: f64 },
    TJunction { branch_side: BranchSide },
}

impl SegmentSpec {
    pub fn materialize(self, radius_mm: f64) -> PipeSegment {
        match self {
            SegmentSpec::Straight { length_mm } => PipeSegment::Straight { length_mm, radius_mm },
            SegmentSpec::Elbow {
                bend_radius_mm,
                bend_angle_deg,
            } => PipeSegment::Elbow {
                bend_radius_mm,
                bend_angle_deg,
                radius_mm,
            },
            SegmentSpec::TJunction { branch_side } => PipeSegment::TJunction {
                radius_mm,
                branch_side,
            },
        }
    }
}

/// Everything a command needs: robot build, pipe network, simulation
/// settings, and maneuver options.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub robot: RobotParams,
    pub segments: Vec<SegmentSpec>,
    pub sim: SimConfig,
    pub options: PlanOptions,
    pub initial_theta1_deg: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            robot: RobotParams::default(),
            segments: vec![SegmentSpec::Straight { length_mm: 500.0 }],
            sim: SimConfig::default(),
            options: PlanOptions::default(),
            initial_theta1_deg: 0.0,
        }
    }
}

impl ScenarioConfig {
    /// The network with the configured bore radius attached.
    pub fn network(&self) -> Vec<PipeSegment> {
        self.segments
            .iter()
            .map(|s| s.materialize(self.robot.pipe_radius_mm))
            .collect()
    }
}

/// A configuration problem, always naming where it came from.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// One `key = value` assignment tagged with where it was written.
struct Assignment {
    source: String,
    key: String,
    value: String,
}

fn split_line(line: &str, source: &str) -> Result<Option<(String, String)>, ConfigError> {
    let bare = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let bare = bare.trim();
    if bare.is_empty() {
        return Ok(None);
    }
    let Some((key, value)) = bare.split_once('=') else {
        return Err(ConfigError(format!(
            "{source}: expected `key = value`, got \"{bare}\""
        )));
    };
    let key = key.trim();
    let value = value.trim();
    if key.is_empty() || value.is_empty() {
        return Err(ConfigError(format!(
            "{source}: expected `key = value`, got \"{bare}\""
        )));
    }
    Ok(Some((key.to_string(), value.to_string())))
}

fn parse_f64(a: &Assignment) -> Result<f64, ConfigError> {
    a.value.parse().map_err(|_| {
        ConfigError(format!(
            "{}: key \"{}\" needs a number, got \"{}\"",
            a.source, a.key, a.value
        ))
    })
}

fn parse_bool(a: &Assignment) -> Result<bool, ConfigError> {
    match a.value.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(ConfigError(format!(
            "{}: key \"{}\" needs true or false, got \"{other}\"",
            a.source, a.key
        ))),
    }
}

fn parse_segment(a: &Assignment) -> Result<SegmentSpec, ConfigError> {
    let words: Vec<&str> = a.value.split_whitespace().collect();
    let usage = || {
        ConfigError(format!(
            "{}: segment must be `straight <length_mm>`, `elbow <bend_radius_mm> \
             <bend_angle_deg>`, or `tjunction <left|right>`, got \"{}\"",
            a.source, a.value
        ))
    };
    let num = |w: &str| w.parse::<f64>().map_err(|_| usage());
    match words.as_slice() {
        ["straight", len] => Ok(SegmentSpec::Straight { length_mm: num(len)? }),
        ["elbow", radius, angle] => Ok(SegmentSpec::Elbow {
            bend_radius_mm: num(radius)?,
            bend_angle_deg: num(angle)?,
        }),
        ["tjunction", "left"] => Ok(SegmentSpec::TJunction {
            branch_side: BranchSide::Left,
        }),
        ["tjunction", "right"] => Ok(SegmentSpec::TJunction {
            branch_side: BranchSide::Right,
        }),
        _ => Err(usage()),
    }
}

fn apply(config: &mut ScenarioConfig, a: &Assignment, replaced_network: &mut bool) -> Result<(), ConfigError> {
    match a.key.as_str() {
        "robot.pipe_radius_mm" => config.robot.pipe_radius_mm = parse_f64(a)?,
        "robot.free_radius_mm" => config.robot.free_radius_mm = parse_f64(a)?,
        "robot.spring_k_n_per_mm" => config.robot.spring_k_n_per_mm = parse_f64(a)?,
        "robot.precompression_mm" => config.robot.precompression_mm = parse_f64(a)?,
        "robot.max_compression_mm" => config.robot.max_compression_mm = parse_f64(a)?,
        "robot.weight_n" => config.robot.weight_n = parse_f64(a)?,
        "robot.friction_mu" => config.robot.friction_mu = parse_f64(a)?,
        "robot.drive_speed_mm_s" => config.robot.drive_speed_mm_s = parse_f64(a)?,
        "robot.roll_ratio" => config.robot.roll_ratio = parse_f64(a)?,
        "robot.roll_rate_deg_s" => config.robot.roll_rate_deg_s = parse_f64(a)?,
        "robot.module_length_mm" => config.robot.module_length_mm = parse_f64(a)?,
        "sim.dt_s" => config.sim.dt_s = parse_f64(a)?,
        "sim.wheel_radius_mm" => config.sim.wheel_radius_mm = parse_f64(a)?,
        "sim.path_model" => {
            config.sim.path_model = match a.value.as_str() {
                "arc" => PathModel::Arc,
                "diagonal" => PathModel::Diagonal,
                other => {
                    return Err(ConfigError(format!(
                        "{}: key \"sim.path_model\" must be arc or diagonal, got \"{other}\"",
                        a.source
                    )))
                }
            }
        }
        "sim.analysis_inclination_deg" => config.options.analysis_inclination_deg = parse_f64(a)?,
        "maneuver.start_fraction" => config.options.start_fraction = parse_f64(a)?,
        "maneuver.prefer_full_turns" => config.options.prefer_full_turns = parse_bool(a)?,
        "maneuver.suppress_reorient" => config.options.suppress_reorient = parse_bool(a)?,
        "maneuver.initial_theta1_deg" => config.initial_theta1_deg = parse_f64(a)?,
        "network.segment" => {
            if !*replaced_network {
                config.segments.clear();
                *replaced_network = true;
            }
            config.segments.push(parse_segment(a)?);
        }
        other => {
            return Err(ConfigError(format!(
                "{}: unknown key \"{other}\"",
                a.source
            )))
        }
    }
    Ok(())
}

/// Build a configuration from an optional file plus `--set` overrides,
/// applied in that order. Every referenced invariant is validated before
/// the configuration is handed out.
pub fn load(path: Option<&Path>, sets: &[String]) -> Result<ScenarioConfig, ConfigError> {
    let mut assignments = Vec::new();
    if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| {
            ConfigError(format!("cannot read config {}: {e}", path.display()))
        })?;
        for (i, line) in text.lines().enumerate() {
            let source = format!("{}:{}", path.display(), i + 1);
            if let Some((key, value)) = split_line(line, &source)? {
                assignments.push(Assignment { source, key, value });
            }
        }
    }
    for (i, set) in sets.iter().enumerate() {
        let source = format!("--set #{}", i + 1);
        let Some((key, value)) = split_line(set, &source)? else {
            return Err(ConfigError(format!("{source}: empty override")));
        };
        assignments.push(Assignment { source, key, value });
    }

    let mut config = ScenarioConfig::default();
    let mut replaced_network = false;
    for a in &assignments {
        apply(&mut config, a, &mut replaced_network)?;
    }

    config
        .robot
        .validate()
        .map_err(|e| ConfigError(format!("robot parameters: {e}")))?;
    config
        .sim
        .validate()
        .map_err(|e| ConfigError(format!("sim settings: {e}")))?;
    config
        .options
        .validate()
        .map_err(|e| ConfigError(format!("maneuver options: {e}")))?;
    if config.segments.is_empty() {
        return Err(ConfigError("network has no segments".to_string()));
    }
    if !config.initial_theta1_deg.is_finite() {
        return Err(ConfigError(format!(
            "maneuver.initial_theta1_deg must be finite, got {}",
            config.initial_theta1_deg
        )));
    }
    Ok(config)
}
