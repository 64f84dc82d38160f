//! Maneuver planning over a pipe network.
//!
//! A plan is a sequence of phases the simulator executes in order: straight
//! drives, in-place reorientations, and constant-radius turns whose
//! per-module speed ratios keep every wheel rolling without slip. Turns at
//! a branch are preceded by a staging drive that puts the module centre a
//! chosen fraction of the bore past the opening, and by a reorientation
//! whenever the current body orientation would swing a raised module
//! through the lost-contact sector.

use crate::angles::{cos_deg, normalize_orientation};
use crate::error::{Error, Result};
use crate::geometry::{validate_network, BranchSide, PipeSegment};
use crate::robot::{drive_direction_factor, RobotParams, MODULE_COUNT, MODULE_SPACING_DEG};
use crate::singularity::{singularity_sector, SectorReference};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    Straight,
    Reorient,
    ElbowTurn,
    TJunctionTurn,
}

/// How far a phase runs: a straight distance, a clock time, or an arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    Arc { length_mm: f64 },
    Duration { seconds: f64 },
    Turn { path_radius_mm: f64, sweep_deg: f64 },
}

impl Extent {
    /// Centreline distance covered, None for timed phases.
    pub fn arc_length_mm(&self) -> Option<f64> {
        match *self {
            Extent::Arc { length_mm } => Some(length_mm),
            Extent::Turn {
                path_radius_mm,
                sweep_deg,
            } => Some(path_radius_mm * sweep_deg.abs().to_radians()),
            Extent::Duration { .. } => None,
        }
    }
}

/// One executable step of a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub kind: PhaseKind,
    /// Index of the network segment this phase runs in.
    pub segment: usize,
    pub extent: Extent,
    /// Commanded wheel surface speed per module, before the roll-state
    /// correction the controller applies.
    pub speeds_mm_s: [f64; MODULE_COUNT],
    /// Wheel roll issued over the phase; zero outside reorientations.
    pub roll_delta_deg: f64,
    /// Body orientation the phase ends on, when it changes it.
    pub target_orientation_deg: Option<f64>,
    /// Drive correction for the accumulated wheel roll: commanded speeds
    /// are multiplied by this so the robot advances as planned.
    pub parity: i8,
}

impl Phase {
    /// Advance rate along the centreline with every wheel on the wall.
    pub fn nominal_advance_rate_mm_s(&self) -> f64 {
        self.speeds_mm_s.iter().sum::<f64>() / MODULE_COUNT as f64
    }

    /// Wall-clock length of the phase assuming full contact throughout.
    /// None when the phase cannot advance at all.
    pub fn nominal_duration_s(&self) -> Option<f64> {
        match self.extent {
            Extent::Duration { seconds } => Some(seconds),
            _ => {
                let rate = self.nominal_advance_rate_mm_s().abs();
                if rate < 1e-12 {
                    return None;
                }
                Some(self.extent.arc_length_mm().unwrap() / rate)
            }
        }
    }
}

/// Full maneuver schedule for a network traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionPlan {
    pub phases: Vec<Phase>,
    pub initial_orientation_deg: f64,
}

impl MotionPlan {
    /// Sum of nominal phase durations, None if any phase cannot advance.
    pub fn nominal_duration_s(&self) -> Option<f64> {
        self.phases.iter().map(Phase::nominal_duration_s).sum()
    }
}

/// Planner knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    /// Fraction of the bore radius past the branch opening at which the
    /// module centre is staged before a junction turn.
    pub start_fraction: f64,
    /// Extend reorientation rolls by full module pitches until the drive
    /// correction comes out positive.
    pub prefer_full_turns: bool,
    /// Skip reorientations the plan calls for; turns then run with speed
    /// schedules that assume the reorientation happened.
    pub suppress_reorient: bool,
    /// Section inclination used for lost-contact analysis at branches.
    pub analysis_inclination_deg: f64,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            start_fraction: 0.5,
            prefer_full_turns: false,
            suppress_reorient: false,
            analysis_inclination_deg: 45.0,
        }
    }
}

impl PlanOptions {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.start_fraction) {
            return Err(Error::Domain(format!(
                "start fraction must lie in [0, 1], got {}",
                self.start_fraction
            )));
        }
        if !(0.0..90.0).contains(&self.analysis_inclination_deg) {
            return Err(Error::Domain(format!(
                "analysis inclination must lie in [0, 90), got {}",
                self.analysis_inclination_deg
            )));
        }
        Ok(())
    }
}

/// Per-module speed ratios for a constant-radius turn.
///
/// Module i rides at distance bend_radius + contact_radius * cos(phase_i)
/// from the turn axis; scaling each distance by the largest gives ratios
/// with the fastest module at exactly 1.
pub fn elbow_speed_ratios(
    bend_radius_mm: f64,
    contact_radius_mm: f64,
    module_phase_deg: [f64; MODULE_COUNT],
) -> Result<[f64; MODULE_COUNT]> {
    if !(contact_radius_mm >= 0.0) {
        return Err(Error::Domain(format!(
            "contact radius must be non-negative, got {contact_radius_mm}"
        )));
    }
    if !(bend_radius_mm > contact_radius_mm) {
        return Err(Error::Domain(format!(
            "bend radius {bend_radius_mm} must exceed the contact radius {contact_radius_mm}"
        )));
    }
    let rho = module_phase_deg.map(|phi| bend_radius_mm + contact_radius_mm * cos_deg(phi));
    let max = rho.iter().fold(f64::MIN, |m, &r| m.max(r));
    Ok(rho.map(|r| r / max))
}

/// A reorientation roll resolved against the accumulated wheel roll.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollCommand {
    /// Wheel roll to issue; body orientation changes by this times the
    /// roll ratio.
    pub roll_delta_deg: f64,
    /// Drive correction in force after the roll.
    pub parity: i8,
    /// Accumulated wheel roll after the roll.
    pub cumulative_roll_deg: f64,
}

/// Shortest wheel roll that takes the body from one orientation to
/// another, given the wheel roll already accumulated.
///
/// Orientations repeat every module pitch, so the body move is folded to
/// at most half a pitch. With `prefer_full_turns` the roll may be extended
/// by whole pitches to land the wheels where forward drive stays forward.
pub fn reorientation_command(
    current_theta1_deg: f64,
    target_theta1_deg: f64,
    roll_ratio: f64,
    cumulative_roll_deg: f64,
    prefer_full_turns: bool,
) -> Result<RollCommand> {
    if !(roll_ratio > 0.0) || !roll_ratio.is_finite() {
        return Err(Error::Domain(format!(
            "roll ratio must be positive and finite, got {roll_ratio}"
        )));
    }
    let body_delta = normalize_orientation(target_theta1_deg - current_theta1_deg);
    let base = body_delta / roll_ratio;
    let mut delta = base;
    if prefer_full_turns {
        let full_pitch = MODULE_SPACING_DEG / roll_ratio;
        let mut best: Option<f64> = None;
        for k in -3..=3 {
            let cand = base + k as f64 * full_pitch;
            if drive_direction_factor(cumulative_roll_deg + cand) == 1 {
                let better = best.map_or(true, |b: f64| cand.abs() < b.abs());
                if better {
                    best = Some(cand);
                }
            }
        }
        if let Some(b) = best {
            delta = b;
        }
    }
    let cumulative = cumulative_roll_deg + delta;
    Ok(RollCommand {
        roll_delta_deg: delta,
        parity: drive_direction_factor(cumulative),
        cumulative_roll_deg: cumulative,
    })
}

const JUNCTION_MODULE_PHASE_DEG: [f64; MODULE_COUNT] = [180.0, 60.0, 300.0];
const ELBOW_MODULE_PHASE_DEG: [f64; MODULE_COUNT] = [0.0, 120.0, 240.0];

/// Phases that take the robot through a branch: an optional reorientation,
/// a staging drive, and the quarter-circle turn into the branch.
pub fn plan_t_junction(
    params: &RobotParams,
    branch_side: BranchSide,
    current_orientation_deg: f64,
    cumulative_roll_deg: f64,
    options: &PlanOptions,
    segment_index: usize,
) -> Result<Vec<Phase>> {
    params.validate()?;
    options.validate()?;
    let theta1 = normalize_orientation(current_orientation_deg);
    let shift = params.center_shift_mm()?;
    let sector = singularity_sector(
        params.pipe_radius_mm,
        options.analysis_inclination_deg,
        params.free_radius_mm,
        shift,
    )?;

    let mut phases = Vec::new();
    let mut turn_theta1 = theta1;
    let mut cumulative = cumulative_roll_deg;
    if !sector.is_empty() {
        let angle = sector.sector_angle_deg(SectorReference::ShiftedCenter)?;
        let half_window = (90.0 - angle / 2.0) - (MODULE_SPACING_DEG - 90.0);
        if half_window < 0.0 {
            return Err(Error::InfeasiblePlan(format!(
                "no body orientation keeps both raised modules on the wall at inclination {} deg",
                options.analysis_inclination_deg
            )));
        }
        if theta1.abs() > half_window {
            turn_theta1 = 0.0;
            if !options.suppress_reorient {
                let command = reorientation_command(
                    theta1,
                    0.0,
                    params.roll_ratio,
                    cumulative,
                    options.prefer_full_turns,
                )?;
                cumulative = command.cumulative_roll_deg;
                phases.push(Phase {
                    kind: PhaseKind::Reorient,
                    segment: segment_index,
                    extent: Extent::Duration {
                        seconds: command.roll_delta_deg.abs() / params.roll_rate_deg_s,
                    },
                    speeds_mm_s: [0.0; MODULE_COUNT],
                    roll_delta_deg: command.roll_delta_deg,
                    target_orientation_deg: Some(0.0),
                    parity: command.parity,
                });
            }
        }
    }

    let radius = params.pipe_radius_mm;
    let approach = radius * (1.0 + options.start_fraction) - params.module_length_mm / 2.0;
    if approach < 0.0 {
        return Err(Error::InfeasiblePlan(format!(
            "module length {} mm leaves no room to stage before the branch axis",
            params.module_length_mm
        )));
    }
    let parity = drive_direction_factor(cumulative);
    phases.push(Phase {
        kind: PhaseKind::Straight,
        segment: segment_index,
        extent: Extent::Arc { length_mm: approach },
        speeds_mm_s: [params.drive_speed_mm_s; MODULE_COUNT],
        roll_delta_deg: 0.0,
        target_orientation_deg: None,
        parity,
    });

    let path_radius = 2.0 * radius - approach;
    if path_radius <= params.free_radius_mm {
        return Err(Error::InfeasiblePlan(format!(
            "turn radius {path_radius} mm does not clear the wheel reach {} mm",
            params.free_radius_mm
        )));
    }
    let module_phases = JUNCTION_MODULE_PHASE_DEG.map(|b| b + turn_theta1);
    let ratios = elbow_speed_ratios(path_radius, params.free_radius_mm, module_phases)?;
    let mut speeds = ratios.map(|r| r * params.drive_speed_mm_s);
    speeds[0] = -speeds[0];
    let sweep_deg = match branch_side {
        BranchSide::Right => 90.0,
        BranchSide::Left => -90.0,
    };
    phases.push(Phase {
        kind: PhaseKind::TJunctionTurn,
        segment: segment_index,
        extent: Extent::Turn {
            path_radius_mm: path_radius,
            sweep_deg,
        },
        speeds_mm_s: speeds,
        roll_delta_deg: 0.0,
        target_orientation_deg: None,
        parity,
    });
    Ok(phases)
}

/// Plan a traversal of the whole network from the given starting body
/// orientation.
pub fn plan_network(
    network: &[PipeSegment],
    params: &RobotParams,
    initial_orientation_deg: f64,
    options: &PlanOptions,
) -> Result<MotionPlan> {
    validate_network(network)?;
    params.validate()?;
    options.validate()?;
    if params.free_radius_mm <= params.pipe_radius_mm {
        return Err(Error::Domain(format!(
            "wheel reach {} mm must exceed the bore radius {} mm to hold the wall",
            params.free_radius_mm, params.pipe_radius_mm
        )));
    }
    if network[0].radius_mm() != params.pipe_radius_mm {
        return Err(Error::Domain(format!(
            "network bore radius {} mm differs from the radius the robot is sized for ({} mm)",
            network[0].radius_mm(),
            params.pipe_radius_mm
        )));
    }

    let mut theta1 = normalize_orientation(initial_orientation_deg);
    let mut cumulative = 0.0;
    let mut phases = Vec::new();
    for (i, seg) in network.iter().enumerate() {
        let parity = drive_direction_factor(cumulative);
        match *seg {
            PipeSegment::Straight { length_mm, .. } => phases.push(Phase {
                kind: PhaseKind::Straight,
                segment: i,
                extent: Extent::Arc { length_mm },
                speeds_mm_s: [params.drive_speed_mm_s; MODULE_COUNT],
                roll_delta_deg: 0.0,
                target_orientation_deg: None,
                parity,
            }),
            PipeSegment::Elbow {
                bend_radius_mm,
                bend_angle_deg,
                ..
            } => {
                if bend_radius_mm <= params.free_radius_mm {
                    return Err(Error::InfeasiblePlan(format!(
                        "bend radius {bend_radius_mm} mm does not clear the wheel reach {} mm",
                        params.free_radius_mm
                    )));
                }
                let module_phases = ELBOW_MODULE_PHASE_DEG.map(|b| b + theta1);
                let ratios =
                    elbow_speed_ratios(bend_radius_mm, params.free_radius_mm, module_phases)?;
                phases.push(Phase {
                    kind: PhaseKind::ElbowTurn,
                    segment: i,
                    extent: Extent::Turn {
                        path_radius_mm: bend_radius_mm,
                        sweep_deg: bend_angle_deg,
                    },
                    speeds_mm_s: ratios.map(|r| r * params.drive_speed_mm_s),
                    roll_delta_deg: 0.0,
                    target_orientation_deg: None,
                    parity,
                });
            }
            PipeSegment::TJunction { branch_side, .. } => {
                let junction_phases =
                    plan_t_junction(params, branch_side, theta1, cumulative, options, i)?;
                for phase in &junction_phases {
                    cumulative += phase.roll_delta_deg;
                    if let Some(target) = phase.target_orientation_deg {
                        theta1 = target;
                    }
                }
                phases.extend(junction_phases);
            }
        }
    }
    Ok(MotionPlan {
        phases,
        initial_orientation_deg: normalize_orientation(initial_orientation_deg),
    })
}
