//! Time-stepped kinematic execution of a motion plan.
//!
//! The runner advances phase by phase, consuming each tick continuously:
//! a tick can finish one phase and start the next, so the logged trajectory
//! is the exact polygonal path of the plan rather than an artifact of the
//! step size. Records land on a strict time grid; the last record is the
//! first grid point at or past completion.
//!
//! During a branch turn the bore around the robot is modelled as a section
//! whose inclination rises from zero to its steepest mid-turn and falls
//! back to zero, so contact is circular at both ends and tightest in the
//! middle. Straight runs, elbows, and reorientations keep every wheel on
//! the wall.

use crate::angles::{cos_deg, normalize_orientation, sin_deg};
use crate::error::{Error, Result};
use crate::geometry::{
    cross_section, ray_distance_to_ellipse, validate_network, PipeSegment, Point2,
};
use crate::planner::{Extent, MotionPlan, Phase, PhaseKind};
use crate::robot::{
    drive_direction_factor, RobotParams, RobotState, MODULE_COUNT, MODULE_SPACING_DEG,
};

/// Shape used for the pose during a branch turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathModel {
    /// Quarter circle at the turn radius.
    Arc,
    /// Straight cut between the quarter circle's endpoints.
    Diagonal,
}

/// Integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt_s: f64,
    pub path_model: PathModel,
    pub wheel_radius_mm: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt_s: 0.01,
            path_model: PathModel::Arc,
            wheel_radius_mm: 25.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt_s > 0.0) || !self.dt_s.is_finite() {
            return Err(Error::Domain(format!(
                "time step must be positive and finite, got {}",
                self.dt_s
            )));
        }
        if !(self.wheel_radius_mm > 0.0) {
            return Err(Error::Domain(format!(
                "wheel radius must be positive, got {}",
                self.wheel_radius_mm
            )));
        }
        Ok(())
    }
}

/// One logged sample. Pose is in the plane of the network: the robot
/// starts at the origin heading along +y, and heading grows clockwise, so
/// the travel direction is (sin h, cos h).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRecord {
    pub t_s: f64,
    pub x_mm: f64,
    pub y_mm: f64,
    pub heading_deg: f64,
    pub orientation_deg: f64,
    pub speeds_mm_s: [f64; MODULE_COUNT],
    pub omega_rad_s: [f64; MODULE_COUNT],
    pub contact: [bool; MODULE_COUNT],
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryLog {
    pub records: Vec<SimRecord>,
    pub dt_s: f64,
}

/// Pose along a simplified quarter turn, parametrized by fraction
/// `u` in [0, 1]. Local frame: x toward the branch, y along the entry
/// heading; returns (x, y, heading turned).
///
/// The arc model follows the quarter circle at the path radius; the
/// diagonal model cuts straight between the same endpoints, shortening the
/// path from radius * pi / 2 to radius * sqrt(2).
pub fn simplified_path(u: f64, model: PathModel, path_radius_mm: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!(
            "path fraction must lie in [0, 1], got {u}"
        )));
    }
    if !(path_radius_mm > 0.0) {
        return Err(Error::Domain(format!(
            "path radius must be positive, got {path_radius_mm}"
        )));
    }
    let h = 90.0 * u;
    Ok(match model {
        PathModel::Arc => (
            path_radius_mm * (1.0 - cos_deg(h)),
            path_radius_mm * sin_deg(h),
            h,
        ),
        PathModel::Diagonal => (path_radius_mm * u, path_radius_mm * u, h),
    })
}

/// Wall-contact flags for the current module positions in a section of the
/// given inclination. Modules in the lower half bear on the wall by
/// weight; a raised module holds the wall only while it lies within the
/// free radius of the shifted centre.
fn contacts_in_section(
    state: &RobotState,
    inclination_deg: f64,
    params: &RobotParams,
    shift_mm: f64,
) -> Result<[bool; MODULE_COUNT]> {
    if inclination_deg <= 0.0 {
        return Ok([true; MODULE_COUNT]);
    }
    let section = cross_section(params.pipe_radius_mm, inclination_deg)?;
    let center = Point2::new(0.0, shift_mm);
    let mut out = [true; MODULE_COUNT];
    for (i, m) in state.modules.iter().enumerate() {
        if sin_deg(m.angular_position_deg) > 0.0 {
            out[i] = ray_distance_to_ellipse(center, m.angular_position_deg, &section)?
                <= params.free_radius_mm;
        }
    }
    Ok(out)
}

/// Centreline advance rate: the mean forward contribution of the modules
/// still on the wall, each corrected for its accumulated wheel roll.
fn advance_rate(phase: &Phase, state: &RobotState, contact: &[bool; MODULE_COUNT]) -> f64 {
    let mut sum = 0.0;
    let mut n = 0u32;
    for i in 0..MODULE_COUNT {
        if contact[i] {
            sum += phase.speeds_mm_s[i]
                * phase.parity as f64
                * drive_direction_factor(state.modules[i].roll_angle_deg) as f64;
            n += 1;
        }
    }
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Advance one tick of a straight drive or a reorientation from an
/// arbitrary state. Turn phases need the entry-pose context the scenario
/// runner keeps, and are rejected here.
pub fn step(
    state: &RobotState,
    phase: &Phase,
    params: &RobotParams,
    config: &SimConfig,
) -> Result<RobotState> {
    params.validate()?;
    config.validate()?;
    let mut next = *state;
    match phase.kind {
        PhaseKind::Straight => {
            let contact = [true; MODULE_COUNT];
            let rate = advance_rate(phase, state, &contact);
            if rate == 0.0 {
                return Err(Error::Stalled { t_s: 0.0 });
            }
            next.arc_position_mm += rate * config.dt_s;
            for (i, m) in next.modules.iter_mut().enumerate() {
                m.commanded_speed_mm_s = phase.speeds_mm_s[i] * phase.parity as f64;
            }
        }
        PhaseKind::Reorient => {
            let Extent::Duration { seconds } = phase.extent else {
                return Err(Error::Domain(
                    "reorientation phases must carry a timed extent".into(),
                ));
            };
            if seconds > 0.0 {
                let roll = phase.roll_delta_deg * (config.dt_s / seconds).min(1.0);
                let body = roll * params.roll_ratio;
                next.orientation_deg += body;
                for m in &mut next.modules {
                    m.roll_angle_deg += roll;
                    m.angular_position_deg += body;
                    m.commanded_speed_mm_s = 0.0;
                }
            }
        }
        PhaseKind::ElbowTurn | PhaseKind::TJunctionTurn => {
            return Err(Error::Domain(
                "turn phases are advanced by the scenario runner".into(),
            ));
        }
    }
    Ok(next)
}

/// Wheel angular velocities of the first two modules over time: the pair
/// that separates an inner module from an outer one in a turn.
pub fn angular_velocity_trace(log: &TrajectoryLog) -> Vec<(f64, f64, f64)> {
    log.records
        .iter()
        .map(|r| (r.t_s, r.omega_rad_s[0], r.omega_rad_s[1]))
        .collect()
}

fn mismatch(msg: String) -> Error {
    Error::PlanMismatch(msg)
}

/// Require the plan to cover the network segment by segment: one drive
/// phase per straight, one turn per elbow, and an optional reorientation
/// plus a staging drive plus a quarter turn per branch.
fn check_plan_matches(network: &[PipeSegment], plan: &MotionPlan) -> Result<()> {
    let phases = &plan.phases;
    let mut pi = 0usize;
    for (si, seg) in network.iter().enumerate() {
        match *seg {
            PipeSegment::Straight { length_mm, .. } => {
                let p = phases
                    .get(pi)
                    .ok_or_else(|| mismatch(format!("no drive phase for straight segment {si}")))?;
                let length_matches = matches!(p.extent, Extent::Arc { length_mm: l } if l == length_mm);
                if p.kind != PhaseKind::Straight || p.segment != si || !length_matches {
                    return Err(mismatch(format!(
                        "segment {si} is a {length_mm} mm straight but phase {pi} does not drive it"
                    )));
                }
                pi += 1;
            }
            PipeSegment::Elbow {
                bend_radius_mm,
                bend_angle_deg,
                ..
            } => {
                let p = phases
                    .get(pi)
                    .ok_or_else(|| mismatch(format!("no turn phase for elbow segment {si}")))?;
                let turn_matches = matches!(
                    p.extent,
                    Extent::Turn { path_radius_mm, sweep_deg }
                        if path_radius_mm == bend_radius_mm && sweep_deg.abs() == bend_angle_deg
                );
                if p.kind != PhaseKind::ElbowTurn || p.segment != si || !turn_matches {
                    return Err(mismatch(format!(
                        "segment {si} is an elbow but phase {pi} does not turn it"
                    )));
                }
                pi += 1;
            }
            PipeSegment::TJunction { branch_side, .. } => {
                if let Some(p) = phases.get(pi) {
                    if p.kind == PhaseKind::Reorient && p.segment == si {
                        let timed = matches!(p.extent, Extent::Duration { seconds } if seconds >= 0.0);
                        if !timed {
                            return Err(mismatch(format!(
                                "reorientation before segment {si} must carry a timed extent"
                            )));
                        }
                        pi += 1;
                    }
                }
                let p = phases.get(pi).ok_or_else(|| {
                    mismatch(format!("no staging drive for branch segment {si}"))
                })?;
                let stages = matches!(p.extent, Extent::Arc { length_mm } if length_mm >= 0.0);
                if p.kind != PhaseKind::Straight || p.segment != si || !stages {
                    return Err(mismatch(format!(
                        "segment {si} is a branch but phase {pi} does not stage it"
                    )));
                }
                pi += 1;
                let p = phases.get(pi).ok_or_else(|| {
                    mismatch(format!("no turn phase for branch segment {si}"))
                })?;
                let expected_sweep = match branch_side {
                    crate::geometry::BranchSide::Right => 90.0,
                    crate::geometry::BranchSide::Left => -90.0,
                };
                let turn_matches = matches!(
                    p.extent,
                    Extent::Turn { path_radius_mm, sweep_deg }
                        if path_radius_mm > 0.0 && sweep_deg == expected_sweep
                );
                if p.kind != PhaseKind::TJunctionTurn || p.segment != si || !turn_matches {
                    return Err(mismatch(format!(
                        "segment {si} is a branch but phase {pi} does not turn into it"
                    )));
                }
                pi += 1;
            }
        }
    }
    if pi != phases.len() {
        return Err(mismatch(format!(
            "plan has {} phases beyond the last network segment",
            phases.len() - pi
        )));
    }
    Ok(())
}

/// Pose and roll bookkeeping captured when a phase becomes active.
#[derive(Debug, Clone, Copy)]
struct EntryState {
    x_mm: f64,
    y_mm: f64,
    heading_deg: f64,
    orientation_deg: f64,
    roll_angles_deg: [f64; MODULE_COUNT],
}

fn compose(entry: &EntryState, lx: f64, ly: f64, lh: f64) -> (f64, f64, f64) {
    let ch = cos_deg(entry.heading_deg);
    let sh = sin_deg(entry.heading_deg);
    (
        entry.x_mm + lx * ch + ly * sh,
        entry.y_mm - lx * sh + ly * ch,
        entry.heading_deg + lh,
    )
}

struct Runner<'a> {
    plan: &'a MotionPlan,
    params: &'a RobotParams,
    config: &'a SimConfig,
    shift_mm: f64,
    state: RobotState,
    idx: usize,
    /// Distance (mm) or time (s) consumed of the active phase's extent.
    consumed: f64,
    /// Signed centreline advance within the active phase.
    net_mm: f64,
    entry: EntryState,
}

impl<'a> Runner<'a> {
    fn new(plan: &'a MotionPlan, params: &'a RobotParams, config: &'a SimConfig) -> Result<Self> {
        let state = RobotState::initial(params, plan.initial_orientation_deg);
        let entry = EntryState {
            x_mm: 0.0,
            y_mm: 0.0,
            heading_deg: 0.0,
            orientation_deg: state.orientation_deg,
            roll_angles_deg: [0.0; MODULE_COUNT],
        };
        Ok(Runner {
            plan,
            params,
            config,
            shift_mm: params.center_shift_mm()?,
            state,
            idx: 0,
            consumed: 0.0,
            net_mm: 0.0,
            entry,
        })
    }

    fn done(&self) -> bool {
        self.idx >= self.plan.phases.len()
    }

    fn turn_fraction(&self, phase: &Phase) -> f64 {
        let total = phase.extent.arc_length_mm().unwrap_or(0.0);
        if total <= 0.0 {
            1.0
        } else {
            (self.consumed / total).clamp(0.0, 1.0)
        }
    }

    fn local_turn_pose(&self, phase: &Phase, u: f64) -> (f64, f64, f64) {
        let Extent::Turn {
            path_radius_mm,
            sweep_deg,
        } = phase.extent
        else {
            unreachable!("turn pose queried for a non-turn phase");
        };
        let side = if sweep_deg < 0.0 { -1.0 } else { 1.0 };
        let (lx, ly, lh) = if phase.kind == PhaseKind::TJunctionTurn {
            simplified_path(u, self.config.path_model, path_radius_mm)
                .expect("turn geometry validated before the run")
        } else {
            let swept = sweep_deg.abs() * u;
            (
                path_radius_mm * (1.0 - cos_deg(swept)),
                path_radius_mm * sin_deg(swept),
                swept,
            )
        };
        (side * lx, ly, side * lh)
    }

    fn pose(&self) -> (f64, f64, f64) {
        if self.done() {
            return (self.entry.x_mm, self.entry.y_mm, self.entry.heading_deg);
        }
        let phase = self.plan.phases[self.idx];
        match phase.kind {
            PhaseKind::Reorient => (self.entry.x_mm, self.entry.y_mm, self.entry.heading_deg),
            PhaseKind::Straight => compose(&self.entry, 0.0, self.net_mm, 0.0),
            _ => {
                let u = self.turn_fraction(&phase);
                let (lx, ly, lh) = self.local_turn_pose(&phase, u);
                compose(&self.entry, lx, ly, lh)
            }
        }
    }

    /// Section inclination the robot sees at the current point of the
    /// active phase: zero except mid branch turn, where it tents up to the
    /// steepest cut and back down.
    fn inclination_now(&self, phase: &Phase) -> f64 {
        if phase.kind != PhaseKind::TJunctionTurn {
            return 0.0;
        }
        let Extent::Turn { sweep_deg, .. } = phase.extent else {
            return 0.0;
        };
        let swept = sweep_deg.abs() * self.turn_fraction(phase);
        swept.min(90.0 - swept).max(0.0)
    }

    fn contacts(&self, phase: &Phase) -> Result<[bool; MODULE_COUNT]> {
        contacts_in_section(
            &self.state,
            self.inclination_now(phase),
            self.params,
            self.shift_mm,
        )
    }

    /// Rotate body and wheels to `frac` of the way through a
    /// reorientation, measured from the phase entry so repeated calls do
    /// not drift.
    fn apply_reorient(&mut self, phase: &Phase, frac: f64) {
        let roll = phase.roll_delta_deg * frac;
        let body = roll * self.params.roll_ratio;
        self.state.orientation_deg = self.entry.orientation_deg + body;
        for (i, m) in self.state.modules.iter_mut().enumerate() {
            m.roll_angle_deg = self.entry.roll_angles_deg[i] + roll;
            m.angular_position_deg =
                -90.0 + self.state.orientation_deg + MODULE_SPACING_DEG * i as f64;
        }
    }

    /// Snap the exact end state of the active phase and arm the next one.
    fn finish_phase(&mut self) {
        let phase = self.plan.phases[self.idx];
        let (x, y, heading) = match phase.kind {
            PhaseKind::Straight => {
                let length = phase.extent.arc_length_mm().unwrap_or(0.0);
                let sign = if self.net_mm < 0.0 { -1.0 } else { 1.0 };
                compose(&self.entry, 0.0, sign * length, 0.0)
            }
            PhaseKind::Reorient => {
                self.apply_reorient(&phase, 1.0);
                (self.entry.x_mm, self.entry.y_mm, self.entry.heading_deg)
            }
            _ => {
                let (lx, ly, lh) = self.local_turn_pose(&phase, 1.0);
                compose(&self.entry, lx, ly, lh)
            }
        };
        self.state.heading_deg = heading;
        self.entry = EntryState {
            x_mm: x,
            y_mm: y,
            heading_deg: heading,
            orientation_deg: self.state.orientation_deg,
            roll_angles_deg: [
                self.state.modules[0].roll_angle_deg,
                self.state.modules[1].roll_angle_deg,
                self.state.modules[2].roll_angle_deg,
            ],
        };
        self.idx += 1;
        self.consumed = 0.0;
        self.net_mm = 0.0;
    }

    /// Consume one tick, crossing phase boundaries as they fall inside it.
    fn advance_tick(&mut self, dt: f64, tick_start_s: f64) -> Result<()> {
        let mut tau = dt;
        while tau > 1e-15 && !self.done() {
            let phase = self.plan.phases[self.idx];
            match phase.extent {
                Extent::Duration { seconds } => {
                    if seconds - self.consumed <= 1e-9 {
                        self.finish_phase();
                        continue;
                    }
                    let use_t = tau.min(seconds - self.consumed);
                    self.consumed += use_t;
                    tau -= use_t;
                    let frac = (self.consumed / seconds).min(1.0);
                    self.apply_reorient(&phase, frac);
                    if seconds - self.consumed <= 1e-9 {
                        self.finish_phase();
                    }
                }
                _ => {
                    let total = phase.extent.arc_length_mm().unwrap_or(0.0);
                    if total - self.consumed <= 1e-9 {
                        self.finish_phase();
                        continue;
                    }
                    let contact = self.contacts(&phase)?;
                    let rate = advance_rate(&phase, &self.state, &contact);
                    if rate.abs() < 1e-12 {
                        return Err(Error::Stalled {
                            t_s: tick_start_s + (dt - tau),
                        });
                    }
                    let use_t = tau.min((total - self.consumed) / rate.abs());
                    self.consumed += rate.abs() * use_t;
                    self.net_mm += rate * use_t;
                    self.state.arc_position_mm += rate * use_t;
                    tau -= use_t;
                    if total - self.consumed <= 1e-9 {
                        self.finish_phase();
                    }
                }
            }
        }
        Ok(())
    }

    fn record(&mut self, t_s: f64) -> Result<SimRecord> {
        let (x_mm, y_mm, heading_deg) = self.pose();
        self.state.heading_deg = heading_deg;
        if self.done() {
            for m in &mut self.state.modules {
                m.commanded_speed_mm_s = 0.0;
            }
            return Ok(SimRecord {
                t_s,
                x_mm,
                y_mm,
                heading_deg,
                orientation_deg: normalize_orientation(self.state.orientation_deg),
                speeds_mm_s: [0.0; MODULE_COUNT],
                omega_rad_s: [0.0; MODULE_COUNT],
                contact: [true; MODULE_COUNT],
                singular: false,
            });
        }
        let phase = self.plan.phases[self.idx];
        let contact = self.contacts(&phase)?;
        let mut speeds = [0.0; MODULE_COUNT];
        let mut omega = [0.0; MODULE_COUNT];
        for i in 0..MODULE_COUNT {
            speeds[i] = phase.speeds_mm_s[i] * phase.parity as f64;
            omega[i] = speeds[i] / self.config.wheel_radius_mm;
            self.state.modules[i].commanded_speed_mm_s = speeds[i];
        }
        Ok(SimRecord {
            t_s,
            x_mm,
            y_mm,
            heading_deg,
            orientation_deg: normalize_orientation(self.state.orientation_deg),
            speeds_mm_s: speeds,
            omega_rad_s: omega,
            contact,
            singular: phase.kind == PhaseKind::TJunctionTurn && contact.iter().any(|c| !c),
        })
    }
}

const MAX_TICKS: u64 = 20_000_000;

/// Execute a plan over a network and log the trajectory on the configured
/// time grid. Fails if the plan does not cover the network, or if a phase
/// cannot advance (a stall).
pub fn run_scenario(
    network: &[PipeSegment],
    params: &RobotParams,
    plan: &MotionPlan,
    config: &SimConfig,
) -> Result<TrajectoryLog> {
    validate_network(network)?;
    params.validate()?;
    config.validate()?;
    check_plan_matches(network, plan)?;

    let mut runner = Runner::new(plan, params, config)?;
    let mut records = Vec::new();
    let first = runner.record(0.0)?;
    records.push(first);
    let mut tick: u64 = 0;
    while !runner.done() {
        if tick >= MAX_TICKS {
            return Err(Error::Domain(format!(
                "scenario did not complete within {MAX_TICKS} ticks"
            )));
        }
        let tick_start = tick as f64 * config.dt_s;
        runner.advance_tick(config.dt_s, tick_start)?;
        tick += 1;
        let rec = runner.record(tick as f64 * config.dt_s)?;
        records.push(rec);
    }
    Ok(TrajectoryLog {
        records,
        dt_s: config.dt_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{plan_network, PlanOptions};
    use approx::assert_relative_eq;

    fn straight_drive(length_mm: f64, parity: i8) -> Phase {
        Phase {
            kind: PhaseKind::Straight,
            segment: 0,
            extent: Extent::Arc { length_mm },
            speeds_mm_s: [100.0; MODULE_COUNT],
            roll_delta_deg: 0.0,
            target_orientation_deg: None,
            parity,
        }
    }

    #[test]
    fn step_advances_one_millimetre_per_tick() {
        let params = RobotParams::default();
        let state = RobotState::initial(&params, 0.0);
        let next = step(&state, &straight_drive(500.0, 1), &params, &SimConfig::default()).unwrap();
        assert_eq!(next.arc_position_mm, 1.0);
        assert_eq!(next.modules[0].commanded_speed_mm_s, 100.0);
    }

    #[test]
    fn step_reverses_after_half_turn_of_wheel_roll() {
        let params = RobotParams::default();
        let mut state = RobotState::initial(&params, 0.0);
        for m in &mut state.modules {
            m.roll_angle_deg = 180.0;
        }
        let next = step(&state, &straight_drive(500.0, 1), &params, &SimConfig::default()).unwrap();
        assert_eq!(next.arc_position_mm, -1.0);
    }

    #[test]
    fn step_stalls_with_wheels_side_on() {
        let params = RobotParams::default();
        let mut state = RobotState::initial(&params, 0.0);
        for m in &mut state.modules {
            m.roll_angle_deg = 90.0;
        }
        let err = step(&state, &straight_drive(500.0, 1), &params, &SimConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Stalled { .. }));
    }

    #[test]
    fn step_rejects_turn_phases() {
        let params = RobotParams::default();
        let state = RobotState::initial(&params, 0.0);
        let turn = Phase {
            kind: PhaseKind::TJunctionTurn,
            segment: 0,
            extent: Extent::Turn { path_radius_mm: 140.0, sweep_deg: 90.0 },
            speeds_mm_s: [100.0; MODULE_COUNT],
            roll_delta_deg: 0.0,
            target_orientation_deg: None,
            parity: 1,
        };
        assert!(matches!(
            step(&state, &turn, &params, &SimConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn step_rotates_during_reorientation() {
        let params = RobotParams::default();
        let state = RobotState::initial(&params, 0.0);
        let reorient = Phase {
            kind: PhaseKind::Reorient,
            segment: 0,
            extent: Extent::Duration { seconds: 1.0 },
            speeds_mm_s: [0.0; MODULE_COUNT],
            roll_delta_deg: 90.0,
            target_orientation_deg: None,
            parity: 1,
        };
        let next = step(&state, &reorient, &params, &SimConfig::default()).unwrap();
        assert_relative_eq!(next.orientation_deg, 0.9, max_relative = 1e-12);
        assert_relative_eq!(next.modules[0].roll_angle_deg, 0.9, max_relative = 1e-12);
        assert_relative_eq!(next.modules[0].angular_position_deg, -89.1, max_relative = 1e-12);
    }

    #[test]
    fn simplified_paths_share_endpoints() {
        for model in [PathModel::Arc, PathModel::Diagonal] {
            let (x0, y0, h0) = simplified_path(0.0, model, 140.0).unwrap();
            assert_eq!((x0, y0, h0), (0.0, 0.0, 0.0));
            let (x1, y1, h1) = simplified_path(1.0, model, 140.0).unwrap();
            assert_relative_eq!(x1, 140.0, max_relative = 1e-12);
            assert_relative_eq!(y1, 140.0, max_relative = 1e-12);
            assert_eq!(h1, 90.0);
        }
    }

    #[test]
    fn simplified_path_midpoints_differ_between_models() {
        let (ax, ay, ah) = simplified_path(0.5, PathModel::Arc, 140.0).unwrap();
        assert_relative_eq!(ax, 140.0 * (1.0 - cos_deg(45.0)), max_relative = 1e-12);
        assert_relative_eq!(ay, 140.0 * sin_deg(45.0), max_relative = 1e-12);
        assert_eq!(ah, 45.0);
        let (dx, dy, dh) = simplified_path(0.5, PathModel::Diagonal, 140.0).unwrap();
        assert_eq!((dx, dy, dh), (70.0, 70.0, 45.0));
    }

    #[test]
    fn simplified_path_rejects_bad_inputs() {
        assert!(matches!(
            simplified_path(-0.1, PathModel::Arc, 140.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            simplified_path(1.1, PathModel::Arc, 140.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            simplified_path(0.5, PathModel::Arc, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn plan_must_cover_the_network() {
        let network = [PipeSegment::Straight { length_mm: 500.0, radius_mm: 80.0 }];
        let params = RobotParams::default();
        let config = SimConfig::default();

        let empty = MotionPlan { phases: vec![], initial_orientation_deg: 0.0 };
        assert!(matches!(
            run_scenario(&network, &params, &empty, &config),
            Err(Error::PlanMismatch(_))
        ));

        let wrong_length = MotionPlan {
            phases: vec![straight_drive(400.0, 1)],
            initial_orientation_deg: 0.0,
        };
        assert!(matches!(
            run_scenario(&network, &params, &wrong_length, &config),
            Err(Error::PlanMismatch(_))
        ));

        let mut trailing = plan_network(&network, &params, 0.0, &PlanOptions::default()).unwrap();
        trailing.phases.push(straight_drive(100.0, 1));
        assert!(matches!(
            run_scenario(&network, &params, &trailing, &config),
            Err(Error::PlanMismatch(_))
        ));
    }
}
