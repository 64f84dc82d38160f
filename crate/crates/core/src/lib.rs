//! Kinematic analysis and maneuver simulation for a three-module
//! circumferential in-pipe robot.
//!
//! The robot presses three wheeled modules, spaced 120 degrees apart
//! around a central backbone, against the bore of a pipe. This crate
//! covers the geometry and kinematics that sizing and driving such a
//! robot needs:
//!
//! - [`geometry`]: pipe networks and the elliptical section a bore shows
//!   to a plane inclined against it.
//! - [`robot`]: physical parameters, spring quasi-statics, and the
//!   kinematic state of the module triad.
//! - [`singularity`]: the band of wall that falls beyond wheel reach in a
//!   bend, and the body orientations that keep every wheel on the wall.
//! - [`planner`]: maneuver schedules with per-module speed ratios for
//!   elbows and branch turns, and reorientation rolls between them.
//! - [`simulator`]: time-stepped execution of a plan with contact and
//!   trajectory logging.

pub mod angles;
pub mod error;
pub mod geometry;
pub mod planner;
pub mod robot;
pub mod simulator;
pub mod singularity;

pub use error::{Error, Result};
pub use geometry::{
    cross_section, ray_distance_to_ellipse, validate_network, BranchSide, CrossSectionEllipse,
    PipeSegment, Point2,
};
pub use planner::{
    elbow_speed_ratios, plan_network, plan_t_junction, reorientation_command, Extent, MotionPlan,
    Phase, PhaseKind, PlanOptions, RollCommand,
};
pub use robot::{
    center_shift, drive_direction_factor, inner_spring_compression, ModuleState, RobotParams,
    RobotState, MODULE_COUNT, MODULE_SPACING_DEG,
};
pub use simulator::{
    angular_velocity_trace, run_scenario, simplified_path, step, PathModel, SimConfig, SimRecord,
    TrajectoryLog,
};
pub use singularity::{
    ellipse_circle_intersections, is_singular, orientation_window, sector_angle,
    singularity_sector, singularity_threshold_inclination, OrientationWindow, SectorReference,
    SingularitySector,
};
