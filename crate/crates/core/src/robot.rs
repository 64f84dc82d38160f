//! Robot parameters, spring quasi-statics, and kinematic state.
//!
//! The robot is three identical wheeled modules spaced 120 degrees apart
//! around a central backbone, each pressed against the bore by a spring.
//! In a turn the inner module bears the robot weight through its spring,
//! which compresses and shifts the backbone centre off the pipe axis.

use crate::angles::cos_deg;
use crate::error::{Error, Result};

pub const MODULE_COUNT: usize = 3;
pub const MODULE_SPACING_DEG: f64 = 120.0;

/// Physical and drive parameters. Lengths mm, forces N, speeds mm/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotParams {
    /// Bore radius of the pipe the robot is sized for.
    pub pipe_radius_mm: f64,
    /// Radius swept by the wheel contact with all springs at free length.
    pub free_radius_mm: f64,
    /// Stiffness of each module spring.
    pub spring_k_n_per_mm: f64,
    /// Compression of every spring when driving a straight run.
    pub precompression_mm: f64,
    /// Hard stop on spring travel.
    pub max_compression_mm: f64,
    /// Robot weight carried by the inner module in a turn.
    pub weight_n: f64,
    /// Friction coefficient between wheel and bore.
    pub friction_mu: f64,
    /// Wheel surface speed commanded on a straight run.
    pub drive_speed_mm_s: f64,
    /// Body roll per unit of differential wheel roll.
    pub roll_ratio: f64,
    /// Roll rate during an in-place reorientation.
    pub roll_rate_deg_s: f64,
    /// Axial length of a module, wheel to wheel.
    pub module_length_mm: f64,
}

impl Default for RobotParams {
    fn default() -> Self {
        RobotParams {
            pipe_radius_mm: 80.0,
            free_radius_mm: 90.0,
            spring_k_n_per_mm: 0.5,
            precompression_mm: 5.0,
            max_compression_mm: 10.0,
            weight_n: 7.0,
            friction_mu: 0.23744,
            drive_speed_mm_s: 100.0,
            roll_ratio: 1.0,
            roll_rate_deg_s: 90.0,
            module_length_mm: 200.0,
        }
    }
}

impl RobotParams {
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("pipe_radius_mm", self.pipe_radius_mm),
            ("free_radius_mm", self.free_radius_mm),
            ("spring_k_n_per_mm", self.spring_k_n_per_mm),
            ("max_compression_mm", self.max_compression_mm),
            ("roll_rate_deg_s", self.roll_rate_deg_s),
            ("module_length_mm", self.module_length_mm),
        ];
        for (name, v) in positives {
            if !(v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        let non_negatives = [
            ("precompression_mm", self.precompression_mm),
            ("weight_n", self.weight_n),
            ("friction_mu", self.friction_mu),
        ];
        for (name, v) in non_negatives {
            if !(v >= 0.0) {
                return Err(Error::Domain(format!("{name} must be non-negative, got {v}")));
            }
        }
        if self.precompression_mm > self.max_compression_mm {
            return Err(Error::Domain(format!(
                "precompression {} exceeds max compression {}",
                self.precompression_mm, self.max_compression_mm
            )));
        }
        if !self.drive_speed_mm_s.is_finite() || !(self.roll_ratio > 0.0) {
            return Err(Error::Domain("drive speed must be finite and roll ratio positive".into()));
        }
        Ok(())
    }

    /// Spring compression of the weight-bearing inner module in a turn.
    pub fn turn_compression_mm(&self) -> Result<f64> {
        inner_spring_compression(self.weight_n, self.spring_k_n_per_mm, self.friction_mu)
    }

    /// Offset of the backbone centre from the pipe axis in a turn.
    pub fn center_shift_mm(&self) -> Result<f64> {
        Ok(center_shift(self.precompression_mm, self.turn_compression_mm()?))
    }
}

/// Compression of the inner module spring when it carries the robot weight.
///
/// Force balance on the 45-degree wheel pair: the normal force per wheel is
/// N = W / ((1 + mu) cos 45), split across the four spring-loaded wheel
/// mounts, so s = N / (4 K).
pub fn inner_spring_compression(weight_n: f64, spring_k_n_per_mm: f64, friction_mu: f64) -> Result<f64> {
    if !(spring_k_n_per_mm > 0.0) {
        return Err(Error::Domain(format!(
            "spring stiffness must be positive, got {spring_k_n_per_mm}"
        )));
    }
    if !(weight_n >= 0.0) {
        return Err(Error::Domain(format!("weight must be non-negative, got {weight_n}")));
    }
    if !(friction_mu >= 0.0) {
        return Err(Error::Domain(format!(
            "friction coefficient must be non-negative, got {friction_mu}"
        )));
    }
    let normal_n = weight_n / ((1.0 + friction_mu) * cos_deg(45.0));
    Ok(normal_n / (4.0 * spring_k_n_per_mm))
}

/// Centre offset produced when the inner spring relaxes from its straight-run
/// precompression to the turn compression. Negative when the turn compresses
/// the spring beyond the precompression.
pub fn center_shift(precompression_mm: f64, turn_compression_mm: f64) -> f64 {
    precompression_mm - turn_compression_mm
}

/// Sign of the wheel train's forward contribution at a given accumulated
/// roll: +1 within a quarter turn of straight, -1 past it, 0 exactly
/// side-on.
pub fn drive_direction_factor(roll_angle_deg: f64) -> i8 {
    let r = roll_angle_deg.rem_euclid(360.0);
    if r == 90.0 || r == 270.0 {
        0
    } else if r < 90.0 || r > 270.0 {
        1
    } else {
        -1
    }
}

/// Per-module kinematic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleState {
    /// Direction from the backbone centre to the wheel contact, degrees in
    /// the section plane.
    pub angular_position_deg: f64,
    /// Accumulated wheel roll from reorientations; forward drive flips
    /// sign once this passes a quarter turn.
    pub roll_angle_deg: f64,
    pub compression_mm: f64,
    pub commanded_speed_mm_s: f64,
}

/// Whole-robot state along the network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState {
    /// Arc length travelled along the current segment centreline.
    pub arc_position_mm: f64,
    /// Heading in the plane of the network, degrees; 0 points along +y.
    pub heading_deg: f64,
    /// Body orientation theta1: rotation of the module triad about the
    /// backbone. Accumulates continuously; fold with
    /// `angles::normalize_orientation` when comparing orientations.
    pub orientation_deg: f64,
    pub modules: [ModuleState; MODULE_COUNT],
}

impl RobotState {
    /// Rest state at the start of a segment. Module 0 hangs at the bottom
    /// of the section for zero orientation; the others follow at 120-degree
    /// spacing.
    pub fn initial(params: &RobotParams, orientation_deg: f64) -> Self {
        let mut modules = [ModuleState {
            angular_position_deg: 0.0,
            roll_angle_deg: 0.0,
            compression_mm: params.precompression_mm,
            commanded_speed_mm_s: 0.0,
        }; MODULE_COUNT];
        for (i, m) in modules.iter_mut().enumerate() {
            m.angular_position_deg = -90.0 + orientation_deg + MODULE_SPACING_DEG * i as f64;
        }
        RobotState {
            arc_position_mm: 0.0,
            heading_deg: 0.0,
            orientation_deg,
            modules,
        }
    }
}
