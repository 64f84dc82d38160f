//! Pipe network primitives and the inclined cross-section ellipse.
//!
//! The section plane frame has x running horizontally across the bore and y
//! along the bend plane, with the origin on the pipe axis. A plane inclined
//! by theta to the axis-normal plane cuts a cylinder of radius R in the
//! ellipse x^2 + y^2 cos^2(theta) = R^2: semi-minor axis R along x,
//! semi-major axis R / cos(theta) along y.

use crate::angles::{cos_deg, sin_deg};
use crate::error::{Error, Result};

/// A point in the section plane, millimetres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }
}

/// Side a junction branch leaves on, looking along the direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSide {
    Left,
    Right,
}

/// One segment of a pipe network. Lengths in mm, angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PipeSegment {
    Straight {
        length_mm: f64,
        radius_mm: f64,
    },
    Elbow {
        bend_radius_mm: f64,
        bend_angle_deg: f64,
        radius_mm: f64,
    },
    TJunction {
        radius_mm: f64,
        branch_side: BranchSide,
    },
}

impl PipeSegment {
    pub fn radius_mm(&self) -> f64 {
        match *self {
            PipeSegment::Straight { radius_mm, .. }
            | PipeSegment::Elbow { radius_mm, .. }
            | PipeSegment::TJunction { radius_mm, .. } => radius_mm,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius_mm() > 0.0) {
            return Err(Error::Domain(format!(
                "segment bore radius must be positive, got {}",
                self.radius_mm()
            )));
        }
        match *self {
            PipeSegment::Straight { length_mm, .. } => {
                if !(length_mm > 0.0) {
                    return Err(Error::Domain(format!(
                        "straight length must be positive, got {length_mm}"
                    )));
                }
            }
            PipeSegment::Elbow {
                bend_radius_mm,
                bend_angle_deg,
                ..
            } => {
                if !(bend_radius_mm > 0.0) {
                    return Err(Error::Domain(format!(
                        "elbow bend radius must be positive, got {bend_radius_mm}"
                    )));
                }
                if !(bend_angle_deg > 0.0 && bend_angle_deg <= 180.0) {
                    return Err(Error::Domain(format!(
                        "elbow bend angle must lie in (0, 180], got {bend_angle_deg}"
                    )));
                }
            }
            PipeSegment::TJunction { .. } => {}
        }
        Ok(())
    }
}

/// Check every segment and require a single common bore radius at the joints.
pub fn validate_network(segments: &[PipeSegment]) -> Result<()> {
    if segments.is_empty() {
        return Err(Error::Domain("network has no segments".into()));
    }
    for seg in segments {
        seg.validate()?;
    }
    let r0 = segments[0].radius_mm();
    for (i, seg) in segments.iter().enumerate() {
        if seg.radius_mm() != r0 {
            return Err(Error::Domain(format!(
                "segment {i} bore radius {} differs from {} at the joint",
                seg.radius_mm(),
                r0
            )));
        }
    }
    Ok(())
}

/// Cross-section of the bore cut by a plane inclined to the axis-normal
/// plane. Degenerates as the inclination approaches 90 degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionEllipse {
    semi_major_mm: f64,
    semi_minor_mm: f64,
    inclination_deg: f64,
}

impl CrossSectionEllipse {
    /// Semi-major axis, along y.
    pub fn semi_major_mm(&self) -> f64 {
        self.semi_major_mm
    }

    /// Semi-minor axis, along x. Equal to the bore radius.
    pub fn semi_minor_mm(&self) -> f64 {
        self.semi_minor_mm
    }

    pub fn inclination_deg(&self) -> f64 {
        self.inclination_deg
    }

    /// sqrt(1 - (b/a)^2), which reduces to sin(inclination).
    pub fn eccentricity(&self) -> f64 {
        sin_deg(self.inclination_deg)
    }

    /// Quadratic form (x/b)^2 + (y/a)^2 - 1: negative inside, zero on the
    /// boundary, positive outside.
    pub fn residual(&self, p: Point2) -> f64 {
        let nx = p.x / self.semi_minor_mm;
        let ny = p.y / self.semi_major_mm;
        nx * nx + ny * ny - 1.0
    }
}

/// Build the section ellipse for a bore of `pipe_radius_mm` cut at
/// `inclination_deg` in [0, 90). Zero inclination yields the circular
/// section of a straight run.
pub fn cross_section(pipe_radius_mm: f64, inclination_deg: f64) -> Result<CrossSectionEllipse> {
    if !(pipe_radius_mm > 0.0) || !pipe_radius_mm.is_finite() {
        return Err(Error::Domain(format!(
            "pipe radius must be positive and finite, got {pipe_radius_mm}"
        )));
    }
    if !inclination_deg.is_finite() || inclination_deg < 0.0 {
        return Err(Error::Domain(format!(
            "inclination must lie in [0, 90), got {inclination_deg}"
        )));
    }
    if inclination_deg >= 90.0 {
        return Err(Error::DegenerateSection {
            inclination_deg,
        });
    }
    Ok(CrossSectionEllipse {
        semi_major_mm: pipe_radius_mm / cos_deg(inclination_deg),
        semi_minor_mm: pipe_radius_mm,
        inclination_deg,
    })
}

/// Distance from `center` along `direction_deg` to the section boundary.
/// `center` must lie strictly inside the section.
///
/// Substituting the ray into the quadratic form gives one positive root;
/// the negative root is the exit behind the origin.
pub fn ray_distance_to_ellipse(
    center: Point2,
    direction_deg: f64,
    section: &CrossSectionEllipse,
) -> Result<f64> {
    let inv_b2 = 1.0 / (section.semi_minor_mm * section.semi_minor_mm);
    let inv_a2 = 1.0 / (section.semi_major_mm * section.semi_major_mm);
    let f0 = center.x * center.x * inv_b2 + center.y * center.y * inv_a2 - 1.0;
    if f0 >= 0.0 {
        return Err(Error::CenterOutsideSection);
    }
    let dx = cos_deg(direction_deg);
    let dy = sin_deg(direction_deg);
    let qa = dx * dx * inv_b2 + dy * dy * inv_a2;
    let qb = 2.0 * (center.x * dx * inv_b2 + center.y * dy * inv_a2);
    let disc = qb * qb - 4.0 * qa * f0;
    Ok((-qb + disc.sqrt()) / (2.0 * qa))
}
