//! Degree-based trigonometry helpers.
//!
//! Public interfaces of this crate take angles in degrees. Cosines at exact
//! multiples of 30 degrees are looked up in a table instead of going through
//! radians, so the standard module spacing (0, 120, 240) produces exact
//! values and downstream speed ratios stay exact rationals.

const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

const COS_TABLE: [f64; 12] = [
    1.0,
    SQRT3_OVER_2,
    0.5,
    0.0,
    -0.5,
    -SQRT3_OVER_2,
    -1.0,
    -SQRT3_OVER_2,
    -0.5,
    0.0,
    0.5,
    SQRT3_OVER_2,
];

pub fn cos_deg(angle_deg: f64) -> f64 {
    let a = angle_deg.rem_euclid(360.0);
    if a % 30.0 == 0.0 {
        COS_TABLE[(a / 30.0) as usize]
    } else {
        a.to_radians().cos()
    }
}

pub fn sin_deg(angle_deg: f64) -> f64 {
    cos_deg(angle_deg - 90.0)
}

/// Fold an orientation angle into (-60, 60], the symmetry cell of three
/// modules spaced 120 degrees apart.
pub fn normalize_orientation(theta1_deg: f64) -> f64 {
    let t = theta1_deg.rem_euclid(120.0);
    if t > 60.0 {
        t - 120.0
    } else {
        t
    }
}
