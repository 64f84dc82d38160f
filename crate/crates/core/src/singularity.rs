//! Lost-contact analysis for inclined sections.
//!
//! In a bend the section is an ellipse, but a wheel reaches at most the
//! free radius from the backbone centre, which itself sits shifted off the
//! pipe axis while the inner module carries the weight. Wall beyond wheel
//! reach forms a sector at the top of the section; a module steered into it
//! loses contact and its drive authority. Body orientations are therefore
//! constrained to keep both raised modules outside the sector.

use crate::angles::normalize_orientation;
use crate::error::{Error, Result};
use crate::geometry::{cross_section, ray_distance_to_ellipse, CrossSectionEllipse, Point2};
use crate::robot::RobotParams;

/// Centre the sector angle is measured from.
///
/// `Origin` measures from the pipe axis; `ShiftedCenter` measures from the
/// backbone centre the modules actually sweep around, which is what contact
/// checks use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorReference {
    Origin,
    ShiftedCenter,
}

/// The band of section wall beyond wheel reach, bounded by the two
/// crossings of the section ellipse and the shifted reach circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySector {
    inclination_deg: f64,
    free_radius_mm: f64,
    shift_delta_mm: f64,
    /// Left (x < 0) and right (x > 0) crossing, None when the wall is
    /// everywhere within reach.
    points: Option<(Point2, Point2)>,
}

impl SingularitySector {
    pub fn inclination_deg(&self) -> f64 {
        self.inclination_deg
    }

    pub fn free_radius_mm(&self) -> f64 {
        self.free_radius_mm
    }

    pub fn shift_delta_mm(&self) -> f64 {
        self.shift_delta_mm
    }

    pub fn points(&self) -> Option<(Point2, Point2)> {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_none()
    }

    /// Height of the crossings above the pipe axis.
    pub fn edge_elevation_mm(&self) -> Option<f64> {
        self.points.map(|(_, right)| right.y)
    }

    /// Angle subtended by the sector about the chosen reference.
    pub fn sector_angle_deg(&self, reference: SectorReference) -> Result<f64> {
        match self.points {
            None => Err(Error::EmptySector),
            Some(points) => Ok(sector_angle(points, reference, self.shift_delta_mm)),
        }
    }
}

/// Crossings of the section ellipse with a reach circle of radius
/// `free_radius_mm` centred `shift_delta_mm` above the pipe axis.
///
/// Subtracting the two conics eliminates x and leaves a quadratic in y
/// whose larger root carries the upper crossing pair. Only the upper pair
/// bounds wall the raised modules can lose; crossings below the axis (the
/// section also outgrows reach under the weight-bearing module first) do
/// not count. Returns None when no upper crossing exists, meaning all wall
/// above the axis is within reach.
pub fn ellipse_circle_intersections(
    section: &CrossSectionEllipse,
    free_radius_mm: f64,
    shift_delta_mm: f64,
) -> Result<Option<(Point2, Point2)>> {
    if !(free_radius_mm > 0.0) {
        return Err(Error::Domain(format!(
            "reach radius must be positive, got {free_radius_mm}"
        )));
    }
    if !(shift_delta_mm >= 0.0) {
        return Err(Error::Domain(format!(
            "centre shift must be non-negative, got {shift_delta_mm}"
        )));
    }
    let r = section.semi_minor_mm();
    let rf = free_radius_mm;
    let delta = shift_delta_mm;
    let cos2 = (r / section.semi_major_mm()) * (r / section.semi_major_mm());

    // (cos^2 - 1) y^2 + 2 delta y + (rf^2 - r^2 - delta^2) = 0
    let qa = cos2 - 1.0;
    let qb = 2.0 * delta;
    let qc = rf * rf - r * r - delta * delta;

    let tol = 1e-12 * rf * rf;
    let point_at = |y: f64| -> Option<(Point2, Point2)> {
        if y <= 0.0 {
            // Crossings at or below the axis belong to the lower lobe.
            return None;
        }
        let x2 = rf * rf - (y - delta) * (y - delta);
        if x2 < -tol {
            return None;
        }
        let x = x2.max(0.0).sqrt();
        Some((Point2::new(-x, y), Point2::new(x, y)))
    };

    if qa == 0.0 {
        // Circular section: the conic difference is linear in y.
        if qb == 0.0 {
            // Concentric circles never cross; coincident ones leave no
            // wall beyond reach either.
            return Ok(None);
        }
        return Ok(point_at(-qc / qb));
    }

    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Ok(None);
    }
    let sq = disc.sqrt();
    let y1 = (-qb + sq) / (2.0 * qa);
    let y2 = (-qb - sq) / (2.0 * qa);
    Ok(point_at(y1.max(y2)))
}

/// Build the lost-contact sector for a bore cut at `inclination_deg`.
pub fn singularity_sector(
    pipe_radius_mm: f64,
    inclination_deg: f64,
    free_radius_mm: f64,
    shift_delta_mm: f64,
) -> Result<SingularitySector> {
    let section = cross_section(pipe_radius_mm, inclination_deg)?;
    let points = ellipse_circle_intersections(&section, free_radius_mm, shift_delta_mm)?;
    Ok(SingularitySector {
        inclination_deg,
        free_radius_mm,
        shift_delta_mm,
        points,
    })
}

/// Angle subtended at the reference centre by the sector between the two
/// crossings, through the top of the section.
///
/// Each crossing sits at elevation atan2(y_ref, |x|) above horizontal, so
/// the arc between them through the top is 180 minus twice that. A crossing
/// pair that has merged at the top (x = 0) subtends nothing.
pub fn sector_angle(points: (Point2, Point2), reference: SectorReference, shift_delta_mm: f64) -> f64 {
    let (_, right) = points;
    let y_ref = match reference {
        SectorReference::Origin => right.y,
        SectorReference::ShiftedCenter => right.y - shift_delta_mm,
    };
    let x_abs = right.x.abs();
    if x_abs == 0.0 {
        return 0.0;
    }
    180.0 - 2.0 * y_ref.atan2(x_abs).to_degrees()
}

/// Allowed body orientations in the presence of a sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrientationWindow {
    /// No sector: any orientation keeps all modules on the wall.
    Unconstrained,
    /// Orientations within `half_width_deg` of zero keep both raised
    /// modules on the wall. Zero width means only exact zero is safe.
    Limited { half_width_deg: f64 },
}

/// Orientation window implied by a sector for modules spaced
/// `module_spacing_deg` apart.
///
/// A crossing sits `90 - sector/2` above horizontal. A raised module sits
/// `module_spacing_deg - 90` above horizontal at zero orientation, so the
/// body may roll by the difference before that module enters the sector.
pub fn orientation_window(
    sector: &SingularitySector,
    reference: SectorReference,
    module_spacing_deg: f64,
) -> OrientationWindow {
    let angle = match sector.sector_angle_deg(reference) {
        Err(_) => return OrientationWindow::Unconstrained,
        Ok(a) => a,
    };
    let edge_elevation = 90.0 - angle / 2.0;
    let module_elevation = module_spacing_deg - 90.0;
    OrientationWindow::Limited {
        half_width_deg: (edge_elevation - module_elevation).max(0.0),
    }
}

/// Whether body orientation `theta1_deg` leaves a raised module off the
/// wall in a section inclined at `inclination_deg`.
///
/// The inner module hangs in the lower half and always touches; each raised
/// module, at `theta1 + 30` and `theta1 + 150` from horizontal, touches iff
/// the wall along its direction is within the free radius of the shifted
/// backbone centre.
pub fn is_singular(
    theta1_deg: f64,
    params: &RobotParams,
    inclination_deg: f64,
    shift_delta_mm: f64,
) -> Result<bool> {
    if !(shift_delta_mm >= 0.0) {
        return Err(Error::Domain(format!(
            "centre shift must be non-negative, got {shift_delta_mm}"
        )));
    }
    let t = normalize_orientation(theta1_deg);
    let section = cross_section(params.pipe_radius_mm, inclination_deg)?;
    let center = Point2::new(0.0, shift_delta_mm);
    for beta in [t + 30.0, t + 150.0] {
        if ray_distance_to_ellipse(center, beta, &section)? > params.free_radius_mm {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smallest inclination at which any wall falls beyond wheel reach, or
/// None when the reach circle covers the section at every inclination.
///
/// The section outgrows reach first at the top, where the semi-major axis
/// R / cos(theta) passes the circle top at free radius plus shift.
pub fn singularity_threshold_inclination(
    params: &RobotParams,
    shift_delta_mm: f64,
) -> Result<Option<f64>> {
    if !(shift_delta_mm >= 0.0) {
        return Err(Error::Domain(format!(
            "centre shift must be non-negative, got {shift_delta_mm}"
        )));
    }
    params.validate()?;
    let ratio = params.pipe_radius_mm / (params.free_radius_mm + shift_delta_mm);
    if ratio >= 1.0 {
        return Ok(None);
    }
    Ok(Some(ratio.acos().to_degrees()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn nominal_sector(inclination_deg: f64) -> SingularitySector {
        singularity_sector(80.0, inclination_deg, 90.0, 1.0).unwrap()
    }

    #[test]
    fn nominal_bend_crossings() {
        let sector = nominal_sector(45.0);
        let (left, right) = sector.points().unwrap();
        assert_relative_eq!(right.x, 67.678_258_454, max_relative = 1e-9);
        assert_relative_eq!(right.y, 60.326_666_286, max_relative = 1e-9);
        assert_eq!(left.x, -right.x);
        assert_eq!(left.y, right.y);
        assert_relative_eq!(sector.edge_elevation_mm().unwrap(), 60.326_666_286, max_relative = 1e-9);
    }

    #[test]
    fn crossings_lie_on_both_curves() {
        let sector = nominal_sector(45.0);
        let (_, right) = sector.points().unwrap();
        let section = cross_section(80.0, 45.0).unwrap();
        assert!(section.residual(right).abs() < 1e-12);
        let dy = right.y - 1.0;
        assert_relative_eq!(right.x * right.x + dy * dy, 90.0 * 90.0, max_relative = 1e-12);
    }

    #[test]
    fn unshifted_crossings_land_on_round_squares() {
        let sector = singularity_sector(80.0, 45.0, 90.0, 0.0).unwrap();
        let (_, right) = sector.points().unwrap();
        assert_relative_eq!(right.x, 4700f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(right.y, 3400f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn steeper_bend_crossings() {
        let sector = nominal_sector(60.0);
        let (_, right) = sector.points().unwrap();
        assert_relative_eq!(right.x, 76.164_525_760, max_relative = 1e-9);
        assert_relative_eq!(right.y, 48.947_523_562, max_relative = 1e-9);
    }

    #[test]
    fn straight_run_has_no_sector() {
        let sector = nominal_sector(0.0);
        assert!(sector.is_empty());
        assert_eq!(sector.sector_angle_deg(SectorReference::Origin), Err(Error::EmptySector));

        let coincident = singularity_sector(80.0, 0.0, 80.0, 0.0).unwrap();
        assert!(coincident.is_empty());
    }

    #[test]
    fn shallow_bend_below_threshold_has_no_sector() {
        assert!(nominal_sector(20.0).is_empty());
        assert!(nominal_sector(28.0).is_empty());
        assert!(!nominal_sector(29.0).is_empty());
    }

    #[test]
    fn sector_angle_about_each_reference() {
        let sector = nominal_sector(45.0);
        assert_relative_eq!(
            sector.sector_angle_deg(SectorReference::Origin).unwrap(),
            96.574_012_689,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            sector.sector_angle_deg(SectorReference::ShiftedCenter).unwrap(),
            97.524_480_738,
            max_relative = 1e-9
        );

        let steep = nominal_sector(60.0);
        assert_relative_eq!(
            steep.sector_angle_deg(SectorReference::Origin).unwrap(),
            114.545_928_355,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            steep.sector_angle_deg(SectorReference::ShiftedCenter).unwrap(),
            115.617_064_065,
            max_relative = 1e-9
        );
    }

    #[test]
    fn sector_angle_on_tabulated_crossings() {
        let points = (Point2::new(-67.67, 60.33), Point2::new(67.67, 60.33));
        assert_relative_eq!(
            sector_angle(points, SectorReference::Origin, 1.0),
            96.563_921_284,
            max_relative = 1e-9
        );
    }

    #[test]
    fn degenerate_crossings_subtend_nothing_or_everything_above() {
        let top = (Point2::new(0.0, 91.0), Point2::new(0.0, 91.0));
        assert_eq!(sector_angle(top, SectorReference::Origin, 1.0), 0.0);
        let side = (Point2::new(-90.0, 1.0), Point2::new(90.0, 1.0));
        assert_eq!(sector_angle(side, SectorReference::ShiftedCenter, 1.0), 180.0);
    }

    #[test]
    fn orientation_window_for_nominal_bend() {
        let sector = nominal_sector(45.0);
        match orientation_window(&sector, SectorReference::Origin, 120.0) {
            OrientationWindow::Limited { half_width_deg } => {
                assert_relative_eq!(half_width_deg, 11.712_993_656, max_relative = 1e-9);
            }
            other => panic!("expected limited window, got {other:?}"),
        }
        match orientation_window(&sector, SectorReference::ShiftedCenter, 120.0) {
            OrientationWindow::Limited { half_width_deg } => {
                assert_relative_eq!(half_width_deg, 11.237_759_631, max_relative = 1e-9);
            }
            other => panic!("expected limited window, got {other:?}"),
        }
    }

    #[test]
    fn empty_sector_leaves_orientation_unconstrained() {
        let sector = nominal_sector(20.0);
        assert_eq!(
            orientation_window(&sector, SectorReference::Origin, 120.0),
            OrientationWindow::Unconstrained
        );
    }

    #[test]
    fn tight_reach_clamps_window_to_zero() {
        let sector = singularity_sector(80.0, 45.0, 85.0, 1.0).unwrap();
        assert!(!sector.is_empty());
        match orientation_window(&sector, SectorReference::ShiftedCenter, 120.0) {
            OrientationWindow::Limited { half_width_deg } => assert_eq!(half_width_deg, 0.0),
            other => panic!("expected limited window, got {other:?}"),
        }
    }

    #[test]
    fn contact_loss_tracks_the_window_boundary() {
        let params = RobotParams::default();
        assert!(!is_singular(0.0, &params, 45.0, 1.0).unwrap());
        assert!(!is_singular(11.2, &params, 45.0, 1.0).unwrap());
        assert!(is_singular(11.3, &params, 45.0, 1.0).unwrap());
        assert!(is_singular(-11.3, &params, 45.0, 1.0).unwrap());
        assert!(is_singular(60.0, &params, 45.0, 1.0).unwrap());
        assert!(!is_singular(0.0, &params, 20.0, 1.0).unwrap());
        assert!(!is_singular(60.0, &params, 20.0, 1.0).unwrap());
    }

    #[test]
    fn contact_loss_respects_orientation_period() {
        let params = RobotParams::default();
        for t in [-119.0, 1.0, 121.0, 241.0] {
            assert_eq!(
                is_singular(t, &params, 45.0, 1.0).unwrap(),
                is_singular(1.0, &params, 45.0, 1.0).unwrap()
            );
        }
        assert_eq!(
            is_singular(120.0, &params, 45.0, 1.0).unwrap(),
            is_singular(0.0, &params, 45.0, 1.0).unwrap()
        );
    }

    #[test]
    fn threshold_inclination_for_nominal_build() {
        let params = RobotParams::default();
        let t = singularity_threshold_inclination(&params, 1.0).unwrap().unwrap();
        assert_relative_eq!(t, 28.463_503_232, max_relative = 1e-9);
        let t0 = singularity_threshold_inclination(&params, 0.0).unwrap().unwrap();
        assert_relative_eq!(t0, 27.266_044_451, max_relative = 1e-9);
    }

    #[test]
    fn generous_reach_never_loses_contact() {
        let mut params = RobotParams::default();
        params.free_radius_mm = 79.0;
        assert_eq!(singularity_threshold_inclination(&params, 0.0).unwrap(), None);
        assert_eq!(singularity_threshold_inclination(&params, 1.0).unwrap(), None);
        params.free_radius_mm = 80.0;
        assert_eq!(singularity_threshold_inclination(&params, 0.0).unwrap(), None);
    }

    #[test]
    fn sector_just_past_threshold_hugs_the_top() {
        let t = singularity_threshold_inclination(&RobotParams::default(), 1.0)
            .unwrap()
            .unwrap();
        let below = nominal_sector(t - 0.01);
        assert!(below.is_empty());
        let above = nominal_sector(t + 0.01);
        let angle = above.sector_angle_deg(SectorReference::Origin).unwrap();
        assert!(angle > 0.0 && angle < 15.0, "angle {angle}");
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let section = cross_section(80.0, 45.0).unwrap();
        assert!(matches!(
            ellipse_circle_intersections(&section, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ellipse_circle_intersections(&section, 90.0, -0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            is_singular(0.0, &RobotParams::default(), 45.0, -1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(singularity_sector(80.0, 90.0, 90.0, 1.0), Err(Error::DegenerateSection { .. })));
    }
}
