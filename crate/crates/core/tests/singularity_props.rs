//! Randomized checks of the lost-contact sector analysis against slow
//! oracles: crossings must sit on both conics, emptiness must flip at the
//! analytic threshold, and the contact predicate must agree with a dense
//! sweep using bisection ray casting.

use approx::assert_relative_eq;
use pipecrawler::{
    cross_section, ellipse_circle_intersections, is_singular, orientation_window, sector_angle,
    singularity_sector, singularity_threshold_inclination, CrossSectionEllipse, OrientationWindow,
    Point2, RobotParams, SectorReference,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params_with(pipe_radius_mm: f64, free_radius_mm: f64) -> RobotParams {
    RobotParams {
        pipe_radius_mm,
        free_radius_mm,
        ..RobotParams::default()
    }
}

/// Sample a sane build: reach comfortably past the bore, shift well under
/// the reach margin.
fn sample_build(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let r = rng.gen_range(20.0..150.0);
    let rf = r * rng.gen_range(1.05..1.4);
    let delta = rng.gen_range(0.0..0.5 * (rf - r));
    (r, rf, delta)
}

fn ray_distance_by_bisection(
    center: Point2,
    direction_deg: f64,
    section: &CrossSectionEllipse,
) -> f64 {
    let d = direction_deg.to_radians();
    let (dx, dy) = (d.cos(), d.sin());
    let at = |r: f64| section.residual(Point2::new(center.x + r * dx, center.y + r * dy));
    assert!(at(0.0) < 0.0);
    let mut hi = 1.0;
    while at(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if at(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn crossings_satisfy_both_conics() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0551);
    for _ in 0..500 {
        let (r, rf, delta) = sample_build(&mut rng);
        let thr = singularity_threshold_inclination(&params_with(r, rf), delta)
            .unwrap()
            .unwrap();
        let incl = (thr + rng.gen_range(0.1..40.0)).min(89.5);
        let section = cross_section(r, incl).unwrap();
        let (left, right) = ellipse_circle_intersections(&section, rf, delta)
            .unwrap()
            .expect("a bend past the threshold must cross the reach circle");
        assert_eq!(left.y, right.y);
        assert_eq!(left.x, -right.x);
        assert!(right.y > 0.0, "crossing must sit in the upper half");
        assert!(
            section.residual(right).abs() < 1e-9,
            "crossing off the section for r={r} rf={rf} delta={delta} incl={incl}"
        );
        let reach = (right.x * right.x + (right.y - delta) * (right.y - delta)).sqrt();
        assert_relative_eq!(reach, rf, max_relative = 1e-9);
    }
}

#[test]
fn emptiness_flips_at_the_analytic_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    for _ in 0..200 {
        let (r, rf, delta) = sample_build(&mut rng);
        let thr = singularity_threshold_inclination(&params_with(r, rf), delta)
            .unwrap()
            .unwrap();
        let below = singularity_sector(r, (thr - 0.01).max(0.0), rf, delta).unwrap();
        assert!(below.is_empty(), "sector below threshold for r={r} rf={rf}");
        if thr + 0.01 < 90.0 {
            let above = singularity_sector(r, thr + 0.01, rf, delta).unwrap();
            assert!(!above.is_empty(), "no sector above threshold for r={r} rf={rf}");
        }
    }
}

/// Bisect the inclination at which the sector appears, using only the
/// emptiness of the crossing set.
fn threshold_by_bisection(r: f64, rf: f64, delta: f64) -> f64 {
    let empty = |incl: f64| singularity_sector(r, incl, rf, delta).unwrap().is_empty();
    assert!(empty(0.0));
    let mut lo = 0.0_f64;
    let mut hi = 89.999_f64;
    assert!(!empty(hi));
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if empty(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn threshold_matches_the_bisection_oracle() {
    let nominal = singularity_threshold_inclination(&RobotParams::default(), 1.0)
        .unwrap()
        .unwrap();
    assert_relative_eq!(threshold_by_bisection(80.0, 90.0, 1.0), nominal, epsilon = 1e-6);

    let mut rng = ChaCha8Rng::seed_from_u64(0x7412e5);
    for _ in 0..50 {
        let (r, rf, delta) = sample_build(&mut rng);
        let analytic = singularity_threshold_inclination(&params_with(r, rf), delta)
            .unwrap()
            .unwrap();
        assert_relative_eq!(threshold_by_bisection(r, rf, delta), analytic, epsilon = 1e-6);
    }
}

#[test]
fn no_threshold_when_reach_covers_the_steepest_section() {
    // Reach shorter than the bore: every inclination leaves wall beyond
    // reach somewhere, so no finite onset exists to report.
    let p = params_with(80.0, 75.0);
    assert_eq!(singularity_threshold_inclination(&p, 1.0).unwrap(), None);
}

#[test]
fn sector_angle_grows_with_inclination() {
    let thr = singularity_threshold_inclination(&RobotParams::default(), 1.0)
        .unwrap()
        .unwrap();
    let mut last = (0.0_f64, 0.0_f64);
    let mut incl = thr + 0.05;
    while incl < 86.0 {
        let sec = singularity_sector(80.0, incl, 90.0, 1.0).unwrap();
        let o = sec.sector_angle_deg(SectorReference::Origin).unwrap();
        let s = sec.sector_angle_deg(SectorReference::ShiftedCenter).unwrap();
        assert!(
            o > last.0 && s > last.1,
            "sector shrank near incl={incl}: {last:?} -> ({o}, {s})"
        );
        last = (o, s);
        incl += 0.5;
    }
    assert!(last.0 > 90.0, "steep bends should subtend well past a quarter");
}

#[test]
fn contact_predicate_matches_bisection_ray_casting() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51179);
    let params = RobotParams::default();
    let delta = 1.0;
    let mut singular_seen = 0;
    for _ in 0..200 {
        let theta1 = rng.gen_range(-180.0..180.0);
        let incl = rng.gen_range(0.0..80.0);
        let fast = is_singular(theta1, &params, incl, delta).unwrap();
        let section = cross_section(params.pipe_radius_mm, incl).unwrap();
        let center = Point2::new(0.0, delta);
        let t = {
            // Same 120-degree fold the predicate applies.
            let m = theta1.rem_euclid(120.0);
            if m > 60.0 {
                m - 120.0
            } else {
                m
            }
        };
        let slow = [t + 30.0, t + 150.0].iter().any(|&beta| {
            ray_distance_by_bisection(center, beta, &section) > params.free_radius_mm
        });
        assert_eq!(fast, slow, "disagreement at theta1={theta1} incl={incl}");
        if fast {
            singular_seen += 1;
        }
    }
    assert!(singular_seen > 10, "sampling should hit singular configs");
}

#[test]
fn sweep_localizes_the_window_boundary() {
    // March the roll in 0.01-degree steps; the first singular step must
    // bracket the analytic window edge within 0.05 degrees.
    let params = RobotParams::default();
    let delta = 1.0;
    let sector = singularity_sector(80.0, 45.0, 90.0, delta).unwrap();
    let half = match orientation_window(&sector, SectorReference::ShiftedCenter, 120.0) {
        OrientationWindow::Limited { half_width_deg } => half_width_deg,
        OrientationWindow::Unconstrained => panic!("nominal bend must constrain the roll"),
    };
    for sign in [1.0, -1.0] {
        let mut first = None;
        let mut k = 0;
        while first.is_none() && k < 6000 {
            let theta1 = sign * 0.01 * k as f64;
            if is_singular(theta1, &params, 45.0, delta).unwrap() {
                first = Some(theta1.abs());
            }
            k += 1;
        }
        let edge = first.expect("sweep must leave the window within 60 degrees");
        assert!(
            (edge - half).abs() <= 0.05,
            "sweep edge {edge} vs analytic half-width {half}"
        );
        assert!(edge >= half, "sweep may not flag inside the window");
    }
}

#[test]
fn window_width_tracks_the_sector_angle() {
    // Wider sectors leave less roll allowance, down to the clamp at zero.
    let mut rng = ChaCha8Rng::seed_from_u64(0x3b0d);
    for _ in 0..100 {
        let (r, rf, delta) = sample_build(&mut rng);
        let thr = singularity_threshold_inclination(&params_with(r, rf), delta)
            .unwrap()
            .unwrap();
        let incl = (thr + rng.gen_range(0.05..30.0)).min(89.0);
        let sec = singularity_sector(r, incl, rf, delta).unwrap();
        let angle = sec.sector_angle_deg(SectorReference::Origin).unwrap();
        match orientation_window(&sec, SectorReference::Origin, 120.0) {
            OrientationWindow::Unconstrained => panic!("non-empty sector must constrain"),
            OrientationWindow::Limited { half_width_deg } => {
                let raw = (90.0 - angle / 2.0) - 30.0;
                assert_relative_eq!(
                    half_width_deg,
                    raw.max(0.0),
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }
}

#[test]
fn published_style_sector_report_is_consistent() {
    // The full pipeline at the nominal build: crossing, subtended angle,
    // and window agree with each other through both reference centres.
    let sector = singularity_sector(80.0, 45.0, 90.0, 1.0).unwrap();
    let (left, right) = sector.points().unwrap();
    let origin = sector_angle((left, right), SectorReference::Origin, 1.0);
    let shifted = sector_angle((left, right), SectorReference::ShiftedCenter, 1.0);
    assert!(shifted > origin, "shifting the centre up widens the sector");
    assert_relative_eq!(
        sector.sector_angle_deg(SectorReference::Origin).unwrap(),
        origin,
        max_relative = 1e-15
    );
    assert_relative_eq!(
        sector.sector_angle_deg(SectorReference::ShiftedCenter).unwrap(),
        shifted,
        max_relative = 1e-15
    );
}
