//! Static SVG figures built as plain strings: a turn cross-section with
//! the unreachable sector, and an angular-velocity plot of a trajectory
//! log. No styling machinery, just shapes with fixed colors.

use std::fmt::Write as _;

use pipecrawler::{CrossSectionEllipse, Point2};

const CANVAS: f64 = 560.0;
const MARGIN: f64 = 50.0;

fn poly_points(points: &[(f64, f64)]) -> String {
    let mut s = String::with_capacity(points.len() * 14);
    for (i, (x, y)) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.2},{y:.2}");
    }
    s
}

/// Cross-section figure: section outline, wheel-reach circle about the
/// shifted centre, the out-of-reach sector edge, and one marker per
/// module (filled while on the wall, hollow when it cannot reach).
pub fn sector_figure(
    section: &CrossSectionEllipse,
    free_radius_mm: f64,
    shift_delta_mm: f64,
    crossings: Option<(Point2, Point2)>,
    modules: &[(Point2, bool)],
) -> String {
    let extent = section
        .semi_major_mm()
        .max(free_radius_mm + shift_delta_mm);
    let scale = (CANVAS / 2.0 - MARGIN) / extent;
    let cx = CANVAS / 2.0;
    let cy = CANVAS / 2.0;
    let map = |p: Point2| (cx + p.x * scale, cy - p.y * scale);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\" \
         width=\"{CANVAS}\" height=\"{CANVAS}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        svg,
        "  <ellipse cx=\"{cx:.2}\" cy=\"{cy:.2}\" rx=\"{:.2}\" ry=\"{:.2}\" \
         fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>",
        section.semi_minor_mm() * scale,
        section.semi_major_mm() * scale
    );
    let shifted = map(Point2::new(0.0, shift_delta_mm));
    let _ = writeln!(
        svg,
        "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"none\" \
         stroke=\"#2ca02c\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>",
        shifted.0,
        shifted.1,
        free_radius_mm * scale
    );
    let _ = writeln!(
        svg,
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"#444\"/>"
    );
    let _ = writeln!(
        svg,
        "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#2ca02c\"/>",
        shifted.0, shifted.1
    );

    if let Some((left, right)) = crossings {
        // The stretch of wall between the crossings, traced along the
        // section, is what no module can touch.
        let steps = 64;
        let mut pts = Vec::with_capacity(steps + 1);
        for k in 0..=steps {
            let u = k as f64 / steps as f64;
            let x = left.x + (right.x - left.x) * u;
            let clamped = (x / section.semi_minor_mm()).clamp(-1.0, 1.0);
            let y = section.semi_major_mm() * (1.0 - clamped * clamped).sqrt();
            pts.push(map(Point2::new(x, y)));
        }
        let _ = writeln!(
            svg,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"4\"/>",
            poly_points(&pts)
        );
        for p in [left, right] {
            let (px, py) = map(p);
            let _ = writeln!(
                svg,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{py:.2}\" \
                 stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>",
                shifted.0, shifted.1
            );
        }
        let _ = writeln!(
            svg,
            "  <text x=\"{cx:.2}\" y=\"{:.2}\" text-anchor=\"middle\" \
             font-family=\"sans-serif\" font-size=\"14\" fill=\"#d62728\">out of reach</text>",
            cy - (section.semi_major_mm() * scale + 12.0)
        );
    }

    for &(p, contact) in modules {
        let (px, py) = map(p);
        let fill = if contact { "#1f77b4" } else { "white" };
        let _ = writeln!(
            svg,
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"7\" fill=\"{fill}\" \
             stroke=\"#1f77b4\" stroke-width=\"2\"/>"
        );
    }

    let _ = writeln!(
        svg,
        "  <text x=\"{MARGIN}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" \
         fill=\"#333\">section / reach circle, mm</text>",
        CANVAS - 18.0
    );
    svg.push_str("</svg>\n");
    svg
}

/// Angular-velocity figure: inner and outer module wheel rates against
/// time, with the zero line drawn so sign flips stand out.
pub fn velocity_figure(trace: &[(f64, f64, f64)]) -> String {
    let width = 720.0;
    let height = 420.0;
    let t_max = trace.last().map(|r| r.0).unwrap_or(1.0).max(1e-9);
    let w_max = trace
        .iter()
        .flat_map(|&(_, a, b)| [a.abs(), b.abs()])
        .fold(1e-9_f64, f64::max);
    let x_at = |t: f64| MARGIN + (width - 2.0 * MARGIN) * t / t_max;
    let y_at = |w: f64| height / 2.0 - (height / 2.0 - MARGIN) * w / w_max;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" \
         width=\"{width}\" height=\"{height}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
    // Axes and the zero line.
    let _ = writeln!(
        svg,
        "  <line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{:.2}\" \
         stroke=\"#333\" stroke-width=\"1\"/>",
        height - MARGIN
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{MARGIN}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
         stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"4 4\"/>",
        y_at(0.0),
        width - MARGIN,
        y_at(0.0)
    );
    for (label, w) in [("0", 0.0), ("max", w_max), ("-max", -w_max)] {
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"12\" fill=\"#333\">{label}</text>",
            MARGIN - 6.0,
            y_at(w) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\" fill=\"#333\">t (s), 0 to {t_max:.2}</text>",
        width / 2.0,
        height - 14.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" \
         fill=\"#333\" transform=\"rotate(-90 16 {:.2})\">omega (rad/s)</text>",
        height / 2.0,
        height / 2.0
    );

    let inner: Vec<(f64, f64)> = trace.iter().map(|&(t, w, _)| (x_at(t), y_at(w))).collect();
    let outer: Vec<(f64, f64)> = trace.iter().map(|&(t, _, w)| (x_at(t), y_at(w))).collect();
    let _ = writeln!(
        svg,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>",
        poly_points(&inner)
    );
    let _ = writeln!(
        svg,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>",
        poly_points(&outer)
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{MARGIN}\" font-family=\"sans-serif\" font-size=\"14\" \
         fill=\"#d62728\">inner</text>",
        width - MARGIN - 90.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{MARGIN}\" font-family=\"sans-serif\" font-size=\"14\" \
         fill=\"#1f77b4\">outer</text>",
        width - MARGIN - 40.0
    );
    svg.push_str("</svg>\n");
    svg
}
