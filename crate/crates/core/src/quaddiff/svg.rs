//! Static SVG rendering of traced trajectories.

use super::{QuadraticDifferential, TrajectoryReport};
use num_complex::Complex64;

/// Renders the traced curves clipped to a frame around the zeros, with
/// the zeros and the finite pole marked.
pub fn render_svg(phi: &QuadraticDifferential, report: &TrajectoryReport) -> String {
    let max_abs = phi.zeros.iter().map(|z| z.norm()).fold(1e-9, f64::max);
    let frame = 2.5 * max_abs;
    let size = 800.0;
    let map = |z: Complex64| -> (f64, f64) {
        (
            (z.re + frame) / (2.0 * frame) * size,
            (frame - z.im) / (2.0 * frame) * size,
        )
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for curve in &report.curves {
        let mut points = String::new();
        let mut last_inside = false;
        for z in curve {
            let inside = z.norm() <= frame * 1.4;
            if inside {
                let (x, y) = map(*z);
                points.push_str(&format!("{x:.2},{y:.2} "));
                last_inside = true;
            } else if last_inside {
                break;
            }
        }
        if !points.is_empty() {
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"#336\" stroke-width=\"1\" points=\"{}\"/>\n",
                points.trim_end()
            ));
        }
    }
    let (px, py) = map(Complex64::new(0.0, 0.0));
    out.push_str(&format!(
        "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"5\" fill=\"none\" stroke=\"#a33\" stroke-width=\"2\"/>\n"
    ));
    for a in &phi.zeros {
        let (x, y) = map(*a);
        out.push_str(&format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#181\"/>\n"));
    }
    out.push_str("</svg>\n");
    out
}
