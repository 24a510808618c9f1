use std::fmt::Write;

use crate::geometry::{DofComplex, Point2};
use crate::rational::to_f64;

/// Side of the square drawing area in SVG user units. The triangle's
/// bounding box is scaled uniformly to this size and framed by [`MARGIN`].
pub const CANVAS: f64 = 400.0;
pub const MARGIN: f64 = 20.0;

/// Diagram of a complex: cell boundaries stroked, lattice points as black
/// dots, the points of `Γ_r` as light gray dots. Output depends only on the
/// complex, so repeated runs are byte-identical.
pub fn render_svg(complex: &DofComplex) -> String {
    let tri = complex.triangle();
    let vs: Vec<[f64; 2]> = tri.vertices().iter().map(|v| v.to_f64()).collect();
    let min_x = vs.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
    let max_x = vs.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
    let min_y = vs.iter().map(|v| v[1]).fold(f64::INFINITY, f64::min);
    let max_y = vs.iter().map(|v| v[1]).fold(f64::NEG_INFINITY, f64::max);
    let scale = CANVAS / (max_x - min_x).max(max_y - min_y);
    let map = |p: &Point2| -> (f64, f64) {
        (MARGIN + (to_f64(&p.x) - min_x) * scale, MARGIN + (max_y - to_f64(&p.y)) * scale)
    };
    let size = CANVAS + 2.0 * MARGIN;
    let dot = (CANVAS / (complex.degree() as f64 * 40.0)).clamp(2.0, 6.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">"#
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="1.5" stroke-linejoin="round">"#);
    for (i, cell) in complex.faces().iter().enumerate() {
        let pts: Vec<String> = cell
            .polygon_cartesian(tri)
            .iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(s, r#"<polygon id="cell-{i}" points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="black">"#);
    for v in complex.vertices() {
        let (x, y) = map(&tri.to_cartesian(&v));
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{dot:.2}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="lightgray" stroke="black" stroke-width="0.5">"#);
    for p in complex.gamma().points() {
        let (x, y) = map(&tri.to_cartesian(p));
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.2}"/>"#, dot * 1.2);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_complex, Triangle};

    #[test]
    fn degree_two_picture() {
        let c = build_complex(&Triangle::figure(), 2).unwrap();
        let svg = render_svg(&c);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches(r#"<g fill="lightgray""#).count(), 1);
        // one gray marker at the apex x0, drawn at the top centre
        assert!(svg.contains(r#"<circle cx="220.000" cy="20.000" r="6.00"/>"#));
        assert_eq!(svg, render_svg(&c));
    }
}
