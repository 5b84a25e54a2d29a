//! Deterministic SVG rendering of double-lattice packings: a fixed
//! 1000-unit viewport scaled to the lattice extent, fixed styling, no
//! external assets. Byte-identical output for identical inputs.

use std::fmt::Write as _;

use dlat::geom2d::{packing_copies, ConvexPolygon, DoubleLattice2D};

pub fn render_packing(body: &ConvexPolygon, lattice: &DoubleLattice2D, shells: i64) -> String {
    let copies = packing_copies(body, lattice, shells);
    let direct_count = copies.len() / 2;

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for poly in &copies {
        for v in poly.vertices() {
            min_x = min_x.min(v.x);
            max_x = max_x.max(v.x);
            min_y = min_y.min(v.y);
            max_y = max_y.max(v.y);
        }
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.02 * span;
    let scale = 1000.0 / (span + 2.0 * margin);
    let width = ((max_x - min_x + 2.0 * margin) * scale).ceil();
    let height = ((max_y - min_y + 2.0 * margin) * scale).ceil();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, poly) in copies.iter().enumerate() {
        let fill = if k < direct_count { "#d4d4d4" } else { "#aabdcf" };
        let mut points = String::new();
        for v in poly.vertices() {
            let x = (v.x - min_x + margin) * scale;
            let y = (max_y - v.y + margin) * scale;
            let _ = write!(points, "{x:.4},{y:.4} ");
        }
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            points.trim_end()
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlat::geom2d::{build_double_lattice, builtin::Builtin, double_lattice_density};

    #[test]
    fn deterministic_and_well_formed() {
        let body = Builtin::Heptagon.polygon();
        let res = double_lattice_density(&body);
        let lat = build_double_lattice(&body, &res.parallelogram).unwrap();
        let a = render_packing(&body, &lat, 2);
        let b = render_packing(&body, &lat, 2);
        assert_eq!(a, b, "byte-identical across runs");
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<polygon").count(), 50);
    }
}
