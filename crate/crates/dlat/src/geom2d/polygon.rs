//! Convex polygons: validation, areas, intersection, radial functions.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vec2::{vec2, Vec2};
use super::GeomError;
use crate::consts;

/// A strictly convex polygon with counterclockwise vertices.
///
/// Construction canonicalizes the input by dropping vertices interior to an
/// edge (collinear within `COLLINEAR_TOL` relative to scale) and rejects
/// anything that is not strictly convex and positively oriented afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    verts: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::InvalidPolygon(
                "fewer than three vertices".into(),
            ));
        }
        let scale = vertices
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let tol = consts::COLLINEAR_TOL * scale * scale;

        // Drop interior-of-edge vertices.
        let mut kept: Vec<Vec2> = Vec::with_capacity(vertices.len());
        let n = vertices.len();
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let here = vertices[i];
            let next = vertices[(i + 1) % n];
            let cross = (here - prev).cross(next - here);
            if cross.abs() <= tol {
                let along = (here - prev).dot(next - prev);
                let len2 = (next - prev).dot(next - prev);
                if along >= -tol && along <= len2 + tol {
                    continue; // between its neighbors: redundant
                }
            }
            kept.push(here);
        }
        if kept.len() < 3 {
            return Err(GeomError::InvalidPolygon(
                "degenerate after removing collinear vertices".into(),
            ));
        }
        let m = kept.len();
        for i in 0..m {
            let a = kept[i];
            let b = kept[(i + 1) % m];
            let c = kept[(i + 2) % m];
            if (b - a).cross(c - b) <= tol {
                return Err(GeomError::InvalidPolygon(format!(
                    "not strictly convex and counterclockwise at vertex {}",
                    (i + 1) % m
                )));
            }
        }
        let poly = ConvexPolygon { verts: kept };
        if poly.area() <= 0.0 {
            return Err(GeomError::InvalidPolygon("nonpositive area".into()));
        }
        Ok(poly)
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self, GeomError> {
        Self::new(coords.iter().map(|&[x, y]| vec2(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.verts)
    }

    pub fn centroid(&self) -> Vec2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        let n = self.verts.len();
        for i in 0..n {
            let p = self.verts[i];
            let q = self.verts[(i + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        vec2(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn translate(&self, t: Vec2) -> ConvexPolygon {
        ConvexPolygon {
            verts: self.verts.iter().map(|&v| v + t).collect(),
        }
    }

    /// Point inversion through `c` (reverses orientation, so the vertex
    /// order is flipped to stay counterclockwise).
    pub fn invert_through(&self, c: Vec2) -> ConvexPolygon {
        let mut verts: Vec<Vec2> = self.verts.iter().map(|&v| c * 2.0 - v).collect();
        verts.reverse();
        ConvexPolygon { verts }
    }

    pub fn affine_map(&self, m: [[f64; 2]; 2], t: Vec2) -> Result<ConvexPolygon, GeomError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mapped: Vec<Vec2> = self
            .verts
            .iter()
            .map(|&v| {
                vec2(
                    m[0][0] * v.x + m[0][1] * v.y + t.x,
                    m[1][0] * v.x + m[1][1] * v.y + t.y,
                )
            })
            .collect();
        let mut verts = mapped;
        if det < 0.0 {
            verts.reverse();
        }
        ConvexPolygon::new(verts)
    }

    pub fn scale(&self, k: f64) -> ConvexPolygon {
        ConvexPolygon {
            verts: self.verts.iter().map(|&v| v * k).collect(),
        }
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        let n = self.verts.len();
        (0..n).all(|i| {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            (b - a).cross(p - a) >= -tol
        })
    }

    /// Distance from a point to the polygon boundary.
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        let n = self.verts.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            let ab = b - a;
            let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
            let q = a + ab * t;
            best = best.min((p - q).norm());
        }
        best
    }

    /// Support function h(w) = max over vertices of <w, v>.
    pub fn support(&self, w: Vec2) -> f64 {
        self.verts
            .iter()
            .map(|v| v.dot(w))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Radial function for a polygon whose interior contains the origin.
    pub fn radial(&self, w: Vec2) -> Result<f64, GeomError> {
        let n = self.verts.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            let normal = (b - a).perp().scale(-1.0); // outward for ccw
            let c = normal.dot(a);
            if c <= 0.0 {
                return Err(GeomError::OriginNotInterior);
            }
            let denom = normal.dot(w);
            if denom > 0.0 {
                best = best.min(c / denom);
            }
        }
        if !best.is_finite() {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(best)
    }
}

impl Serialize for ConvexPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            vertices: Vec<[f64; 2]>,
        }
        Repr {
            vertices: self.verts.iter().map(|v| [v.x, v.y]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            vertices: Vec<[f64; 2]>,
        }
        let repr = Repr::deserialize(deserializer)?;
        ConvexPolygon::from_coords(&repr.vertices).map_err(D::Error::custom)
    }
}

pub fn shoelace(verts: &[Vec2]) -> f64 {
    let n = verts.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += verts[i].cross(verts[(i + 1) % n]);
    }
    0.5 * twice
}

/// Convex hull by Andrew's monotone chain; returns counterclockwise vertices.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2])
                .cross(p - lower[lower.len() - 1])
                <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2])
                .cross(p - upper[upper.len() - 1])
                <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Area of the intersection of two convex polygons (Sutherland-Hodgman).
pub fn intersection_area(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut subject: Vec<Vec2> = a.vertices().to_vec();
    let bn = b.vertices().len();
    for i in 0..bn {
        if subject.is_empty() {
            return 0.0;
        }
        let p = b.vertices()[i];
        let q = b.vertices()[(i + 1) % bn];
        let edge = q - p;
        let mut clipped: Vec<Vec2> = Vec::with_capacity(subject.len() + 2);
        let m = subject.len();
        for k in 0..m {
            let cur = subject[k];
            let nxt = subject[(k + 1) % m];
            let side_cur = edge.cross(cur - p);
            let side_nxt = edge.cross(nxt - p);
            if side_cur >= 0.0 {
                clipped.push(cur);
            }
            if (side_cur > 0.0 && side_nxt < 0.0) || (side_cur < 0.0 && side_nxt > 0.0) {
                let t = side_cur / (side_cur - side_nxt);
                clipped.push(cur + (nxt - cur) * t);
            }
        }
        subject = clipped;
    }
    if subject.len() < 3 {
        return 0.0;
    }
    shoelace(&subject).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn area_and_centroid() {
        let s = square();
        assert!((s.area() - 1.0).abs() < 1e-15);
        let c = s.centroid();
        assert!((c.x - 0.5).abs() < 1e-15 && (c.y - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_clockwise_and_degenerate() {
        assert!(ConvexPolygon::from_coords(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
            .is_err());
        assert!(ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0]]).is_err());
        assert!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err(),
            "collinear triple"
        );
    }

    #[test]
    fn canonicalizes_collinear() {
        let p = ConvexPolygon::from_coords(&[
            [0.0, 0.0],
            [0.5, 0.0],
            [1.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn intersection_areas() {
        let s = square();
        let shifted = s.translate(vec2(0.5, 0.0));
        assert!((intersection_area(&s, &shifted) - 0.5).abs() < 1e-12);
        let disjoint = s.translate(vec2(2.0, 0.0));
        assert_eq!(intersection_area(&s, &disjoint), 0.0);
        let touching = s.translate(vec2(1.0, 0.0));
        assert!(intersection_area(&s, &touching) < 1e-14);
    }

    #[test]
    fn radial_function() {
        let s = square().translate(vec2(-0.5, -0.5));
        assert!((s.radial(vec2(1.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        let d = (0.5f64).hypot(0.5);
        assert!((s.radial(vec2(1.0, 1.0).normalized()).unwrap() - d).abs() < 1e-15);
        assert!(square().radial(vec2(1.0, 0.0)).is_err(), "origin on boundary");
    }

    #[test]
    fn hull_of_points() {
        let pts = vec![
            vec2(0.0, 0.0),
            vec2(1.0, 0.0),
            vec2(1.0, 1.0),
            vec2(0.0, 1.0),
            vec2(0.5, 0.5),
            vec2(0.25, 0.25),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(shoelace(&hull) > 0.0);
    }
}
