//! Incremental 3D convex hull for the small vertex sets used here, plus
//! volume, surface area, point distance, and halfspace-intersection cells.

use super::vec3::{det3, solve3, vec3, Vec3};

#[derive(Clone, Debug)]
pub struct Face {
    pub indices: [usize; 3],
    pub normal: Vec3,
    pub offset: f64,
}

#[derive(Clone, Debug)]
pub struct Hull3 {
    pub points: Vec<Vec3>,
    pub faces: Vec<Face>,
}

fn face_from(points: &[Vec3], a: usize, b: usize, c: usize, interior: Vec3) -> Face {
    let n = (points[b] - points[a]).cross(points[c] - points[a]);
    let n = n.normalized();
    let offset = n.dot(points[a]);
    if n.dot(interior) > offset {
        Face {
            indices: [a, c, b],
            normal: -n,
            offset: -offset,
        }
    } else {
        Face {
            indices: [a, b, c],
            normal: n,
            offset,
        }
    }
}

impl Hull3 {
    /// Builds the hull of a full-dimensional point set.
    pub fn new(points: &[Vec3]) -> Option<Hull3> {
        let n = points.len();
        if n < 4 {
            return None;
        }
        let scale = points.iter().map(|p| p.norm()).fold(1.0f64, f64::max);
        let eps = 1e-12 * scale;

        // Initial simplex: two extreme points, the farthest from their line,
        // then the farthest from that plane.
        let i0 = 0;
        let i1 = (1..n).max_by(|&a, &b| {
            (points[a] - points[i0])
                .norm()
                .total_cmp(&(points[b] - points[i0]).norm())
        })?;
        let dir = points[i1] - points[i0];
        let i2 = (0..n)
            .filter(|&k| k != i0 && k != i1)
            .max_by(|&a, &b| {
                let da = (points[a] - points[i0]).cross(dir).norm();
                let db = (points[b] - points[i0]).cross(dir).norm();
                da.total_cmp(&db)
            })?;
        let plane_n = (points[i1] - points[i0]).cross(points[i2] - points[i0]);
        let i3 = (0..n)
            .filter(|&k| k != i0 && k != i1 && k != i2)
            .max_by(|&a, &b| {
                let da = (points[a] - points[i0]).dot(plane_n).abs();
                let db = (points[b] - points[i0]).dot(plane_n).abs();
                da.total_cmp(&db)
            })?;
        if (points[i3] - points[i0]).dot(plane_n).abs() <= eps * plane_n.norm() {
            return None; // coplanar input
        }
        let interior = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
        let mut faces = vec![
            face_from(points, i0, i1, i2, interior),
            face_from(points, i0, i1, i3, interior),
            face_from(points, i0, i2, i3, interior),
            face_from(points, i1, i2, i3, interior),
        ];

        for p in 0..n {
            if [i0, i1, i2, i3].contains(&p) {
                continue;
            }
            let pt = points[p];
            let visible: Vec<usize> = (0..faces.len())
                .filter(|&f| faces[f].normal.dot(pt) > faces[f].offset + eps)
                .collect();
            if visible.is_empty() {
                continue;
            }
            // Horizon: edges shared by exactly one visible face. New faces
            // are re-oriented against the interior point, so the edge
            // orientation is irrelevant.
            let mut edge_count: std::collections::BTreeMap<(usize, usize), usize> =
                std::collections::BTreeMap::new();
            for &f in &visible {
                let idx = faces[f].indices;
                for k in 0..3 {
                    let a = idx[k];
                    let b = idx[(k + 1) % 3];
                    *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
                }
            }
            let horizon: Vec<(usize, usize)> = edge_count
                .into_iter()
                .filter(|&(_, count)| count == 1)
                .map(|(edge, _)| edge)
                .collect();
            let mut keep: Vec<Face> = Vec::with_capacity(faces.len());
            for (f, face) in faces.into_iter().enumerate() {
                if !visible.contains(&f) {
                    keep.push(face);
                }
            }
            for (a, b) in horizon {
                keep.push(face_from(points, a, b, p, interior));
            }
            faces = keep;
        }
        Some(Hull3 {
            points: points.to_vec(),
            faces,
        })
    }

    /// Signed volume via the divergence theorem over oriented faces.
    pub fn volume(&self) -> f64 {
        let mut six_v = 0.0;
        for f in &self.faces {
            let [a, b, c] = f.indices;
            six_v += det3(self.points[a], self.points[b], self.points[c]);
        }
        six_v / 6.0
    }

    pub fn surface_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = f.indices;
                (self.points[b] - self.points[a])
                    .cross(self.points[c] - self.points[a])
                    .norm()
                    * 0.5
            })
            .sum()
    }

    pub fn contains(&self, p: Vec3, tol: f64) -> bool {
        self.faces.iter().all(|f| f.normal.dot(p) <= f.offset + tol)
    }

    /// Euclidean distance from a point to the hull (0 inside).
    pub fn distance(&self, p: Vec3) -> f64 {
        if self.contains(p, 0.0) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for f in &self.faces {
            let [a, b, c] = f.indices;
            best = best.min(point_triangle_distance(
                p,
                self.points[a],
                self.points[b],
                self.points[c],
            ));
        }
        best
    }
}

/// Distance from a point to a triangle.
pub fn point_triangle_distance(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> f64 {
    // Project into the triangle plane and classify by barycentric region.
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return ap.norm();
    }
    let bp = p - b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= 0.0 && d4 <= d3 {
        return bp.norm();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (ap - ab * v).norm();
    }
    let cp = p - c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= 0.0 && d5 <= d6 {
        return cp.norm();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (ap - ac * w).norm();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (bp - (c - b) * w).norm();
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (p - (a + ab * v + ac * w)).norm()
}

/// A face of a halfspace-intersection cell.
#[derive(Clone, Debug)]
pub struct CellFace {
    pub plane: usize,
    pub vertices: Vec<Vec3>,
    pub area: f64,
}

/// Bounded intersection of halfspaces `<x, normal_i> <= offset_i` containing
/// the origin: vertex enumeration over plane triples, then per-plane face
/// polygons. Suitable for small systems (the 12-plane Voronoi cell).
pub struct HalfspaceCell {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<CellFace>,
}

impl HalfspaceCell {
    pub fn new(normals: &[Vec3], offsets: &[f64]) -> Option<HalfspaceCell> {
        assert_eq!(normals.len(), offsets.len());
        let n = normals.len();
        let tol = 1e-9;
        let mut verts: Vec<Vec3> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let Some(p) = solve3(
                        normals[i],
                        normals[j],
                        normals[k],
                        vec3(offsets[i], offsets[j], offsets[k]),
                    ) else {
                        continue;
                    };
                    if (0..n).all(|m| normals[m].dot(p) <= offsets[m] + tol)
                        && !verts.iter().any(|q| (*q - p).norm() < tol)
                    {
                        verts.push(p);
                    }
                }
            }
        }
        if verts.len() < 4 {
            return None;
        }
        let mut faces = Vec::new();
        for i in 0..n {
            let on_plane: Vec<Vec3> = verts
                .iter()
                .copied()
                .filter(|&p| (normals[i].dot(p) - offsets[i]).abs() <= tol)
                .collect();
            if on_plane.len() < 3 {
                continue;
            }
            // Order around the face centroid.
            let centroid = on_plane
                .iter()
                .fold(Vec3::ZERO, |acc, &p| acc + p)
                .scale(1.0 / on_plane.len() as f64);
            let u = (on_plane[0] - centroid).normalized();
            let v = normals[i].cross(u);
            let mut angled: Vec<(f64, Vec3)> = on_plane
                .iter()
                .map(|&p| {
                    let d = p - centroid;
                    (d.dot(v).atan2(d.dot(u)), p)
                })
                .collect();
            angled.sort_by(|a, b| a.0.total_cmp(&b.0));
            let ordered: Vec<Vec3> = angled.into_iter().map(|(_, p)| p).collect();
            let mut area = 0.0;
            for t in 1..(ordered.len() - 1) {
                area += (ordered[t] - ordered[0])
                    .cross(ordered[t + 1] - ordered[0])
                    .norm()
                    * 0.5;
            }
            faces.push(CellFace {
                plane: i,
                vertices: ordered,
                area,
            });
        }
        Some(HalfspaceCell {
            vertices: verts,
            faces,
        })
    }

    /// Volume via the pyramid decomposition from the origin (which must be
    /// interior, true for every use here).
    pub fn volume(&self, normals: &[Vec3], offsets: &[f64]) -> f64 {
        self.faces
            .iter()
            .map(|f| f.area * offsets[f.plane] / normals[f.plane].norm() / 3.0)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points(side: f64) -> Vec<Vec3> {
        let h = side / 2.0;
        let mut pts = Vec::new();
        for &x in &[-h, h] {
            for &y in &[-h, h] {
                for &z in &[-h, h] {
                    pts.push(vec3(x, y, z));
                }
            }
        }
        pts
    }

    #[test]
    fn cube_hull() {
        let hull = Hull3::new(&cube_points(2.0)).unwrap();
        assert!((hull.volume() - 8.0).abs() < 1e-12);
        assert!((hull.surface_area() - 24.0).abs() < 1e-12);
        assert_eq!(hull.faces.len(), 12, "two triangles per square face");
        assert!(hull.contains(vec3(0.9, 0.9, 0.9), 1e-12));
        assert!(!hull.contains(vec3(1.1, 0.0, 0.0), 1e-12));
        assert!((hull.distance(vec3(2.0, 0.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((hull.distance(vec3(2.0, 2.0, 0.0)) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(hull.distance(vec3(0.2, -0.3, 0.1)), 0.0);
    }

    #[test]
    fn octahedron_hull_with_interior_points() {
        let mut pts = vec![
            vec3(1.0, 0.0, 0.0),
            vec3(-1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, -1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
            vec3(0.0, 0.0, -1.0),
        ];
        pts.push(vec3(0.1, 0.1, 0.1));
        pts.push(vec3(-0.2, 0.05, 0.0));
        let hull = Hull3::new(&pts).unwrap();
        assert!((hull.volume() - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(hull.faces.len(), 8);
        // Eight equilateral triangles of side sqrt(2).
        let expected = 8.0 * ((3.0f64).sqrt() / 2.0);
        assert!((hull.surface_area() - expected).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(Hull3::new(&[vec3(0.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0)]).is_none());
        let coplanar = vec![
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(1.0, 1.0, 0.0),
        ];
        assert!(Hull3::new(&coplanar).is_none());
    }

    #[test]
    fn cube_as_halfspace_cell() {
        let normals = vec![
            vec3(1.0, 0.0, 0.0),
            vec3(-1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, -1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
            vec3(0.0, 0.0, -1.0),
        ];
        let offsets = vec![1.0; 6];
        let cell = HalfspaceCell::new(&normals, &offsets).unwrap();
        assert_eq!(cell.vertices.len(), 8);
        assert_eq!(cell.faces.len(), 6);
        assert!((cell.volume(&normals, &offsets) - 8.0).abs() < 1e-9);
    }
}
