//! Geometric functionals behind the certificate checks.
//!
//! `phi(i, x)` perturbs the heptagon vertices by `x` and measures the
//! relative density defect of the parallelogram built on the i-th
//! vertex-to-opposite-edge altitude. `psi` and `phi2` extend this to
//! boundary data: altitude-foot offsets and boundary heights over the
//! chords, with the boundary replaced by its convexity upper envelope at
//! the four tabulated parameters.

use std::sync::OnceLock;

use crate::field::{hept, FieldElement};
use crate::geom2d::{shoelace, ChordProfile, Vec2};

use super::CertError;

/// Vertex perturbation: `(x0, y0, x1, y1, ..., x6, y6)`.
pub type PerturbationX = [f64; 14];

/// Boundary perturbation: 14 altitude-foot offsets `(x0', y0', ...)` followed
/// by 28 boundary heights `h_j(t)` for `t in {a, b, 1-b, 1-a}`, edge-major.
pub type PerturbationXPrime = [f64; 42];

/// Scale applied to the tangential vertex coordinate: vertices are
/// `m_i' = R^i (1 + x_i, Y_SCALE * y_i)`.
///
/// The proofs use two conventions (`y_i` plain, and `v * y_i`); the tables
/// are the ground truth, and finite differences against them single out the
/// plain convention. See `convention_probe` in the test module.
pub const Y_SCALE: f64 = 1.0;

/// Edge hosting the representative constraint row of each `psi` family:
/// `psi_j` for slot `r = (j-1) % 7` lives on edge `(EDGE_OFFSET + r) % 7`.
/// Fixed by matching finite-difference gradients of `psi` against the
/// tabulated `g'` rows; see `check_psi_gradients`.
pub const PSI_EDGE_OFFSET: usize = 3;

pub(crate) struct NumConsts {
    pub v: f64,
    pub a: f64,
    pub b: f64,
    pub density: f64,
}

pub(crate) fn num_consts() -> &'static NumConsts {
    static NUM: OnceLock<NumConsts> = OnceLock::new();
    NUM.get_or_init(|| NumConsts {
        v: FieldElement::v().to_f64(),
        a: hept::a().to_f64(),
        b: hept::b().to_f64(),
        density: hept::density().to_f64(),
    })
}

fn rotation(i: usize) -> (f64, f64) {
    let t = 2.0 * std::f64::consts::PI * i as f64 / 7.0;
    (t.cos(), t.sin())
}

fn rotate(i: usize, p: Vec2) -> Vec2 {
    let (c, s) = rotation(i);
    Vec2 {
        x: c * p.x - s * p.y,
        y: s * p.x + c * p.y,
    }
}

/// Perturbed heptagon vertices under the fixed convention.
pub fn heptagon_vertices(x: &PerturbationX) -> [Vec2; 7] {
    heptagon_vertices_scaled(x, Y_SCALE)
}

pub(crate) fn heptagon_vertices_scaled(x: &PerturbationX, y_scale: f64) -> [Vec2; 7] {
    std::array::from_fn(|i| {
        rotate(
            i,
            Vec2 {
                x: 1.0 + x[2 * i],
                y: y_scale * x[2 * i + 1],
            },
        )
    })
}

fn check_convex(verts: &[Vec2; 7]) -> Result<(), CertError> {
    for i in 0..7 {
        let a = verts[i];
        let b = verts[(i + 1) % 7];
        let c = verts[(i + 2) % 7];
        if (b - a).cross(c - b) <= 0.0 {
            return Err(CertError::ConvexityViolated);
        }
    }
    Ok(())
}

/// Foot of the perpendicular from `p` onto the chord `a..b` (clamped to the
/// segment; for certificate-scale perturbations the projection is interior).
fn chord_foot(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
    a + ab * t
}

/// The altitude functional: perturb the vertices, drop the altitude from
/// `m_i'` to the opposite edge, form the parallelogram from the two chords
/// parallel to the altitude at half its length, and return the relative
/// density defect `(A' / 2 Delta_i) / (A / 2 Delta) - 1`.
pub fn phi(i: usize, x: &PerturbationX) -> Result<f64, CertError> {
    let verts = heptagon_vertices(x);
    check_convex(&verts)?;
    let m = verts[i];
    let foot = chord_foot(m, verts[(i + 3) % 7], verts[(i + 4) % 7]);
    let axis = foot - m;
    let length = axis.norm();
    if length < 1e-12 {
        return Err(CertError::DegenerateGeometry("zero altitude".into()));
    }
    let dir = axis * (1.0 / length);
    let profile = ChordProfile::new(&verts, dir);
    let (s_neg, s_pos) = profile
        .band_at_length(length / 2.0)
        .ok_or_else(|| CertError::DegenerateGeometry("no half-length chords".into()))?;
    let delta_i = 0.5 * length * (s_pos - s_neg);
    let area = shoelace(&verts);
    Ok(area / (2.0 * delta_i) / num_consts().density - 1.0)
}

/// Convexity bounds on nearby boundary heights: given `h(t0)`, the height at
/// `t` is between `h(t0) * min(t/t0, (1-t)/(1-t0))` and
/// `h(t0) * max(t/t0, (1-t)/(1-t0))`.
pub fn hbound(t: f64, t0: f64, h_t0: f64) -> Result<(f64, f64), CertError> {
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(CertError::DegenerateGeometry(format!(
            "t0 = {t0} outside (0, 1)"
        )));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(CertError::DegenerateGeometry(format!(
            "t = {t} outside [0, 1]"
        )));
    }
    let r1 = t / t0;
    let r2 = (1.0 - t) / (1.0 - t0);
    Ok((h_t0 * r1.min(r2), h_t0 * r1.max(r2)))
}

/// Boundary data derived from `(x, x')`: perturbed vertices, outward edge
/// normals, altitude feet with their offsets, and the four boundary points
/// per edge.
struct BoundaryGeometry {
    verts: [Vec2; 7],
    /// k_j' for each vertex j (foot of the altitude from m_j', offset by the
    /// rotated foot perturbation).
    feet: [Vec2; 7],
    /// p_j(t) for t in {a, b, 1-b, 1-a}, edge-major.
    boundary: [[Vec2; 4]; 7],
}

fn outward_normal(a: Vec2, b: Vec2) -> Vec2 {
    let e = (b - a).normalized();
    Vec2 { x: e.y, y: -e.x }
}

fn boundary_geometry(x: &PerturbationX, xp: &PerturbationXPrime) -> Result<BoundaryGeometry, CertError> {
    let nc = num_consts();
    let verts = heptagon_vertices(x);
    check_convex(&verts)?;
    // The tangential foot offset carries a factor v (the same scaling the
    // boundary-height coordinates use); fixed by the finite-difference match
    // against the g' table rows.
    let feet = std::array::from_fn(|j| {
        let foot = chord_foot(verts[j], verts[(j + 3) % 7], verts[(j + 4) % 7]);
        foot + rotate(
            j,
            Vec2 {
                x: xp[2 * j],
                y: nc.v * xp[2 * j + 1],
            },
        )
    });
    let ts = [nc.a, nc.b, 1.0 - nc.b, 1.0 - nc.a];
    let boundary = std::array::from_fn(|j| {
        let a = verts[j];
        let b = verts[(j + 1) % 7];
        let n = outward_normal(a, b);
        std::array::from_fn(|s| {
            let t = ts[s];
            let h = xp[14 + 4 * j + s];
            a + (b - a) * t + n * (2.0 * nc.v * h)
        })
    });
    Ok(BoundaryGeometry {
        verts,
        feet,
        boundary,
    })
}

/// Twice the oriented area of the triangle `p p' p''` in the wedge form
/// `p ^ p' + p' ^ p'' + p'' ^ p`.
fn oriented_area(p: Vec2, q: Vec2, r: Vec2) -> f64 {
    p.cross(q) + q.cross(r) + r.cross(p)
}

/// Constraint functional `psi_j`, `j` in `1..=42`. Families of seven:
/// tangency dot products at the altitude feet (families 1-2), then
/// convexity triangle areas along each edge (families 3-6).
pub fn psi(j: usize, x: &PerturbationX, xp: &PerturbationXPrime) -> Result<f64, CertError> {
    assert!((1..=42).contains(&j));
    let family = (j - 1) / 7;
    let slot = (j - 1) % 7;
    let edge = (PSI_EDGE_OFFSET + slot) % 7;
    psi_edge(family, edge, x, xp)
}

/// `psi` addressed by (family, edge) instead of the table row index.
pub fn psi_edge(
    family: usize,
    edge: usize,
    x: &PerturbationX,
    xp: &PerturbationXPrime,
) -> Result<f64, CertError> {
    let g = boundary_geometry(x, xp)?;
    let i = edge;
    let k = g.feet[(i + 4) % 7];
    let m_far = g.verts[(i + 4) % 7];
    let [pa, pb, pib, pia] = g.boundary[i];
    Ok(match family {
        0 => (k - m_far).dot(k - pb),
        1 => (k - m_far).dot(k - pib),
        2 => oriented_area(pa, pb, k),
        3 => oriented_area(k, pib, pia),
        4 => oriented_area(g.verts[i], pa, pb),
        5 => oriented_area(pib, pia, g.verts[(i + 1) % 7]),
        _ => unreachable!("family index out of range"),
    })
}

/// One replacement boundary arc: the convexity upper envelope over an edge,
/// anchored at a single tabulated height. A tent with nodes at t = 0, t0, 1.
struct Arc {
    nodes: [Vec2; 3],
}

fn replacement_arc(g: &BoundaryGeometry, edge: usize, t0: f64, h: f64) -> Arc {
    let nc = num_consts();
    let a = g.verts[edge];
    let b = g.verts[(edge + 1) % 7];
    let n = outward_normal(a, b);
    let apex = a + (b - a) * t0 + n * (2.0 * nc.v * h);
    let start = a + n * (2.0 * nc.v * h / (1.0 - t0));
    let end = b + n * (2.0 * nc.v * h / t0);
    Arc {
        nodes: [start, apex, end],
    }
}

impl Arc {
    /// Coordinate along `axis` of the arc point at offset `s` along
    /// `normal`. The arc's offsets are monotone for certificate-scale data.
    fn t_at(&self, normal: Vec2, axis: Vec2, s: f64) -> Option<f64> {
        for seg in [[self.nodes[0], self.nodes[1]], [self.nodes[1], self.nodes[2]]] {
            let s0 = seg[0].dot(normal);
            let s1 = seg[1].dot(normal);
            if (s - s0) * (s - s1) <= 0.0 && (s1 - s0).abs() > 1e-300 {
                let w = (s - s0) / (s1 - s0);
                let p = seg[0] + (seg[1] - seg[0]) * w;
                return Some(p.dot(axis));
            }
        }
        None
    }

    fn offset_range(&self, normal: Vec2) -> (f64, f64) {
        let ss = self.nodes.map(|p| p.dot(normal));
        (
            ss.iter().copied().fold(f64::INFINITY, f64::min),
            ss.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Offset of the half-length chord spanning two replacement arcs: the
/// outermost offset (relative to the diameter offset `s_center`) at which the
/// chord between the arcs, parallel to `axis`, has length `half`.
fn side_chord_offset(
    arc1: &Arc,
    arc2: &Arc,
    normal: Vec2,
    axis: Vec2,
    s_center: f64,
    half: f64,
) -> Result<f64, CertError> {
    let (lo1, hi1) = arc1.offset_range(normal);
    let (lo2, hi2) = arc2.offset_range(normal);
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    if lo >= hi {
        return Err(CertError::DegenerateGeometry(
            "replacement arcs do not overlap in offset".into(),
        ));
    }
    let mut breaks: Vec<f64> = vec![lo, hi];
    for arc in [arc1, arc2] {
        for p in &arc.nodes {
            let s = p.dot(normal);
            if s > lo && s < hi {
                breaks.push(s);
            }
        }
    }
    // Order from the far end (away from the diameter) inward.
    breaks.sort_by(|p, q| {
        (q - s_center)
            .abs()
            .partial_cmp(&(p - s_center).abs())
            .unwrap()
    });
    let len_at = |s: f64| -> Result<f64, CertError> {
        let t1 = arc1.t_at(normal, axis, s).ok_or_else(|| {
            CertError::DegenerateGeometry("offset outside replacement arc".into())
        })?;
        let t2 = arc2.t_at(normal, axis, s).ok_or_else(|| {
            CertError::DegenerateGeometry("offset outside replacement arc".into())
        })?;
        Ok((t1 - t2).abs())
    };
    let mut prev_s = breaks[0];
    let mut prev_f = len_at(prev_s)? - half;
    if prev_f >= 0.0 {
        // Chords at the very end of the arcs are still long: the band is not
        // bracketed by the replacement data.
        return Err(CertError::DegenerateGeometry(
            "half-length chord outside replacement arcs".into(),
        ));
    }
    for &s in &breaks[1..] {
        let f = len_at(s)? - half;
        if f >= 0.0 {
            let w = prev_f / (prev_f - f);
            return Ok(prev_s + (s - prev_s) * w);
        }
        prev_s = s;
        prev_f = f;
    }
    Err(CertError::DegenerateGeometry(
        "no half-length chord on replacement arcs".into(),
    ))
}

/// The replacement functional of the second certificate step: the boundary
/// over the four relevant edges is replaced by its convexity upper envelope,
/// `Delta_i` is computed from half-length chords of the replacement arcs,
/// and the area `A''` is that of the 42-gon through the vertices, boundary
/// points, and altitude feet. Returns `(A'' / 2 Delta_i) / (A / 2 Delta) - 1`.
pub fn phi2(i: usize, x: &PerturbationX, xp: &PerturbationXPrime) -> Result<f64, CertError> {
    let nc = num_consts();
    let g = boundary_geometry(x, xp)?;

    // 42-gon area: per edge j, the run m_j', p_j(a), p_j(b), k_{j+4}',
    // p_j(1-b), p_j(1-a).
    let mut poly: Vec<Vec2> = Vec::with_capacity(42);
    for j in 0..7 {
        let [pa, pb, pib, pia] = g.boundary[j];
        poly.push(g.verts[j]);
        poly.push(pa);
        poly.push(pb);
        poly.push(g.feet[(j + 4) % 7]);
        poly.push(pib);
        poly.push(pia);
    }
    let area2 = shoelace(&poly);

    // Altitude and half-length chords on the replacement arcs.
    let m = g.verts[i];
    let k = g.feet[i];
    let axis = k - m;
    let length = axis.norm();
    if length < 1e-12 {
        return Err(CertError::DegenerateGeometry("zero altitude".into()));
    }
    let dir = axis * (1.0 / length);
    let normal = dir.perp();
    let s_center = m.dot(normal);
    let h = |edge: usize, slot: usize| xp[14 + 4 * edge + slot];

    let side_a = {
        let arc1 = replacement_arc(&g, (i + 1) % 7, nc.a, h((i + 1) % 7, 0));
        let arc2 = replacement_arc(&g, (i + 2) % 7, nc.b, h((i + 2) % 7, 1));
        side_chord_offset(&arc1, &arc2, normal, dir, s_center, length / 2.0)?
    };
    let side_b = {
        let arc1 = replacement_arc(&g, (i + 4) % 7, 1.0 - nc.b, h((i + 4) % 7, 2));
        let arc2 = replacement_arc(&g, (i + 5) % 7, 1.0 - nc.a, h((i + 5) % 7, 3));
        side_chord_offset(&arc1, &arc2, normal, dir, s_center, length / 2.0)?
    };
    let delta_i = 0.5 * length * (side_a - side_b).abs();
    Ok(area2 / (2.0 * delta_i) / nc.density - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::hept as hx;

    #[test]
    fn unperturbed_phi_vanishes() {
        let x = [0.0; 14];
        for i in 0..7 {
            let val = phi(i, &x).unwrap();
            assert!(val.abs() < 1e-13, "phi({i}, 0) = {val}");
        }
    }

    #[test]
    fn dilation_direction_is_flat() {
        // x = t * (1, 0, 1, 0, ...) dilates the heptagon; the density is
        // scale-invariant.
        let mut x = [0.0; 14];
        for i in 0..7 {
            x[2 * i] = 1e-3;
        }
        for i in 0..7 {
            let val = phi(i, &x).unwrap();
            assert!(val.abs() < 1e-10, "phi({i}, dilation) = {val}");
        }
    }

    #[test]
    fn rotation_symmetry_of_phi() {
        // Relabeling vertices by one step maps phi_i to phi_{i+1}.
        let mut x = [0.0; 14];
        x[2] = 3e-4;
        x[5] = -2e-4;
        x[9] = 1e-4;
        let mut shifted = [0.0; 14];
        for j in 0..7 {
            shifted[2 * ((j + 1) % 7)] = x[2 * j];
            shifted[2 * ((j + 1) % 7) + 1] = x[2 * j + 1];
        }
        for i in 0..7 {
            let a = phi(i, &x).unwrap();
            let b = phi((i + 1) % 7, &shifted).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn convexity_violation_detected() {
        let mut x = [0.0; 14];
        x[0] = -0.9;
        assert!(matches!(phi(0, &x), Err(CertError::ConvexityViolated)));
    }

    #[test]
    fn hbound_values() {
        let (lo, hi) = hbound(0.3, 0.3, 2.0).unwrap();
        assert_eq!((lo, hi), (2.0, 2.0));
        let (lo, _) = hbound(0.0, 0.5, 1.0).unwrap();
        assert_eq!(lo, 0.0);
        let (lo, hi) = hbound(1.0, 0.5, 1.0).unwrap();
        assert_eq!(lo, 0.0);
        assert_eq!(hi, 2.0);
        // t0 = a, t = b, h = 1.
        let a = hx::a().to_f64();
        let b = hx::b().to_f64();
        let (lo, hi) = hbound(b, a, 1.0).unwrap();
        let r1 = b / a;
        let r2 = (1.0 - b) / (1.0 - a);
        assert!((lo - r1.min(r2)).abs() < 1e-15);
        assert!((hi - r1.max(r2)).abs() < 1e-15);
        assert!(hbound(0.5, 1.5, 1.0).is_err());
        assert!(hbound(-0.1, 0.5, 1.0).is_err());
    }

    #[test]
    fn psi_vanishes_at_zero_boundary_data() {
        let xp = [0.0; 42];
        let mut x = [0.0; 14];
        x[3] = 4e-4;
        x[8] = -3e-4;
        x[13] = 2e-4;
        for j in 1..=42 {
            let val = psi(j, &x, &xp).unwrap();
            assert!(val.abs() < 1e-12, "psi({j}, x, 0) = {val}");
        }
        let val = psi(17, &[0.0; 14], &xp).unwrap();
        assert!(val.abs() < 1e-15);
    }

    #[test]
    fn phi2_reduces_to_phi_at_zero_boundary_data() {
        let xp = [0.0; 42];
        let mut x = [0.0; 14];
        x[2] = 5e-4;
        x[7] = -4e-4;
        x[10] = 3e-4;
        for i in 0..7 {
            let a = phi(i, &x).unwrap();
            let b = phi2(i, &x, &xp).unwrap();
            assert!((a - b).abs() < 1e-10, "phi vs phi2 at i = {i}: {a} vs {b}");
        }
        assert!(phi2(0, &[0.0; 14], &xp).unwrap().abs() < 1e-13);
    }
}
