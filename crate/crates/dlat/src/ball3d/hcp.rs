//! The hexagonal-close-packing contact frame and the perturbed double
//! lattice built from twelve support heights.

use serde::{Deserialize, Serialize};

use super::body::ConvexBody3;
use super::hull3::HalfspaceCell;
use super::vec3::{det3, solve3, vec3, Vec3};
use super::BallError;

/// The twelve contact directions of the h.c.p. packing: six in the xy-plane,
/// three upper, three lower. All unit vectors.
pub fn frame() -> [Vec3; 12] {
    let s3 = 3f64.sqrt();
    let x1 = vec3(1.0, 0.0, 0.0);
    let x2 = vec3(0.5, s3 / 2.0, 0.0);
    let x7 = vec3(0.5, 1.0 / 12f64.sqrt(), (2f64 / 3.0).sqrt());
    let x10 = vec3(0.5, 1.0 / 12f64.sqrt(), -(2f64 / 3.0).sqrt());
    [
        x1,
        x2,
        x2 - x1,
        -x1,
        -x2,
        x1 - x2,
        x7,
        x7 - x1,
        x7 - x2,
        x10,
        x10 - x1,
        x10 - x2,
    ]
}

/// eta(K): the mean of the twelve support heights at the contact frame.
pub fn eta(body: &ConvexBody3) -> f64 {
    let f = frame();
    f.iter().map(|&x| body.support(x)).sum::<f64>() / 12.0
}

pub fn support_heights(body: &ConvexBody3) -> [f64; 12] {
    let f = frame();
    std::array::from_fn(|i| body.support(f[i]))
}

/// A three-dimensional double lattice: two in-plane translations and two
/// inversion centers. The full translation lattice is generated by `a1`,
/// `a2`, and the composition of the two inversions, `2 (c7 - c10)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleLattice3D {
    pub a1: Vec3,
    pub a2: Vec3,
    pub c7: Vec3,
    pub c10: Vec3,
}

impl DoubleLattice3D {
    /// Volume per body: half the fundamental cell.
    pub fn mean_volume(&self) -> f64 {
        det3(self.a1, self.a2, (self.c7 - self.c10) * 2.0).abs() / 2.0
    }
}

/// Builds the perturbed h.c.p. double lattice from twelve support heights.
///
/// The hexagon `{<y, x_i> <= h_i, i = 1..6}` in the xy-plane gets its
/// locally optimal packing lattice near the seed `(2 x_1, 2 x_2)`; the upper
/// and lower inversion centers solve the three tangency constraints each.
pub fn build_hcp_double_lattice(h: &[f64; 12]) -> Result<DoubleLattice3D, BallError> {
    for (i, &hi) in h.iter().enumerate() {
        if !(0.9..=1.1).contains(&hi) {
            return Err(BallError::Precondition(format!(
                "support height {i} = {hi} too far from 1"
            )));
        }
    }
    let f = frame();
    let w1 = h[0] + h[3];
    let w2 = h[1] + h[4];
    let w3 = h[2] + h[5];

    // Lattice basis for the hexagon, all three contact constraints active:
    //   a1 = w1 x1 + s x1_perp, a2 = w2 x2 + t x2_perp,
    //   <a2 - a1, x3> = w3  =>  t = s + (2 w3 - w1 - w2)/sqrt(3);
    // minimize det(a1, a2) over s by golden section around the seed.
    let s3 = 3f64.sqrt();
    let link = (2.0 * w3 - w1 - w2) / s3;
    let det_of = |s: f64| -> f64 {
        let t = s + link;
        let a1 = vec3(w1, s, 0.0);
        let a2 = vec3(w2 / 2.0 - t * s3 / 2.0, w2 * s3 / 2.0 + t / 2.0, 0.0);
        a1.x * a2.y - a1.y * a2.x
    };
    // Along the constraint manifold the determinant is an exact quadratic in
    // s with positive curvature, so one Newton step from the seed lands on
    // the local optimum to machine precision (a golden-section search could
    // only resolve the argmin to sqrt(eps)).
    let step = 0.25;
    let (dm, d0, dp) = (det_of(-step), det_of(0.0), det_of(step));
    let slope = (dp - dm) / (2.0 * step);
    let curvature = (dp - 2.0 * d0 + dm) / (step * step);
    if curvature <= 0.0 {
        return Err(BallError::OptimizationFailure(
            "hexagon determinant not convex along the contact manifold".into(),
        ));
    }
    let s = -slope / curvature;
    if s.abs() > 0.5 {
        return Err(BallError::OptimizationFailure(
            "hexagon lattice optimum left the seed basin".into(),
        ));
    }
    debug_assert!(det_of(s) <= det_of(s + 1e-4) && det_of(s) <= det_of(s - 1e-4));
    let t = s + link;
    let a1 = vec3(w1, s, 0.0);
    let a2 = vec3(w2 / 2.0 - t * s3 / 2.0, w2 * s3 / 2.0 + t / 2.0, 0.0);
    if det_of(s) <= 0.0 {
        return Err(BallError::OptimizationFailure(
            "hexagon lattice basis degenerated".into(),
        ));
    }
    // The contact constraints hold by construction; make sure the optimum
    // stayed in the seed basin (contact points inside their facets).
    for (v, w, x) in [(a1, w1, f[0]), (a2, w2, f[1]), (a2 - a1, w3, f[2])] {
        if (v.dot(x) - w).abs() > 1e-9 {
            return Err(BallError::OptimizationFailure(
                "contact constraint drifted".into(),
            ));
        }
    }

    // Upper inversion center: <x7', x_i> = h_i for i = 7, 8, 9 with
    // x8' = x7' - a1/2 and x9' = x7' - a2/2 folded into the right-hand side.
    let c7 = solve3(
        f[6],
        f[7],
        f[8],
        vec3(
            h[6],
            h[7] + f[7].dot(a1) / 2.0,
            h[8] + f[8].dot(a2) / 2.0,
        ),
    )
    .ok_or_else(|| BallError::OptimizationFailure("upper center system singular".into()))?;
    let c10 = solve3(
        f[9],
        f[10],
        f[11],
        vec3(
            h[9],
            h[10] + f[10].dot(a1) / 2.0,
            h[11] + f[11].dot(a2) / 2.0,
        ),
    )
    .ok_or_else(|| BallError::OptimizationFailure("lower center system singular".into()))?;

    Ok(DoubleLattice3D { a1, a2, c7, c10 })
}

/// Closed-form mean volume of the perturbed lattice, in terms of the
/// opposite-height sums `eta_i = h_i + h_{i+3} - 2` (valid under the
/// normalization `sum h_i = 12`):
///
/// ```text
/// 4 sqrt(2) - sqrt(2)/9 E^2 - 2 sqrt(2)/3 S + sqrt(2)/9 E (2S - E^2),
/// ```
///
/// with `E = eta_1 + eta_2 + eta_3` and `S = eta_1^2 + eta_2^2 + eta_3^2`.
pub fn hcp_mean_volume_formula(eta1: f64, eta2: f64, eta3: f64) -> f64 {
    let e = eta1 + eta2 + eta3;
    let s = eta1 * eta1 + eta2 * eta2 + eta3 * eta3;
    let r2 = 2f64.sqrt();
    4.0 * r2 - r2 / 9.0 * e * e - 2.0 * r2 / 3.0 * s + r2 / 9.0 * e * (2.0 * s - e * e)
}

/// The quadratic part of the mean-volume expansion; strictly negative away
/// from the origin.
pub fn hcp_mean_volume_quadratic(eta1: f64, eta2: f64, eta3: f64) -> f64 {
    let e = eta1 + eta2 + eta3;
    let s = eta1 * eta1 + eta2 * eta2 + eta3 * eta3;
    let r2 = 2f64.sqrt();
    -r2 / 9.0 * e * e - 2.0 * r2 / 3.0 * s
}

/// Voronoi cell evidence: the polyhedron cut out by the twelve contact
/// planes at height 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoronoiCellReport {
    pub volume: f64,
    pub faces: usize,
    pub vertices: usize,
    pub contains_unit_ball: bool,
}

pub fn voronoi_cell_check() -> VoronoiCellReport {
    let f = frame();
    let offsets = vec![1.0; 12];
    let cell = HalfspaceCell::new(&f, &offsets).expect("the h.c.p. cell is bounded");
    // All twelve planes sit at distance 1 from the origin, so the unit ball
    // is inscribed exactly when every face survives.
    VoronoiCellReport {
        volume: cell.volume(&f, &offsets),
        faces: cell.faces.len(),
        vertices: cell.vertices.len(),
        contains_unit_ball: cell.faces.len() == 12,
    }
}
