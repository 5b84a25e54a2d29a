//! Three-dimensional apparatus around the unit ball: support functions and
//! mean width, the h.c.p. contact frame and its perturbed double lattices,
//! exact Legendre coefficients of the contact measure, zonal convolution,
//! and the Steiner-formula density bound for near-ball bodies.

pub mod body;
pub mod harmonics;
pub mod hcp;
pub mod hull3;
pub mod legendre;
pub mod quadrature;
pub mod vec3;

use serde::{Deserialize, Serialize};

pub use body::{
    cube, cuboid, mean_width, mean_width_error_estimate, min_width_residual, octahedron,
    random_polytope, ConvexBody3,
};
pub use harmonics::{zonal_convolve, HarmonicSupport};
pub use hcp::{
    build_hcp_double_lattice, eta, frame, hcp_mean_volume_formula, hcp_mean_volume_quadratic,
    support_heights, voronoi_cell_check, DoubleLattice3D, VoronoiCellReport,
};
pub use legendre::{coefficient, coefficients, residue_pattern_check, LegendreCoefficient};
pub use quadrature::{default_rule, SphereRule};
pub use vec3::{vec3, Mat3, Vec3};

/// Errors from the three-dimensional operations.
#[derive(Debug, thiserror::Error)]
pub enum BallError {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("local optimization failed: {0}")]
    OptimizationFailure(String),
    #[error("no rotation with eta below w/2 found (margin {margin:.3e}); expected only for balls")]
    NoLowEtaRotation { margin: f64 },
}

/// Steiner volume of `(1-lambda) B + lambda K` in terms of the volume, mean
/// width, and surface area of K:
///
/// ```text
/// vol = 4 pi/3 (1-t)^3 + 2 pi w t (1-t)^2 + S t^2 (1-t) + t^3 vol_K.
/// ```
///
/// The mean-width term carries the full `(1-t)^2` factor; the `K = B`
/// identity (constant volume `4 pi / 3`) forces it, and the Monte-Carlo
/// oracle over polytopes confirms it.
pub fn steiner_volume(vol_k: f64, w: f64, surface: f64, lambda: f64) -> f64 {
    assert!((0.0..=1.0).contains(&lambda), "lambda outside [0, 1]");
    let t = lambda;
    let u = 1.0 - t;
    4.0 * std::f64::consts::PI / 3.0 * u * u * u
        + 2.0 * std::f64::consts::PI * w * t * u * u
        + surface * t * t * u
        + t * t * t * vol_k
}

/// Deterministic near-uniform sphere grid: subdivided icosahedron vertices.
pub fn icosphere(subdivisions: u32) -> Vec<Vec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vec3> = vec![
        vec3(-1.0, phi, 0.0),
        vec3(1.0, phi, 0.0),
        vec3(-1.0, -phi, 0.0),
        vec3(1.0, -phi, 0.0),
        vec3(0.0, -1.0, phi),
        vec3(0.0, 1.0, phi),
        vec3(0.0, -1.0, -phi),
        vec3(0.0, 1.0, -phi),
        vec3(phi, 0.0, -1.0),
        vec3(phi, 0.0, 1.0),
        vec3(-phi, 0.0, -1.0),
        vec3(-phi, 0.0, 1.0),
    ]
    .into_iter()
    .map(Vec3::normalized)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut midpoint: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let mut mid = |i: usize, j: usize, verts: &mut Vec<Vec3>| -> usize {
                let key = (i.min(j), i.max(j));
                *midpoint.entry(key).or_insert_with(|| {
                    let m = ((verts[i] + verts[j]) * 0.5).normalized();
                    verts.push(m);
                    verts.len() - 1
                })
            };
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            new_faces.push([a, ab, ca]);
            new_faces.push([b, bc, ab]);
            new_faces.push([c, ca, bc]);
            new_faces.push([ab, bc, ca]);
        }
        faces = new_faces;
    }
    verts
}

/// A rotation achieving a low contact-frame mean.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowEtaRotation {
    pub rotation: Mat3,
    pub eta: f64,
    pub mean_width: f64,
    /// Margin `eta - w/2` (negative on success).
    pub margin: f64,
}

/// Searches for a rotation R with `eta(R K) < w/2`.
///
/// The spin-averaged eta as a function of the direction sent to the top
/// contact point is the zonal convolution `g` of the support function, so
/// the search convolves the harmonic expansion, scans an icosahedral grid
/// with local refinement for the minimum of `g`, and then optimizes the spin
/// angle directly.
pub fn find_low_eta_rotation(
    body: &ConvexBody3,
    lmax: usize,
) -> Result<LowEtaRotation, BallError> {
    let w = mean_width(body);
    let h = HarmonicSupport::project(|x| body.support(x), lmax, default_rule());
    let g = zonal_convolve(&h);

    // Coarse grid.
    let grid = icosphere(5);
    let mut best_y = grid[0];
    let mut best_g = f64::INFINITY;
    for &y in &grid {
        let val = g.eval(y);
        if val < best_g {
            best_g = val;
            best_y = y;
        }
    }
    // Local refinement: shrinking rings around the best direction.
    let mut radius = 0.2f64;
    for _ in 0..24 {
        let (u, v) = orthonormal_frame(best_y);
        let mut improved = false;
        for k in 0..12 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 12.0;
            let cand = (best_y + (u * t.cos() + v * t.sin()) * radius).normalized();
            let val = g.eval(cand);
            if val < best_g {
                best_g = val;
                best_y = cand;
                improved = true;
            }
        }
        if !improved {
            radius *= 0.5;
        }
    }

    let x7 = frame()[6];
    if best_g >= w / 2.0 - 1e-9 {
        return Err(BallError::NoLowEtaRotation {
            margin: best_g - w / 2.0,
        });
    }

    // The spin average at best_y is below w/2, so some spin angle puts eta
    // itself below w/2; sweep and refine.
    let r0 = Mat3::rotation_between(best_y, x7);
    let eta_at = |theta: f64| -> f64 {
        let r = Mat3::about_axis(x7, theta).mul(&r0);
        let rt = r.transpose();
        frame().iter().map(|&x| body.support(rt.apply(x))).sum::<f64>() / 12.0
    };
    let steps = 720;
    let mut best_theta = 0.0;
    let mut best_eta = f64::INFINITY;
    for k in 0..steps {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
        let val = eta_at(theta);
        if val < best_eta {
            best_eta = val;
            best_theta = theta;
        }
    }
    let span = 2.0 * std::f64::consts::PI / steps as f64;
    let (mut lo, mut hi) = (best_theta - span, best_theta + span);
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    for _ in 0..60 {
        let c = hi - (hi - lo) * INV_PHI;
        let d = lo + (hi - lo) * INV_PHI;
        if eta_at(c) < eta_at(d) {
            hi = d;
        } else {
            lo = c;
        }
    }
    let theta = 0.5 * (lo + hi);
    let rotation = Mat3::about_axis(x7, theta).mul(&r0);
    let eta_final = eta_at(theta).min(best_eta);
    Ok(LowEtaRotation {
        rotation,
        eta: eta_final,
        mean_width: w,
        margin: eta_final - w / 2.0,
    })
}

fn orthonormal_frame(y: Vec3) -> (Vec3, Vec3) {
    let helper = if y.x.abs() < 0.9 {
        vec3(1.0, 0.0, 0.0)
    } else {
        vec3(0.0, 1.0, 0.0)
    };
    let u = y.cross(helper).normalized();
    let v = y.cross(u);
    (u, v)
}

/// The density bound of the near-ball argument at a Minkowski parameter
/// `lambda`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NearBallBound {
    pub lambda: f64,
    /// Lower bound on the double-lattice packing density of
    /// `(1-lambda) B + lambda K`.
    pub bound: f64,
    /// `bound - pi/sqrt(18)`.
    pub excess: f64,
    /// Implied slope `excess / lambda` (0 at lambda = 0 by convention).
    pub beta: f64,
    pub mean_width: f64,
    pub eta: f64,
}

pub const BALL_DENSITY: f64 = 0.740_480_489_693_061_4; // pi / sqrt(18)

/// Evaluates the density lower bound
///
/// ```text
/// delta((1-t)B + tK) >= (pi/sqrt(18)) (1 + 3 (w/2 - 1) t (1-t)^2)
///                                     / (1 + (eta - 1) t)^3,
/// ```
///
/// which chains the Steiner volume bound (with the isoperimetric `S >= 4 pi`)
/// over the perturbed h.c.p. mean volume `4 sqrt(2) eta((1-t)B + tK)^3`.
///
/// Preconditions: `vol(K) = 4 pi / 3` (normalize first) and, for a positive
/// slope, `eta(K) < w/2` (rotate with [`find_low_eta_rotation`] first); a
/// ball passes with `eta = w/2` and slope zero.
pub fn near_ball_bound(body: &ConvexBody3, lambda: f64) -> Result<NearBallBound, BallError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(BallError::Precondition(format!(
            "lambda = {lambda} outside [0, 1]"
        )));
    }
    let ball_vol = 4.0 * std::f64::consts::PI / 3.0;
    if (body.volume() / ball_vol - 1.0).abs() > 1e-9 {
        return Err(BallError::Precondition(format!(
            "volume {} not normalized to 4 pi / 3",
            body.volume()
        )));
    }
    let w = mean_width(body);
    let e = eta(body);
    if e > w / 2.0 + 1e-9 {
        return Err(BallError::Precondition(format!(
            "eta = {e} exceeds w/2 = {}; rotate the body first",
            w / 2.0
        )));
    }
    let t = lambda;
    let numerator = 1.0 + 3.0 * (w / 2.0 - 1.0) * t * (1.0 - t) * (1.0 - t);
    let eta_t = 1.0 + (e - 1.0) * t;
    let bound = BALL_DENSITY * numerator / (eta_t * eta_t * eta_t);
    let excess = bound - BALL_DENSITY;
    Ok(NearBallBound {
        lambda,
        bound,
        excess,
        beta: if t > 0.0 { excess / t } else { 0.0 },
        mean_width: w,
        eta: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steiner_ball_identity() {
        let v = 4.0 * std::f64::consts::PI / 3.0;
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let vol = steiner_volume(v, 2.0, 4.0 * std::f64::consts::PI, t);
            assert!((vol - v).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn steiner_endpoints_and_cube_value() {
        let c = cube(1.0);
        let vol = steiner_volume(c.volume(), 1.5, c.surface_area(), 1.0);
        assert!((vol - 1.0).abs() < 1e-12);
        // lambda = 1/2: pi/6 + 3 pi/8 + 3/4 + 1/8.
        let vol = steiner_volume(1.0, 1.5, 6.0, 0.5);
        let expected = std::f64::consts::PI / 6.0 + 3.0 * std::f64::consts::PI / 8.0 + 0.875;
        assert!((vol - expected).abs() < 1e-12);
        assert!((vol - 2.576696).abs() < 1e-6);
    }

    #[test]
    fn icosphere_sizes() {
        assert_eq!(icosphere(0).len(), 12);
        assert_eq!(icosphere(1).len(), 42);
        assert_eq!(icosphere(5).len(), 10242);
        for v in icosphere(2) {
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ball_bound_is_flat() {
        let b = ConvexBody3::ball(1.0);
        for t in [0.0, 0.01, 0.05, 0.3] {
            let out = near_ball_bound(&b, t).unwrap();
            assert!((out.bound - BALL_DENSITY).abs() < 1e-9, "t = {t}");
        }
        assert!(near_ball_bound(&b, 1.5).is_err());
        assert!(near_ball_bound(&ConvexBody3::ball(2.0), 0.1).is_err());
    }

    #[test]
    fn bound_is_dilation_invariant() {
        // Renormalizing a dilated body reproduces the original bound.
        let k = cuboid(1.0, 1.0, 1.2).normalize_volume(4.0 * std::f64::consts::PI / 3.0);
        let k2 = k.scale(2.0).normalize_volume(4.0 * std::f64::consts::PI / 3.0);
        for t in [0.01, 0.04] {
            let a = near_ball_bound(&k, t).unwrap().bound;
            let b = near_ball_bound(&k2, t).unwrap().bound;
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn ball_has_no_low_eta_rotation() {
        let b = ConvexBody3::ball(1.0);
        match find_low_eta_rotation(&b, 8) {
            Err(BallError::NoLowEtaRotation { margin }) => {
                assert!(margin.abs() < 1e-7, "margin {margin}");
            }
            other => panic!("expected no rotation for the ball, got {other:?}"),
        }
    }

    #[test]
    fn cube_has_low_eta_rotation() {
        let c = cube(1.0).normalize_volume(4.0 * std::f64::consts::PI / 3.0);
        let found = find_low_eta_rotation(&c, 12).unwrap();
        assert!(found.margin < 0.0);
        assert!(found.eta < found.mean_width / 2.0);
    }
}
