//! Seeded generators for randomized property tests and probe batteries.
//! ChaCha-based so the streams are identical on every platform and run.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::polygon::{convex_hull, ConvexPolygon};
use super::vec2::{vec2, Vec2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random convex polygon: the hull of `n_points` uniform points in the unit
/// square, recentered at its centroid (so the origin is interior). Retries
/// until the hull is a valid strictly convex polygon.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng, n_points: usize) -> ConvexPolygon {
    assert!(n_points >= 3);
    loop {
        let pts: Vec<Vec2> = (0..n_points)
            .map(|_| vec2(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            continue;
        }
        if let Ok(poly) = ConvexPolygon::new(hull) {
            if poly.area() > 1e-3 {
                let c = poly.centroid();
                return poly.translate(-c);
            }
        }
    }
}

/// Random nondegenerate affine map with determinant bounded away from zero.
pub fn random_affine(rng: &mut ChaCha8Rng) -> ([[f64; 2]; 2], Vec2) {
    loop {
        let m = [
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
        ];
        let det: f64 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() > 0.3 {
            let t = vec2(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            return (m, t);
        }
    }
}
