//! Monte-Carlo oracle for the Steiner volume of `(1-t) B + t K`.
//!
//! Membership in the Minkowski combination is exact: a point lies in
//! `t K + (1-t) B` iff its distance to the scaled polytope `t K` is at most
//! `1 - t`. Sampling a bounding box then estimates the volume independently
//! of the Steiner expansion.

use rand::Rng;

use dlat::ball3d::{cube, mean_width, octahedron, random_polytope, steiner_volume, ConvexBody3};
use dlat::geom2d::random::rng;

fn mc_minkowski_volume(k: &ConvexBody3, t: f64, samples: usize, seed: u64) -> f64 {
    let scaled = k.scale(t);
    let reach = 1.0 - t;
    let half = t * k.bounding_radius() + reach + 1e-9;
    let mut rng = rng(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let p = dlat::ball3d::vec3(
            rng.random_range(-half..half),
            rng.random_range(-half..half),
            rng.random_range(-half..half),
        );
        if scaled.distance(p) <= reach {
            hits += 1;
        }
    }
    (2.0 * half).powi(3) * hits as f64 / samples as f64
}

fn check_body(k: &ConvexBody3, samples: usize, seed: u64) {
    let w = mean_width(k);
    let s = k.surface_area();
    let v = k.volume();
    for (i, &t) in [0.25, 0.5, 0.75].iter().enumerate() {
        let predicted = steiner_volume(v, w, s, t);
        let measured = mc_minkowski_volume(k, t, samples, seed + i as u64);
        let rel = (predicted - measured).abs() / predicted;
        assert!(
            rel < 5e-3,
            "t = {t}: steiner {predicted:.6} vs mc {measured:.6} (rel {rel:.2e})"
        );
    }
}

#[test]
fn cube_volumes() {
    check_body(&cube(1.0), 2_000_000, 11);
}

#[test]
fn octahedron_volumes() {
    check_body(&octahedron(1.0), 2_000_000, 12);
}

#[test]
fn random_polytope_volumes() {
    let mut r = rng(99);
    let k = random_polytope(&mut r, 20);
    check_body(&k, 2_000_000, 13);
}
