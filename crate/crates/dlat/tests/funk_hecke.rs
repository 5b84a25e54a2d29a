//! Funk-Hecke consistency: convolving by the contact measure in coefficient
//! space must agree with the rotation-average definition computed by
//! quadrature.

use dlat::ball3d::harmonics::BasisEval;
use dlat::ball3d::{frame, icosphere, zonal_convolve, HarmonicSupport, Mat3, Vec3};

/// Rotation-average of the contact-frame mean of a raw spherical function:
/// `g(y) = (1/2pi) int over the spin angle of (1/12) sum_i f(R^T x_i)`,
/// where `R` carries `y` to the top contact point. The integrand is a
/// trigonometric polynomial of degree <= lmax in the spin angle, so a
/// uniform grid of 64 angles integrates it exactly.
fn rotation_average(f: &dyn Fn(Vec3) -> f64, y: Vec3) -> f64 {
    let x7 = frame()[6];
    let r0 = Mat3::rotation_between(y, x7);
    let steps = 64;
    let mut acc = 0.0;
    for k in 0..steps {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
        let rt = Mat3::about_axis(x7, theta).mul(&r0).transpose();
        let mean: f64 = frame().iter().map(|&x| f(rt.apply(x))).sum::<f64>() / 12.0;
        acc += mean;
    }
    acc / steps as f64
}

#[test]
fn pure_harmonics_scale_by_cl_over_12() {
    let cs = dlat::ball3d::coefficients(10);
    let dirs: Vec<Vec3> = icosphere(1).into_iter().take(20).collect();
    for (l, cl) in cs.iter().enumerate().take(11) {
        // A representative order per degree (the zonal one plus an off-zonal
        // when available).
        let orders: Vec<usize> = if l == 0 { vec![0] } else { vec![l, l + 1, l - 1] };
        for idx in orders {
            if idx > 2 * l {
                continue;
            }
            let f = move |x: Vec3| {
                let mut basis = BasisEval::new(l);
                basis.eval(x);
                basis.value(l, idx)
            };
            let factor = cl.value_f64() / 12.0;
            for &y in &dirs {
                let avg = rotation_average(&f, y);
                let expected = factor * f(y);
                assert!(
                    (avg - expected).abs() <= 1e-6,
                    "l = {l}, idx = {idx}: {avg} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn degree_two_content_is_annihilated() {
    // c_2 = 0: any degree-2 component averages to zero under the measure.
    let f = |x: Vec3| x.x * x.y; // pure degree-2 harmonic (up to scale)
    for y in icosphere(0) {
        let avg = rotation_average(&f, y);
        assert!(avg.abs() < 1e-10, "degree-2 leak {avg} at {y:?}");
    }
}

#[test]
fn zonal_degree_three_reproduces_5_over_432() {
    // h(x) = P_3(<x, p>) convolves to (c_3/12) P_3(<x, p>) = (5/432) P_3.
    let p = Vec3 {
        x: 0.48,
        y: -0.6,
        z: 0.64,
    }
    .normalized();
    let p3 = move |t: f64| (5.0 * t * t * t - 3.0 * t) / 2.0;
    let f = move |x: Vec3| p3(x.dot(p));
    for y in icosphere(1).into_iter().take(30) {
        let avg = rotation_average(&f, y);
        let expected = 5.0 / 432.0 * f(y);
        assert!((avg - expected).abs() < 1e-6, "{avg} vs {expected}");
    }
}

#[test]
fn coefficient_route_matches_for_band_limited_mixture() {
    // A fixed band-limited "support function": mean 1 plus small content in
    // degrees 1, 3, 4, 6.
    let f = |x: Vec3| {
        1.0 + 0.05 * x.z + 0.04 * (x.x * x.x * x.x - 0.6 * x.x)
            + 0.03 * (x.x * x.y * x.z)
            + 0.02 * ((x.z * x.z - 0.5) * x.x * x.y)
    };
    let rule = dlat::ball3d::default_rule();
    let h = HarmonicSupport::project(f, 8, rule);
    let g = zonal_convolve(&h);
    for y in icosphere(1).into_iter().take(24) {
        let avg = rotation_average(&f, y);
        assert!(
            (avg - g.eval(y)).abs() < 1e-6,
            "{} vs {} at {:?}",
            avg,
            g.eval(y),
            y
        );
    }
    // The l = 0 term survives untouched: both means agree.
    assert!((g.mean() - h.mean()).abs() < 1e-12);
}
