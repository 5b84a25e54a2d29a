//! Finite differences with Richardson extrapolation.
//!
//! Gradients use two central-difference step sizes (h and h/2) and one
//! extrapolation level. The smooth variant cancels the O(h^2) term; the
//! one-sided-second-derivative variant cancels O(h), which is the leading
//! error when the function is only piecewise analytic across the base point
//! (matching first derivatives, branch-dependent curvature).

pub fn central(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], k: usize, h: f64) -> f64 {
    let mut xp = x0.to_vec();
    let mut xm = x0.to_vec();
    xp[k] += h;
    xm[k] -= h;
    (f(&xp) - f(&xm)) / (2.0 * h)
}

/// Gradient for smooth functions: error O(h^4) after extrapolation.
pub fn gradient_smooth(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], h: f64) -> Vec<f64> {
    (0..x0.len())
        .map(|k| {
            let d1 = central(f, x0, k, h);
            let d2 = central(f, x0, k, h / 2.0);
            (4.0 * d2 - d1) / 3.0
        })
        .collect()
}

/// Gradient tolerating a curvature jump at the base point: cancels the O(h)
/// term of the central difference, leaving O(h^2).
pub fn gradient_kinked(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], h: f64) -> Vec<f64> {
    (0..x0.len())
        .map(|k| {
            let d1 = central(f, x0, k, h);
            let d2 = central(f, x0, k, h / 2.0);
            2.0 * d2 - d1
        })
        .collect()
}

fn second_diff(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], j: usize, k: usize, h: f64) -> f64 {
    if j == k {
        let f0 = f(x0);
        let mut xp = x0.to_vec();
        let mut xm = x0.to_vec();
        xp[j] += h;
        xm[j] -= h;
        (f(&xp) - 2.0 * f0 + f(&xm)) / (h * h)
    } else {
        let mut x = x0.to_vec();
        let mut eval = |sj: f64, sk: f64| {
            x[j] = x0[j] + sj * h;
            x[k] = x0[k] + sk * h;
            f(&x)
        };
        (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0)) / (4.0 * h * h)
    }
}

/// Symmetric Hessian by second-order differences with one Richardson level.
pub fn hessian(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], h: f64) -> Vec<Vec<f64>> {
    let n = x0.len();
    let mut out = vec![vec![0.0; n]; n];
    for j in 0..n {
        for k in j..n {
            let d1 = second_diff(f, x0, j, k, h);
            let d2 = second_diff(f, x0, j, k, h / 2.0);
            let val = (4.0 * d2 - d1) / 3.0;
            out[j][k] = val;
            out[k][j] = val;
        }
    }
    out
}
