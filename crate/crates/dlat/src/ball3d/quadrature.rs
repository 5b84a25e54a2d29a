//! Spherical quadrature: a product rule of Gauss-Legendre nodes in cos(theta)
//! and a uniform azimuthal grid. One fixed high-order rule serves every
//! integral; a doubled-order rule estimates the quadrature error.

use std::sync::OnceLock;

use super::vec3::{vec3, Vec3};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Tricomi-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// A quadrature rule on the unit sphere: sum of `w_i f(x_i)` approximates
/// the surface integral of f (total weight 4 pi).
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn product(n_theta: usize, m_phi: usize) -> SphereRule {
        let (xs, ws) = gauss_legendre(n_theta);
        let mut nodes = Vec::with_capacity(n_theta * m_phi);
        let mut weights = Vec::with_capacity(n_theta * m_phi);
        let dphi = 2.0 * std::f64::consts::PI / m_phi as f64;
        for (x, w) in xs.iter().zip(&ws) {
            let r = (1.0 - x * x).max(0.0).sqrt();
            for k in 0..m_phi {
                let phi = dphi * k as f64;
                nodes.push(vec3(r * phi.cos(), r * phi.sin(), *x));
                weights.push(w * dphi);
            }
        }
        SphereRule { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(Vec3) -> f64) -> f64 {
        // Compensated summation: plain summation over ~3e5 nodes costs
        // about 1e-9 absolute, which the mean-width extrapolation amplifies.
        let mut acc = Kahan::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Kahan compensated accumulator.
#[derive(Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }
}

/// The fixed default rule: 192 x 384 = 73728 nodes, exact for spherical
/// polynomials far beyond every harmonic degree used here.
pub fn default_rule() -> &'static SphereRule {
    static RULE: OnceLock<SphereRule> = OnceLock::new();
    RULE.get_or_init(|| SphereRule::product(192, 384))
}

/// Doubled-order rule for error estimation.
pub fn doubled_rule() -> &'static SphereRule {
    static RULE: OnceLock<SphereRule> = OnceLock::new();
    RULE.get_or_init(|| SphereRule::product(384, 768))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre(2);
        assert!((x[0] + (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((x[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((w[0] - 1.0).abs() < 1e-14);

        let (x, w) = gauss_legendre(64);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
        // Integrates x^2 exactly: 2/3.
        let m2: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        assert!((m2 - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn sphere_rule_moments() {
        let rule = SphereRule::product(24, 48);
        let area = rule.integrate(|_| 1.0);
        assert!((area - 4.0 * std::f64::consts::PI).abs() < 1e-10);
        let zz = rule.integrate(|p| p.z * p.z);
        assert!((zz - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-10);
        let odd = rule.integrate(|p| p.x * p.y * p.z);
        assert!(odd.abs() < 1e-12);
    }
}
