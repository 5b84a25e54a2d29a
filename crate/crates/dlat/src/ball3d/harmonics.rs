//! Real spherical harmonics: evaluation, projection of support functions,
//! and zonal convolution by the h.c.p. contact measure.

use serde::{Deserialize, Serialize};

use super::legendre;
use super::quadrature::SphereRule;
use super::vec3::Vec3;

/// A function on the sphere as real spherical-harmonic coefficients,
/// orthonormal basis, degrees `0..=lmax`. Coefficients are stored per
/// degree, order index `m + l` in `0..=2l`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicSupport {
    pub lmax: usize,
    pub coeffs: Vec<Vec<f64>>,
}

impl HarmonicSupport {
    pub fn zero(lmax: usize) -> Self {
        HarmonicSupport {
            lmax,
            coeffs: (0..=lmax).map(|l| vec![0.0; 2 * l + 1]).collect(),
        }
    }

    /// Projects a function onto the basis with the given quadrature rule.
    pub fn project(f: impl Fn(Vec3) -> f64, lmax: usize, rule: &SphereRule) -> Self {
        let mut out = Self::zero(lmax);
        let values: Vec<f64> = rule.nodes.iter().map(|&x| f(x)).collect();
        let mut basis = BasisEval::new(lmax);
        for (node, (&w, &v)) in rule.nodes.iter().zip(rule.weights.iter().zip(&values)) {
            basis.eval(*node);
            for l in 0..=lmax {
                for idx in 0..=(2 * l) {
                    out.coeffs[l][idx] += w * v * basis.value(l, idx);
                }
            }
        }
        out
    }

    pub fn eval(&self, x: Vec3) -> f64 {
        let mut basis = BasisEval::new(self.lmax);
        basis.eval(x);
        let mut acc = 0.0;
        for l in 0..=self.lmax {
            for idx in 0..=(2 * l) {
                acc += self.coeffs[l][idx] * basis.value(l, idx);
            }
        }
        acc
    }

    /// The degree-0 coefficient determines the mean: `avg = c00 * Y00`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0][0] * 0.5 / std::f64::consts::PI.sqrt()
    }

    /// Energy (sum of squared coefficients) at one degree.
    pub fn degree_energy(&self, l: usize) -> f64 {
        self.coeffs[l].iter().map(|c| c * c).sum()
    }
}

/// Convolution by the h.c.p. contact measure: multiplies every degree-l
/// component by `c_l / 12`.
pub fn zonal_convolve(h: &HarmonicSupport) -> HarmonicSupport {
    let cs = legendre::coefficients(h.lmax as u32);
    let mut out = h.clone();
    for l in 0..=h.lmax {
        let factor = cs[l].value_f64() / 12.0;
        for c in out.coeffs[l].iter_mut() {
            *c *= factor;
        }
    }
    out
}

/// Scratch evaluator for the full real harmonic basis at a point.
pub struct BasisEval {
    lmax: usize,
    /// p[l][m]: associated Legendre values at the current cos(theta).
    p: Vec<Vec<f64>>,
    cos_m: Vec<f64>,
    sin_m: Vec<f64>,
    norms: Vec<Vec<f64>>,
}

impl BasisEval {
    pub fn new(lmax: usize) -> Self {
        let mut norms = Vec::with_capacity(lmax + 1);
        for l in 0..=lmax {
            let mut row = Vec::with_capacity(l + 1);
            for m in 0..=l {
                // sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)
                let mut ratio = 1.0f64;
                for k in (l - m + 1)..=(l + m) {
                    ratio /= k as f64;
                }
                row.push(((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * ratio).sqrt());
            }
            norms.push(row);
        }
        BasisEval {
            lmax,
            p: (0..=lmax).map(|l| vec![0.0; l + 1]).collect(),
            cos_m: vec![0.0; lmax + 1],
            sin_m: vec![0.0; lmax + 1],
            norms,
        }
    }

    pub fn eval(&mut self, x: Vec3) {
        let ct = x.z.clamp(-1.0, 1.0);
        let st = (1.0 - ct * ct).max(0.0).sqrt();
        let phi = x.y.atan2(x.x);
        for m in 0..=self.lmax {
            self.cos_m[m] = (m as f64 * phi).cos();
            self.sin_m[m] = (m as f64 * phi).sin();
        }
        // Associated Legendre without the Condon-Shortley phase.
        for l in 0..=self.lmax {
            for m in 0..=l {
                self.p[l][m] = 0.0;
            }
        }
        let mut pmm = 1.0f64;
        for m in 0..=self.lmax {
            if m > 0 {
                pmm *= (2 * m - 1) as f64 * st;
            }
            self.p[m][m] = pmm;
            if m < self.lmax {
                self.p[m + 1][m] = (2 * m + 1) as f64 * ct * pmm;
            }
            for l in (m + 2)..=self.lmax {
                self.p[l][m] = ((2 * l - 1) as f64 * ct * self.p[l - 1][m]
                    - (l + m - 1) as f64 * self.p[l - 2][m])
                    / (l - m) as f64;
            }
        }
    }

    /// Basis value for degree l and order index `idx = m + l` (so `idx < l`
    /// are the sine harmonics, `idx = l` the zonal one, `idx > l` cosine).
    pub fn value(&self, l: usize, idx: usize) -> f64 {
        let sqrt2 = std::f64::consts::SQRT_2;
        if idx == l {
            self.norms[l][0] * self.p[l][0]
        } else if idx > l {
            let m = idx - l;
            sqrt2 * self.norms[l][m] * self.p[l][m] * self.cos_m[m]
        } else {
            let m = l - idx;
            sqrt2 * self.norms[l][m] * self.p[l][m] * self.sin_m[m]
        }
    }
}
