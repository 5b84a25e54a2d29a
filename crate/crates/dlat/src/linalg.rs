//! Small dense linear algebra over f64: Gaussian solves, one-sided Jacobi
//! singular values, and 2x2 symmetric eigenvalues. Matrices here are tiny
//! (at most 49 x 42), so simplicity and determinism win over speed.

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is numerically singular.
pub fn solve(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows;
    assert_eq!(a.rows, a.cols);
    assert_eq!(b.len(), n);
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| m.get(r, col).abs().total_cmp(&m.get(s, col).abs()))
            .unwrap();
        if m.get(pivot, col).abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                let tmp = m.get(col, k);
                m.set(col, k, m.get(pivot, k));
                m.set(pivot, k, tmp);
            }
            rhs.swap(col, pivot);
        }
        let inv = 1.0 / m.get(col, col);
        for r in (col + 1)..n {
            let f = m.get(r, col) * inv;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                let val = m.get(r, k) - f * m.get(col, k);
                m.set(r, k, val);
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..n {
            acc -= m.get(row, k) * x[k];
        }
        x[row] = acc / m.get(row, row);
    }
    Some(x)
}

/// Singular values of an arbitrary matrix by one-sided Jacobi on the columns
/// (of the transpose when rows < cols, so the working matrix is tall).
/// Returned sorted descending. Accurate to near machine precision for the
/// small well-scaled matrices used here.
pub fn singular_values(a: &Mat) -> Vec<f64> {
    // Work with a tall matrix: columns get orthogonalized.
    let (rows, cols, tall) = if a.rows >= a.cols {
        (a.rows, a.cols, a.clone())
    } else {
        let mut t = Mat::zeros(a.cols, a.rows);
        for i in 0..a.rows {
            for j in 0..a.cols {
                t.set(j, i, a.get(i, j));
            }
        }
        (a.cols, a.rows, t)
    };
    let mut w = tall;
    let eps = 1e-15;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..rows {
                    let xp = w.get(i, p);
                    let xq = w.get(i, q);
                    app += xp * xp;
                    aqq += xq * xq;
                    apq += xp * xq;
                }
                off = off.max(apq.abs() / (app * aqq).sqrt().max(1e-300));
                if apq.abs() <= eps * (app * aqq).sqrt() {
                    continue;
                }
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let xp = w.get(i, p);
                    let xq = w.get(i, q);
                    w.set(i, p, c * xp - s * xq);
                    w.set(i, q, s * xp + c * xq);
                }
            }
        }
        if off < eps {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| w.get(i, j).powi(2)).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numeric rank: singular values above `tol`.
pub fn rank(a: &Mat, tol: f64) -> usize {
    singular_values(a).into_iter().filter(|&s| s > tol).count()
}

/// Eigenvalues of a symmetric 2x2 matrix `[[a, b], [b, c]]`, ascending.
pub fn eig2_sym(a: f64, b: f64, c: f64) -> (f64, f64) {
    let tr = a + c;
    let disc = ((a - c) * 0.5).hypot(b);
    (tr * 0.5 - disc, tr * 0.5 + disc)
}

/// Modified Gram-Schmidt orthonormalization of row vectors. Panics if the
/// input is rank-deficient beyond tolerance.
pub fn orthonormalize(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for q in &out {
            let proj: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
            for (wk, qk) in w.iter_mut().zip(q) {
                *wk -= proj * qk;
            }
        }
        // Second pass for numerical orthogonality.
        for q in &out {
            let proj: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
            for (wk, qk) in w.iter_mut().zip(q) {
                *wk -= proj * qk;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(norm > 1e-12, "orthonormalize: dependent input vectors");
        for x in &mut w {
            *x /= norm;
        }
        out.push(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = Mat::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        let x = solve(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_known_matrix() {
        // diag(3, 2) embedded in a rotation: singular values preserved.
        let a = Mat::from_rows(&[vec![3.0, 0.0], vec![0.0, 2.0], vec![0.0, 0.0]]);
        let sv = singular_values(&a);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);

        // Rank-1 outer product.
        let b = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        let sv = singular_values(&b);
        assert!((sv[0] - 5.0).abs() < 1e-12);
        assert!(sv[1].abs() < 1e-12);
        assert_eq!(rank(&b, 1e-9), 1);
    }

    #[test]
    fn wide_matrix_singular_values() {
        let a = Mat::from_rows(&[vec![1.0, 0.0, 0.0, 2.0], vec![0.0, 1.0, 0.0, 0.0]]);
        let sv = singular_values(&a);
        assert_eq!(sv.len(), 2);
        assert!((sv[0] - 5.0f64.sqrt()).abs() < 1e-12);
        assert!((sv[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig2() {
        let (lo, hi) = eig2_sym(2.0, 1.0, 2.0);
        assert!((lo - 1.0).abs() < 1e-12);
        assert!((hi - 3.0).abs() < 1e-12);
    }

    #[test]
    fn gram_schmidt() {
        let q = orthonormalize(&[vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0]]);
        let dot: f64 = q[0].iter().zip(&q[1]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-14);
        for v in &q {
            let n: f64 = v.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-14);
        }
    }
}
