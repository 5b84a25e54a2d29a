//! Dense two-phase simplex for small equality-form linear programs:
//! maximize c.x subject to A x = b, x >= 0. Bland's rule, so no cycling.
//! Problem sizes here are at most ~50 variables and ~45 constraints.

const EPS: f64 = 1e-11;

pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    m: usize,
    n: usize,
    /// (m+1) x (n+1): constraint rows then objective row; last column rhs.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= piv;
        }
        for r in 0..=self.m {
            if r == row {
                continue;
            }
            let factor = self.t[r][col];
            if factor == 0.0 {
                continue;
            }
            for k in 0..=self.n {
                let delta = factor * self.t[row][k];
                self.t[r][k] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Entering variable by largest reduced gain (Dantzig), falling back to
    /// Bland's lowest-index rule when the objective stalls, which breaks
    /// degenerate cycles. Leaving row by the ratio test; among rows within a
    /// relative whisker of the minimum ratio, the largest pivot element wins,
    /// which keeps the basis numerically sane.
    fn run(&mut self, active_cols: usize) -> Result<(), String> {
        let mut stall = 0usize;
        let mut last_obj = f64::INFINITY;
        for _ in 0..200_000 {
            let bland = stall > 500;
            let mut entering = None;
            let mut best = EPS;
            for j in 0..active_cols {
                if self.t[self.m][j] > best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = self.t[self.m][j];
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };
            let mut min_ratio = f64::INFINITY;
            for r in 0..self.m {
                if self.t[r][col] > EPS {
                    min_ratio = min_ratio.min(self.t[r][self.n] / self.t[r][col]);
                }
            }
            if !min_ratio.is_finite() {
                return Err("unbounded linear program".into());
            }
            let whisker = min_ratio.abs() * 1e-9 + 1e-12;
            let mut row_best: Option<(usize, f64)> = None;
            for r in 0..self.m {
                if self.t[r][col] > EPS {
                    let ratio = self.t[r][self.n] / self.t[r][col];
                    if ratio <= min_ratio + whisker {
                        let better = match row_best {
                            None => true,
                            Some((br, bp)) => {
                                if bland {
                                    self.basis[r] < self.basis[br]
                                } else {
                                    self.t[r][col] > bp
                                }
                            }
                        };
                        if better {
                            row_best = Some((r, self.t[r][col]));
                        }
                    }
                }
            }
            let (row, _) = row_best.expect("a row attains the minimum ratio");
            self.pivot(row, col);
            let obj = self.t[self.m][self.n];
            if (last_obj - obj).abs() <= 1e-14 {
                stall += 1;
            } else {
                stall = 0;
            }
            last_obj = obj;
        }
        Err("simplex iteration limit".into())
    }

    /// Sum of the values of basic artificial variables (columns >= `n`).
    fn artificial_mass(&self, n: usize) -> f64 {
        (0..self.m)
            .filter(|&r| self.basis[r] >= n)
            .map(|r| self.t[r][self.n].max(0.0))
            .sum()
    }
}

/// Solves `max c.x : A x = b, x >= 0` where `a` is row-major m x n.
pub fn solve_eq_lp(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpSolution, String> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    for row in a {
        assert_eq!(row.len(), n);
    }

    // Phase 1: artificial basis, minimize the artificial sum.
    let total = n + m;
    let mut t = vec![vec![0.0; total + 1]; m + 1];
    for r in 0..m {
        let flip = if b[r] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[r][j] = flip * a[r][j];
        }
        t[r][n + r] = 1.0;
        t[r][total] = flip * b[r];
    }
    // Objective row: maximize -(sum of artificials) expressed in nonbasic
    // terms: row = sum of constraint rows over the structural columns.
    for j in 0..=total {
        if (n..total).contains(&j) {
            continue;
        }
        let mut s = 0.0;
        for r in 0..m {
            s += t[r][j];
        }
        t[m][j] = s;
    }
    let mut tab = Tableau {
        m,
        n: total,
        t,
        basis: (n..total).collect(),
    };
    tab.run(n)?;
    let infeas: f64 = tab.artificial_mass(n);
    if infeas > 1e-7 {
        return Err(format!("infeasible (phase-1 residual {infeas:.3e})"));
    }
    // Drive leftover artificial variables out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| tab.t[r][j].abs() > 1e-9) {
                tab.pivot(r, col);
            }
        }
    }

    // Phase 2: real objective expressed through the current basis.
    for v in tab.t[m].iter_mut() {
        *v = 0.0;
    }
    tab.t[m][..n].copy_from_slice(c);
    for r in 0..m {
        let bj = tab.basis[r];
        if bj < n && c[bj] != 0.0 {
            let factor = c[bj];
            for k in 0..=tab.n {
                let delta = factor * tab.t[r][k];
                tab.t[m][k] -= delta;
            }
        }
    }
    tab.run(n)?;

    let mut x = vec![0.0; n];
    for r in 0..m {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.t[r][tab.n];
        }
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_bounded_lp() {
        // max x + y : x + y + s = 1; x, y, s >= 0 -> objective 1.
        let a = vec![vec![1.0, 1.0, 1.0]];
        let b = vec![1.0];
        let c = vec![1.0, 1.0, 0.0];
        let sol = solve_eq_lp(&a, &b, &c).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_like_lp() {
        // max t : x1 - t >= 0, x2 - t >= 0, x1 + x2 = 1
        // as equalities with slacks: x1 - t - s1 = 0; x2 - t - s2 = 0.
        let a = vec![
            vec![1.0, 0.0, -1.0, -1.0, 0.0],
            vec![0.0, 1.0, -1.0, 0.0, -1.0],
            vec![1.0, 1.0, 0.0, 0.0, 0.0],
        ];
        let b = vec![0.0, 0.0, 1.0];
        let c = vec![0.0, 0.0, 1.0, 0.0, 0.0];
        let sol = solve_eq_lp(&a, &b, &c).unwrap();
        assert!((sol.objective - 0.5).abs() < 1e-9, "t = {}", sol.objective);
        assert!((sol.x[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible() {
        // x = -1, x >= 0.
        let a = vec![vec![1.0]];
        let b = vec![-1.0];
        let c = vec![0.0];
        assert!(solve_eq_lp(&a, &b, &c).is_err());
    }

    #[test]
    fn detects_unbounded() {
        // max x - y : x - y = free direction... x - y + 0 s = 0, maximize x.
        let a = vec![vec![1.0, -1.0]];
        let b = vec![0.0];
        let c = vec![1.0, 0.0];
        assert!(solve_eq_lp(&a, &b, &c).is_err());
    }
}
