//! The individual certificate checks and the assembled report.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::FieldElement;
use crate::geom2d::{self, ConvexPolygon};
use crate::linalg::{self, Mat};

use super::consts::W_COORDS;
use super::fd;
use super::geometry::{self, heptagon_vertices, phi, phi2, psi};
use super::simplex;
use super::tables::{Tables, DIM_X, DIM_XP};
use super::CertError;

/// One verified claim: name, status, measured residual, tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, residual: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            residual,
            tolerance,
            detail,
        }
    }
}

/// Structured pass/fail evidence for every verified claim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    pub checks: Vec<CheckResult>,
}

impl CertificateReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

impl std::fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:24} residual {:>12.3e}  tol {:>9.1e}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Exact check: the table data is well-formed and the Hessian block is
/// exactly symmetric.
pub fn check_tables() -> CheckResult {
    let t = Tables::get();
    match Tables::validate(&t.file) {
        Ok(()) => CheckResult::new(
            "tables",
            true,
            0.0,
            0.0,
            "transcription well-formed; Hessian exactly symmetric".into(),
        ),
        Err(e) => CheckResult::new("tables", false, 1.0, 0.0, e.to_string()),
    }
}

/// Exact check: `sum_i f_i = 0` coefficient-wise in the field.
pub fn check_null_sum() -> CheckResult {
    check_null_sum_of(Tables::get())
}

pub fn check_null_sum_of(t: &Tables) -> CheckResult {
    let mut sum = vec![FieldElement::zero(); DIM_X];
    for i in 0..7 {
        for (k, v) in t.f(i).into_iter().enumerate() {
            sum[k] = &sum[k] + &v;
        }
    }
    let zero = sum.iter().all(FieldElement::is_zero);
    // On failure, report the numeric size of the violation.
    let residual = if zero {
        0.0
    } else {
        sum.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    };
    CheckResult::new(
        "null-sum",
        zero,
        residual,
        0.0,
        "sum over i of f_i vanishes exactly (positive combination with unit weights)".into(),
    )
}

/// Report for the solution-space check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionSpaceReport {
    pub exact_orthogonal: bool,
    pub unit_components: bool,
    pub singular_values: Vec<f64>,
    pub rank_on_w: usize,
}

/// Exact and numeric check of the solution space of `<f_i, x> = 0` inside W:
/// `<f_i, u_j> = 0` exactly for all i, j, and the stacked `f_i` restricted to
/// W have numeric rank 6 (so the solution space is exactly two-dimensional).
pub fn check_solution_space() -> SolutionSpaceReport {
    check_solution_space_of(Tables::get())
}

pub fn check_solution_space_of(t: &Tables) -> SolutionSpaceReport {
    let mut exact = true;
    for i in 0..7 {
        let fi = t.f(i);
        for u in [&t.file.u1, &t.file.u2] {
            let mut dot = FieldElement::zero();
            for k in 0..DIM_X {
                dot = &dot + &fi[k].mul(&u[k]);
            }
            exact &= dot.is_zero();
        }
    }
    let unit_components = (&t.file.u1[13] - &FieldElement::one()).is_zero()
        && (&t.file.u2[12] - &FieldElement::one()).is_zero();

    let rows: Vec<Vec<f64>> = (0..7)
        .map(|i| {
            let fi = t.f_num(i);
            W_COORDS.iter().map(|&k| fi[k]).collect()
        })
        .collect();
    let sv = linalg::singular_values(&Mat::from_rows(&rows));
    let rank = sv.iter().filter(|&&s| s > 1e-3).count();
    SolutionSpaceReport {
        exact_orthogonal: exact,
        unit_components,
        singular_values: sv,
        rank_on_w: rank,
    }
}

impl SolutionSpaceReport {
    pub fn passed(&self) -> bool {
        self.exact_orthogonal
            && self.unit_components
            && self.rank_on_w == 6
            && self.singular_values.len() == 7
            && self.singular_values[6] < 1e-12
    }

    pub fn to_check(&self) -> CheckResult {
        CheckResult::new(
            "solution-space",
            self.passed(),
            self.singular_values.last().copied().unwrap_or(f64::NAN),
            1e-12,
            format!(
                "<f_i, u_j> = 0 exactly: {}; rank of f|W = {} (want 6); sv {:.3e} .. {:.3e}",
                self.exact_orthogonal,
                self.rank_on_w,
                self.singular_values.first().unwrap_or(&f64::NAN),
                self.singular_values.last().unwrap_or(&f64::NAN),
            ),
        )
    }
}

/// Worst relative error between a finite-difference vector and a table
/// vector. Entries below `abs_floor` are compared absolutely.
fn worst_error(fd: &[f64], table: &[f64], abs_floor: f64) -> f64 {
    fd.iter()
        .zip(table)
        .map(|(&d, &t)| {
            if t.abs() > abs_floor {
                ((d - t) / t).abs()
            } else {
                (d - t).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Finite-difference gradient of `phi_i` against the tabulated `f_i`.
/// Central differences at steps 1e-3 and 5e-4 with one Richardson level.
pub fn check_gradient(i: usize) -> f64 {
    let t = Tables::get();
    let f = move |x: &[f64]| {
        let mut buf = [0.0; DIM_X];
        buf.copy_from_slice(x);
        phi(i, &buf).expect("phi evaluates at finite-difference scale")
    };
    let grad = fd::gradient_smooth(&f, &[0.0; DIM_X], 1e-3);
    worst_error(&grad, &t.f_num(i), 1e-8)
}

/// Finite-difference Hessian of `phi_i` against the tabulated `F_i`:
/// relative on entries above 1e-6, absolute below.
pub fn check_hessian(i: usize) -> f64 {
    let t = Tables::get();
    let f = move |x: &[f64]| {
        let mut buf = [0.0; DIM_X];
        buf.copy_from_slice(x);
        phi(i, &buf).expect("phi evaluates at finite-difference scale")
    };
    let hess = fd::hessian(&f, &[0.0; DIM_X], 1e-3);
    let table = t.hessian_num(i);
    let mut worst: f64 = 0.0;
    for r in 0..DIM_X {
        worst = worst.max(worst_error(&hess[r], &table[r], 1e-6));
    }
    worst
}

/// Gradient summary across all seven functionals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientReport {
    pub per_i: Vec<f64>,
    pub max_error: f64,
}

pub fn check_gradient_all() -> GradientReport {
    let per_i: Vec<f64> = (0..7).map(check_gradient).collect();
    let max_error = per_i.iter().copied().fold(0.0, f64::max);
    GradientReport { per_i, max_error }
}

pub fn check_hessian_all() -> GradientReport {
    let per_i: Vec<f64> = (0..7).map(check_hessian).collect();
    let max_error = per_i.iter().copied().fold(0.0, f64::max);
    GradientReport { per_i, max_error }
}

/// Minimum eigenvalue over i of the projected Hessian `P F_i P` restricted to
/// the image of P (the span of the orthonormalized u_1, u_2).
pub fn check_positive_definite() -> (f64, Vec<f64>) {
    let t = Tables::get();
    let basis = linalg::orthonormalize(&[t.u1_num.clone(), t.u2_num.clone()]);
    let mut per_i = Vec::with_capacity(7);
    for i in 0..7 {
        let h = t.hessian_num(i);
        // 2x2 restriction: B^T H B.
        let mut m = [[0.0; 2]; 2];
        for (r, br) in basis.iter().enumerate() {
            for (c, bc) in basis.iter().enumerate() {
                let mut acc = 0.0;
                for p in 0..DIM_X {
                    for q in 0..DIM_X {
                        acc += br[p] * h[p][q] * bc[q];
                    }
                }
                m[r][c] = acc;
            }
        }
        let (lo, _) = linalg::eig2_sym(m[0][0], 0.5 * (m[0][1] + m[1][0]), m[1][1]);
        per_i.push(lo);
    }
    let min = per_i.iter().copied().fold(f64::INFINITY, f64::min);
    (min, per_i)
}

/// Finite-difference gradients of the constraint functionals `psi_j` in the
/// boundary coordinates at the origin, against the tabulated `g_j'`.
pub fn check_psi_gradients() -> f64 {
    let t = Tables::get();
    let mut worst: f64 = 0.0;
    for j in 1..=DIM_XP {
        let f = move |xp: &[f64]| {
            let mut buf = [0.0; DIM_XP];
            buf.copy_from_slice(xp);
            psi(j, &[0.0; DIM_X], &buf).expect("psi evaluates at finite-difference scale")
        };
        let grad = fd::gradient_kinked(&f, &[0.0; DIM_XP], 1e-4);
        worst = worst.max(worst_error(&grad, &t.g_num(j), 1e-8));
    }
    worst
}

/// Finite-difference gradients of `phi2_i` in the boundary coordinates at
/// the origin, against the tabulated `f_i'`.
pub fn check_phi2_gradient() -> f64 {
    let t = Tables::get();
    let mut worst: f64 = 0.0;
    for i in 0..7 {
        let f = move |xp: &[f64]| {
            let mut buf = [0.0; DIM_XP];
            buf.copy_from_slice(xp);
            phi2(i, &[0.0; DIM_X], &buf).expect("phi2 evaluates at finite-difference scale")
        };
        let grad = fd::gradient_kinked(&f, &[0.0; DIM_XP], 1e-4);
        worst = worst.max(worst_error(&grad, &t.fp_num(i), 1e-8));
    }
    worst
}

/// A strictly positive Farkas combination: `sum_i c_i f_i' = sum_j d_j g_j'`
/// with `|c|_1 + |d|_1 = 1`, found by maximizing the minimum coefficient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    /// Minimum coefficient after normalization.
    pub mu: f64,
    /// Euclidean norm of `sum c_i f_i' - sum d_j g_j'`.
    pub residual: f64,
    /// Residual and minimum coefficient after symmetrizing over the 7-fold
    /// cyclic index action.
    pub symmetrized_residual: f64,
    pub symmetrized_mu: f64,
}

fn certificate_residual(t: &Tables, c: &[f64], d: &[f64]) -> f64 {
    let mut r = vec![0.0; DIM_XP];
    for i in 0..7 {
        let fi = t.fp_num(i);
        for k in 0..DIM_XP {
            r[k] += c[i] * fi[k];
        }
    }
    for j in 1..=DIM_XP {
        let gj = t.g_num(j);
        for k in 0..DIM_XP {
            r[k] -= d[j - 1] * gj[k];
        }
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn farkas_certificate() -> Result<FarkasCertificate, CertError> {
    let t = Tables::get();
    // Variables: s_0..s_6, t_1..t_42, mu; c_i = mu + s_i, d_j = mu + t_j.
    let n = 7 + DIM_XP + 1;
    let mu_col = n - 1;
    let mut a = vec![vec![0.0; n]; DIM_XP + 1];
    for i in 0..7 {
        let fi = t.fp_num(i);
        for (r, row) in a.iter_mut().enumerate().take(DIM_XP) {
            row[i] += fi[r];
            row[mu_col] += fi[r];
        }
    }
    for j in 1..=DIM_XP {
        let gj = t.g_num(j);
        for (r, row) in a.iter_mut().enumerate().take(DIM_XP) {
            row[7 + j - 1] -= gj[r];
            row[mu_col] -= gj[r];
        }
    }
    for j in 0..(n - 1) {
        a[DIM_XP][j] = 1.0;
    }
    a[DIM_XP][mu_col] = 49.0;
    let mut b = vec![0.0; DIM_XP + 1];
    b[DIM_XP] = 1.0;
    let mut c_obj = vec![0.0; n];
    c_obj[mu_col] = 1.0;

    let sol = simplex::solve_eq_lp(&a, &b, &c_obj).map_err(CertError::Infeasible)?;
    let mu_lp = sol.objective;
    let mut c: Vec<f64> = (0..7).map(|i| mu_lp + sol.x[i]).collect();
    let mut d: Vec<f64> = (0..DIM_XP).map(|j| mu_lp + sol.x[7 + j]).collect();

    // Least-squares polish onto the exact equality manifold: one Newton step
    // of the projection, which brings the residual to rounding level.
    polish(t, &mut c, &mut d);
    let total: f64 = c.iter().sum::<f64>() + d.iter().sum::<f64>();
    for v in c.iter_mut().chain(d.iter_mut()) {
        *v /= total;
    }
    let residual = certificate_residual(t, &c, &d);
    let mu = c
        .iter()
        .chain(d.iter())
        .copied()
        .fold(f64::INFINITY, f64::min);
    if mu <= 0.0 {
        return Err(CertError::Infeasible(format!(
            "solver returned a nonpositive coefficient ({mu:.3e})"
        )));
    }

    // Symmetrize: average c over the cycle and d over the slots within each
    // family; the tables are equivariant, so feasibility must survive.
    let c_mean = c.iter().sum::<f64>() / 7.0;
    let cs = vec![c_mean; 7];
    let mut ds = vec![0.0; DIM_XP];
    for fam in 0..6 {
        let mean: f64 = (0..7).map(|s| d[fam * 7 + s]).sum::<f64>() / 7.0;
        for s in 0..7 {
            ds[fam * 7 + s] = mean;
        }
    }
    let symmetrized_residual = certificate_residual(t, &cs, &ds);
    let symmetrized_mu = cs
        .iter()
        .chain(ds.iter())
        .copied()
        .fold(f64::INFINITY, f64::min);

    Ok(FarkasCertificate {
        c,
        d,
        mu,
        residual,
        symmetrized_residual,
        symmetrized_mu,
    })
}

/// Projects (c, d) onto the affine manifold `{sum c f' - sum d g' = 0}` by a
/// least-squares correction (the normalization row is rescaled afterwards).
fn polish(t: &Tables, c: &mut [f64], d: &mut [f64]) {
    let n = 7 + DIM_XP;
    let mut a = Mat::zeros(DIM_XP, n);
    for i in 0..7 {
        let fi = t.fp_num(i);
        for r in 0..DIM_XP {
            a.set(r, i, fi[r]);
        }
    }
    for j in 1..=DIM_XP {
        let gj = t.g_num(j);
        for r in 0..DIM_XP {
            a.set(r, 7 + j - 1, -gj[r]);
        }
    }
    let z: Vec<f64> = c.iter().chain(d.iter()).copied().collect();
    // r = A z; delta = A^T (A A^T)^{-1} r; z <- z - delta.
    let mut r = vec![0.0; DIM_XP];
    for (i, ri) in r.iter_mut().enumerate() {
        for (j, &zj) in z.iter().enumerate() {
            *ri += a.get(i, j) * zj;
        }
    }
    let mut gram = Mat::zeros(DIM_XP, DIM_XP);
    for i in 0..DIM_XP {
        for j in 0..DIM_XP {
            let mut acc = 0.0;
            for k in 0..n {
                acc += a.get(i, k) * a.get(j, k);
            }
            gram.set(i, j, acc);
        }
    }
    if let Some(lambda) = linalg::solve(&gram, &r) {
        for (j, zj) in z.iter().enumerate() {
            let mut corr = 0.0;
            for (i, li) in lambda.iter().enumerate() {
                corr += a.get(i, j) * li;
            }
            let val = zj - corr;
            if j < 7 {
                c[j] = val;
            } else {
                d[j - 7] = val;
            }
        }
    }
}

/// Triviality of the constraint cone: the stacked `f'` and `g'` rows span all
/// of R^42, so the only boundary perturbation satisfying every constraint
/// with equality is zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeTriviality {
    pub rank: usize,
    pub smallest_sv: f64,
    pub f_only_rank: usize,
}

pub fn check_cone_triviality() -> ConeTriviality {
    let t = Tables::get();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(49);
    for i in 0..7 {
        rows.push(t.fp_num(i));
    }
    for j in 1..=DIM_XP {
        rows.push(t.g_num(j));
    }
    for row in rows.iter_mut() {
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        for v in row.iter_mut() {
            *v /= norm;
        }
    }
    let sv = linalg::singular_values(&Mat::from_rows(&rows));
    let rank = sv.iter().filter(|&&s| s > 1e-8).count();
    let smallest_sv = sv.last().copied().unwrap_or(0.0);

    let f_rows: Vec<Vec<f64>> = (0..7).map(|i| t.fp_num(i)).collect();
    let f_only_rank = linalg::rank(&Mat::from_rows(&f_rows), 1e-8);
    ConeTriviality {
        rank,
        smallest_sv,
        f_only_rank,
    }
}

/// Local-minimality probe report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalProbeReport {
    pub samples: usize,
    /// Minimum of density(M') - density(M) over the probes.
    pub min_excess: f64,
    pub violations: usize,
}

/// Probes random vertex perturbations in the gauge subspace W, with the
/// affine directions span{u1, u2} projected out and norm fixed to `scale`,
/// and verifies the full geometric density never drops below the heptagon
/// density (within 1e-12). Deterministic for a fixed seed.
pub fn local_min_probe(seed: u64, samples: usize, scale: f64) -> LocalProbeReport {
    let t = Tables::get();
    let basis = linalg::orthonormalize(&[t.u1_num.clone(), t.u2_num.clone()]);
    let exact_density = geometry::num_consts().density;
    let mut rng = geom2d::random::rng(seed);
    let mut min_excess = f64::INFINITY;
    let mut violations = 0usize;
    for _ in 0..samples {
        let mut x = [0.0; DIM_X];
        loop {
            for &k in &W_COORDS {
                x[k] = rng.random_range(-1.0..1.0);
            }
            // Project out the affine directions.
            for q in &basis {
                let dot: f64 = (0..DIM_X).map(|k| x[k] * q[k]).sum();
                for k in 0..DIM_X {
                    x[k] -= dot * q[k];
                }
            }
            let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1e-3 {
                for v in x.iter_mut() {
                    *v *= scale / norm;
                }
                break;
            }
        }
        let verts = heptagon_vertices(&x);
        let poly = ConvexPolygon::new(verts.to_vec()).expect("probe perturbation stays convex");
        let density = geom2d::density_with_samples(&poly, 512).density;
        let excess = density - exact_density;
        min_excess = min_excess.min(excess);
        if excess < -1e-12 {
            violations += 1;
        }
    }
    LocalProbeReport {
        samples,
        min_excess,
        violations,
    }
}

/// The names of all certificate checks, in report order.
pub const CHECK_NAMES: [&str; 10] = [
    "tables",
    "null-sum",
    "solution-space",
    "gradient-fidelity",
    "hessian-fidelity",
    "positive-definite",
    "psi-gradient",
    "phi2-gradient",
    "farkas",
    "cone-triviality",
];

/// Runs every check once and assembles the report.
pub fn certificate_report(probe_samples: usize, probe_seed: u64) -> CertificateReport {
    certificate_report_filtered(|_| true, probe_samples, probe_seed)
}

/// Runs the selected checks (by name, including "local-probe") and
/// assembles the report. Unknown names are ignored by the filter contract.
pub fn certificate_report_filtered(
    want: impl Fn(&str) -> bool,
    probe_samples: usize,
    probe_seed: u64,
) -> CertificateReport {
    let mut checks = Vec::new();
    if want("tables") {
        checks.push(check_tables());
    }
    if want("null-sum") {
        checks.push(check_null_sum());
    }
    if want("solution-space") {
        checks.push(check_solution_space().to_check());
    }

    if want("gradient-fidelity") {
        let grad = check_gradient_all();
        checks.push(CheckResult::new(
            "gradient-fidelity",
            grad.max_error <= 1e-6,
            grad.max_error,
            1e-6,
            format!(
                "plain vertex convention m_i' = R^i(1+x_i, y_i) fixed by this match; worst over i: {:?}",
                grad.per_i.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>()
            ),
        ));
    }
    if want("hessian-fidelity") {
        let hess = check_hessian_all();
        checks.push(CheckResult::new(
            "hessian-fidelity",
            hess.max_error <= 1e-4,
            hess.max_error,
            1e-4,
            "finite-difference Hessians of phi_i vs F_i".into(),
        ));
    }

    if want("positive-definite") {
        let (min_eig, per_i) = check_positive_definite();
        checks.push(CheckResult::new(
            "positive-definite",
            min_eig > 0.0,
            min_eig,
            0.0,
            format!(
                "min eigenvalue of P F_i P on image(P); per i: {:?}",
                per_i.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>()
            ),
        ));
    }

    if want("psi-gradient") {
        let psi_err = check_psi_gradients();
        checks.push(CheckResult::new(
            "psi-gradient",
            psi_err <= 1e-6,
            psi_err,
            1e-6,
            "finite differences of psi_j vs g_j' (edge offset 3 fixed by this match)".into(),
        ));
    }
    if want("phi2-gradient") {
        let phi2_err = check_phi2_gradient();
        checks.push(CheckResult::new(
            "phi2-gradient",
            phi2_err <= 1e-6,
            phi2_err,
            1e-6,
            "finite differences of phi2_i vs f_i'; foot offsets R^i(x', v y') fixed by this match"
                .into(),
        ));
    }

    if want("farkas") {
        match farkas_certificate() {
            Ok(cert) => {
                let passed =
                    cert.residual <= 1e-10 && cert.mu > 0.0 && cert.symmetrized_mu > 0.0;
                checks.push(CheckResult::new(
                    "farkas",
                    passed,
                    cert.residual,
                    1e-10,
                    format!(
                        "min coefficient {:.4e}; symmetrized residual {:.3e}, min {:.4e}",
                        cert.mu, cert.symmetrized_residual, cert.symmetrized_mu
                    ),
                ));
            }
            Err(e) => {
                    checks.push(CheckResult::new("farkas", false, 1.0, 1e-10, e.to_string()));
            }
        }
    }

    if want("cone-triviality") {
        let cone = check_cone_triviality();
        checks.push(CheckResult::new(
            "cone-triviality",
            cone.rank == DIM_XP && cone.smallest_sv > 1e-8 && cone.f_only_rank < DIM_XP,
            cone.smallest_sv,
            1e-8,
            format!(
                "stacked f'/g' rank {} (want 42); f' rows alone rank {}",
                cone.rank, cone.f_only_rank
            ),
        ));
    }

    if want("local-probe") {
        let probe = local_min_probe(probe_seed, probe_samples, 1e-3);
        checks.push(CheckResult::new(
            "local-probe",
            probe.violations == 0,
            probe.min_excess,
            -1e-12,
            format!(
                "{} random gauge perturbations at norm 1e-3; min density excess {:.3e}",
                probe.samples, probe.min_excess
            ),
        ));
    }

    CertificateReport { checks }
}
