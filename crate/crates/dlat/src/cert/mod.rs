//! Machine verification of the heptagon local-minimality certificate.
//!
//! The claim: among convex domains near the regular heptagon, none has a
//! smaller double-lattice packing density. Its finite computational content
//! consists of
//!
//! - the tabulated gradients `f_i` and Hessians `F_i` of the seven altitude
//!   functionals `phi_i` over vertex perturbations (checked here against
//!   independent finite differences),
//! - exact linear algebra: `sum_i f_i = 0`, the two-dimensional solution
//!   space spanned by `u_1, u_2` inside the gauge subspace `W`, and positive
//!   definiteness of the projected Hessians,
//! - the boundary-perturbation tables `f_i'`, `g_j'` together with a strictly
//!   positive Farkas combination certifying that the constraint system pins
//!   the boundary data to zero.
//!
//! All table data is exact (see [`tables`]); the geometric functionals are
//! evaluated in floating point and compared by finite differences.

mod checks;
mod fd;
mod geometry;
mod simplex;
pub mod tables;

pub use checks::{
    certificate_report, certificate_report_filtered, check_cone_triviality, check_gradient,
    check_hessian, check_null_sum, check_null_sum_of, check_phi2_gradient,
    check_positive_definite, check_psi_gradients, check_solution_space,
    check_solution_space_of, check_tables, farkas_certificate, local_min_probe,
    CertificateReport, CheckResult, ConeTriviality, FarkasCertificate, GradientReport,
    LocalProbeReport, SolutionSpaceReport, CHECK_NAMES,
};
pub use geometry::{
    hbound, heptagon_vertices, phi, phi2, psi, psi_edge, PerturbationX, PerturbationXPrime,
};
pub use tables::{Tables, TablesFile, DIM_X, DIM_XP};

/// Domain constants of the certificate, re-exported from the exact layer:
/// the side parameters `a`, `b`, the areas `A = 7uv` and
/// `Delta = (-19 + 2u + 56u^2) v / 8`, and the density `A / 2 Delta`.
pub mod consts {
    pub use crate::field::hept::{a, area, b, delta, density, density_from_ratio};

    /// Coordinate indices (0-based) of the gauge subspace W: all vertex
    /// coordinates except `x0, y0, x2, y2, x5, y5`.
    pub const W_COORDS: [usize; 8] = [2, 3, 6, 7, 8, 9, 12, 13];
}

/// Errors from certificate evaluation.
#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("perturbed heptagon is not convex")]
    ConvexityViolated,
    #[error("degenerate certificate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("linear program infeasible: {0}")]
    Infeasible(String),
    #[error("malformed table data: {0}")]
    TableFormat(String),
}
