//! Central numeric tolerances. Every geometric predicate and refinement loop
//! reads from here; nothing else hardcodes a threshold.

/// Angular refinement tolerance for the direction sweep minimizer.
pub const THETA_REFINE_TOL: f64 = 1e-12;

/// Tolerance for geometric predicates (convexity crosses, on-boundary tests,
/// parallelogram validation).
pub const GEOM_TOL: f64 = 1e-9;

/// Default number of coarse sweep samples in the direction minimizer.
pub const SWEEP_SAMPLES: usize = 2048;

/// Interior-disjointness slack when verifying packings: overlap areas below
/// this are contact, not overlap.
pub const OVERLAP_TOL: f64 = 1e-10;

/// Tolerance for treating collinear vertices as degenerate during polygon
/// canonicalization, relative to the polygon scale.
pub const COLLINEAR_TOL: f64 = 1e-12;
