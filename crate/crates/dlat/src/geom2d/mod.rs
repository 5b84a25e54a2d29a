//! Planar convex-body engine: lengths, affine diameters, half-length
//! parallelograms, double-lattice density `A / 2 Delta(K)`, explicit lattice
//! construction, and admissibility verification.

mod density;
mod polygon;
mod profile;
mod vec2;

pub mod builtin;
pub mod random;

pub use density::{
    build_double_lattice, containment_epsilon, delta_min, delta_min_with_samples,
    density_with_samples, double_lattice_density, half_length_parallelogram,
    length_in_direction, packing_copies, parallelogram_from_profile, verify_admissible,
    AdmissibilityReport, DeltaMin, Direction, DoubleLattice2D, HalfLengthParallelogram,
    PackingDensityResult, Segment,
};
pub use polygon::{convex_hull, intersection_area, shoelace, ConvexPolygon};
pub use profile::ChordProfile;
pub use vec2::{vec2, Vec2};

/// Errors from planar geometry operations.
#[derive(Debug, thiserror::Error)]
pub enum GeomError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate direction: body has no extent")]
    DegenerateDirection,
    #[error("origin is not interior to the body")]
    OriginNotInterior,
    #[error("invalid half-length parallelogram: {0}")]
    InvalidParallelogram(String),
}
