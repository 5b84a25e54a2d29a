//! Double-lattice packing toolkit.
//!
//! A double lattice is the isometry group generated by a lattice of
//! translations together with point inversions. This crate provides:
//!
//! - [`field`]: exact arithmetic in Q(cos pi/7, sin pi/7), the number field
//!   where every regular-heptagon constant lives;
//! - [`geom2d`]: planar convex-body machinery — affine diameters, half-length
//!   parallelograms, the density `A / 2 Delta(K)`, explicit double-lattice
//!   construction and admissibility checking;
//! - [`cert`]: machine verification of the finite computational certificate
//!   that the regular heptagon is a local minimum of the double-lattice
//!   packing density among convex domains;
//! - [`ball3d`]: the three-dimensional apparatus around the unit ball — mean
//!   width, h.c.p. contact frame, perturbed double lattices, exact Legendre
//!   coefficients of the contact measure, zonal convolution, and the Steiner
//!   volume bound.

// Numeric kernels here use explicit index loops over small fixed-size
// matrices; iterator rewrites obscure the row/column structure.
#![allow(clippy::needless_range_loop)]

pub mod ball3d;
pub mod cert;
pub mod consts;
pub mod field;
pub mod geom2d;
pub mod linalg;
