//! Grassmann angles between real and complex subspaces.
//!
//! The crate computes the (asymmetric) Grassmann angle `Θ_{V,W}`, defined by
//! how much the volume of a blade representing `V` contracts under
//! orthogonal projection onto `W`, together with the complementary angle
//! `Θ⊥_{V,W} = Θ_{V,W⊥}`, principal angles, and the oriented angle of two
//! blades. Every angle is available through more than one route (projected
//! blades, Gram-determinant formulas on arbitrary bases, products of
//! principal cosines or sines) so the routes can check each other.
//!
//! [`identities`] turns the known Pythagorean-type identities for these
//! angles into executable residual checks over seeded random instances.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod angles;
pub mod error;
pub mod exterior;
pub mod identities;
pub mod linalg;
pub mod matrix;
pub mod multiindex;
pub mod sampling;
pub mod scalar;
pub mod subspace;
pub mod svd;

pub use angles::{AngleReport, Method};
pub use error::{Error, Result};
pub use exterior::{Blade, CoordinateBladeSet};
pub use identities::{IdentityCheck, Suite};
pub use linalg::Tolerance;
pub use matrix::Matrix;
pub use multiindex::{multi_indices, MultiIndex};
pub use num_complex::Complex64;
pub use sampling::Sampler;
pub use scalar::{Field, Scalar};
pub use subspace::{Partition, PrincipalDecomposition, Subspace};
