//! Exact Tanaka prolongation of quadric CR models.
//!
//! Given Hermitian forms `H_1..H_k` defining `Im w_j = z H_j z*`, the crate builds
//! the graded Lie algebra `g_{-2} ⊕ g_{-1}`, prolongs it degree by degree over
//! exact rationals, realizes every graded piece as weighted-homogeneous
//! holomorphic polynomial vector fields and certifies tangency symbolically.

pub mod catalog;
pub mod error;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod prolong;
pub mod realize;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use model::{build_levi_tanaka, validate, LeviTanakaAlgebra, QuadricModel, ValidationReport};
pub use poly::{Poly, PolyVectorField, VarSpace};
pub use prolong::{prolong_full, GradedLieAlgebra, ProlongationResult};
pub use scalar::{GaussianRational, Rational};
