//! Exact linear algebra over a prime field.

mod affine;
mod jordan;
mod matrix;
mod subspace;

pub use affine::{affine_system, solve_affine, AffineSpace};
pub use jordan::{jordan_type, quotient_jordan_type};
pub use matrix::{dot, vec_add, vec_scale, Echelon, Matrix};
pub use subspace::Subspace;
