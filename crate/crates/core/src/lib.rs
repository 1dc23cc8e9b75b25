//! Exact computation of the exotic Robinson–Schensted correspondence.
//!
//! Everything is done over a large prime field `F_p` with exact arithmetic;
//! "generic" points are random field elements drawn from a seeded RNG.

pub mod conormal;
pub mod error;
pub mod field;
pub mod golden;
pub mod linalg;
pub mod orbit;
pub mod partition;
pub mod qprime;
pub mod rng;
pub mod strips;
pub mod symplectic;
pub mod tableau;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, DEFAULT_PRIME};
pub use linalg::{AffineSpace, Matrix, Subspace};
pub use orbit::{OrbitParam, Permutation, RankProfile};
pub use partition::{Bipartition, Partition};
pub use qprime::TaggedPair;
pub use symplectic::{Flag, SymplecticPoint, SymplecticSpace};
pub use tableau::StandardTableau;
