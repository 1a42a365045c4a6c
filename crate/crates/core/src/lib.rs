//! Exact degree-by-degree invariant theory for connected graded algebras.

pub mod algebra;
pub mod bounds;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod hopf;
pub mod input;
pub mod invariants;
pub mod linalg;
pub mod pipeline;
pub mod series;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Echelon, LinearSolve, SparseVec};
