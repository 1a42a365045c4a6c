pub mod basis;
pub mod phi;
pub mod presentation;

pub use basis::{BasisTable, GradedAlgebra};
pub use presentation::{AlgebraPresentation, Assertions, Generator, NcPolynomial, Word};
