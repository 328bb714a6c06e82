//! Arithmetic in GF(p^m) and dense exact linear algebra.
//!
//! Everything above this layer (hom spaces, idempotents, decompositions) is
//! reduced to Gaussian elimination and polynomial factorisation here.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, splitting_degree, Field, Scalar, MAX_ORDER};
pub use matrix::{EchelonBasis, Insert, Matrix, Solution};
pub use poly::Poly;
