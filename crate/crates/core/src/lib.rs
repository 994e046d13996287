//! Polynomials with nonnegative coefficients that are identically one on the
//! hyperplane `x1 + ... + xn = 1`: membership, constructions, pullbacks to two
//! variables, degree bounds, and exhaustive minimal-support search.

pub mod bounds;
pub mod classes;
pub mod constructions;
pub mod error;
pub mod lp;
pub mod poly;
pub mod pullback;
pub mod registry;
pub mod search;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Rational};
