//! Relative Steiner polynomials `f_{K;E}(z) = vol(K + zE)`.
//!
//! A nonnegative sequence is the coefficient sequence of such a polynomial
//! exactly when its support is an interval and it is ultra-logconcave. The
//! crate decides this ([`ulc`]), realizes accepted sequences by a pair of
//! simplices ([`realize`]), locates roots ([`poly`]) and studies the cone
//! spanned by roots of Steiner polynomials ([`cone`]).

pub mod cone;
pub mod error;
pub mod poly;
pub mod realize;
pub mod scalar;
pub mod ulc;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use scalar::{parse_rational, Scalar, Tolerance};
pub use ulc::{CoeffSequence, QuermassTuple, SteinerDims};
