//! Exact and p-adic computation with λ-Euler (Apostol–Euler) numbers,
//! their character twists, the λ-zeta and λ-l-functions, and fermionic
//! p-adic integrals.
//!
//! Exact routines are generic over [`field::Field`]; the aliases below name
//! the concrete scalar types used throughout.

pub mod apostol;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod integral;
pub mod padic;
pub mod rational;
pub mod series;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};

/// Arbitrary-precision rational, the coefficient field of exact computation.
pub type Rational = num_rational::BigRational;

/// Double-precision complex value used by the archimedean routines.
pub type ComplexValue = num_complex::Complex<f64>;

pub type RationalSeries = series::TruncatedSeries<Rational>;
