//! Minimal polynomials of Ramanujan's class invariants
//! t_n = √3·R₂((−1 + i√n)/2), n ≡ 11 mod 24, computed through Shimura
//! reciprocity on a six-dimensional space of eta quotients of level 72,
//! together with Hilbert class polynomials for cross-checking.

pub mod classpoly;
pub mod cyclo;
pub mod error;
pub mod numeric;
pub mod quadform;
pub mod rep;
pub mod selftest;
pub mod sl2;

pub use classpoly::{hilbert_polynomial, ramanujan_polynomial, IntPolynomial, PolyResult};
pub use cyclo::CycNum;
pub use error::{Error, Result};
pub use numeric::BigComplex;
pub use quadform::QuadForm;
pub use rep::{FunctionVector, RepMatrix};
pub use sl2::{Mat2, STWord};
