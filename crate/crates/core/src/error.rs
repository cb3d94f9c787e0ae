use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("not a Galois element: gcd({0}, 72) != 1")]
    NotGaloisElement(i64),

    #[error("form [{a}, {b}, {c}] is not positive definite")]
    NotPositiveDefinite { a: String, b: String, c: String },

    #[error("invalid discriminant {0}: must be negative and congruent to 1 mod 4")]
    InvalidDiscriminant(i64),

    #[error("lemma precondition violated: neither a nor c is invertible mod {0}")]
    LemmaPrecondition(u32),

    #[error("matrix is not in SL2 mod {0}")]
    NotSpecialLinear(u32),

    #[error("determinant {det} is not invertible mod {modulus}")]
    SingularDeterminant { det: i64, modulus: u32 },

    #[error("unsupported modulus {0}")]
    UnsupportedModulus(u32),

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("invalid class {0}: expected 11, 35 or 59")]
    InvalidClass(u32),

    #[error("n must be ≡ 11 mod 24 (got {0})")]
    InvalidN(i64),

    #[error("not in upper half-plane")]
    NotInUpperHalfPlane,

    #[error("precision must be at least {min} digits (got {got})")]
    PrecisionTooLow { got: u32, min: u32 },

    #[error("representation not monomial")]
    NotMonomial,

    #[error("rounding residual {residual:e} exceeds tolerance {tolerance:e} at {digits} digits")]
    RoundingFailed {
        residual: f64,
        tolerance: f64,
        digits: u32,
    },

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
