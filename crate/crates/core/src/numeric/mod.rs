//! Arbitrary-precision numerics: complex arithmetic and modular functions.

mod complex;
pub mod modular;

pub use complex::{
    bigfloat_from_bigint, bigfloat_from_rational, bigfloat_to_f64, bigfloat_trunc_to_bigint,
    bits_for_digits, format_bigfloat, pi, unit_root, BigComplex,
};
pub use modular::{eta, j_invariant, r_function, r_vector, t_n_value};
