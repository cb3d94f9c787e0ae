//! Pieces of the `tnpoly` front-end that are worth testing without spawning
//! the binary: the JSON record and the range helper.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tn_core::classpoly::PolyResult;
use tn_core::{ramanujan_polynomial, Result};

/// Environment variable that overrides the default working precision.
pub const PREC_ENV: &str = "TN_PREC";
pub const DEFAULT_PREC: u32 = 120;

/// One polynomial as printed with `--format json`. `n` is absent for
/// Hilbert class polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub n: Option<i64>,
    pub discriminant: i64,
    pub class_number: usize,
    /// Ascending powers, as decimal strings.
    pub coefficients: Vec<String>,
    pub precision_digits: u32,
    pub max_residual: f64,
}

impl PolyRecord {
    pub fn new(n: Option<i64>, discriminant: i64, r: &PolyResult) -> Self {
        PolyRecord {
            n,
            discriminant,
            class_number: r.class_number(),
            coefficients: r
                .polynomial
                .coefficients()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            precision_digits: r.precision_digits,
            max_residual: r.max_residual,
        }
    }
}

/// All n ≡ 11 mod 24 with from ≤ n ≤ to.
pub fn range_values(from: i64, to: i64) -> Vec<i64> {
    let first = from + (11 - from).rem_euclid(24);
    (first..=to).step_by(24).filter(|&n| n > 0).collect()
}

/// p_n for every n in the range, computed concurrently, returned in order.
pub fn compute_range(from: i64, to: i64, digits: u32) -> Result<Vec<(i64, PolyResult)>> {
    range_values(from, to)
        .into_par_iter()
        .map(|n| ramanujan_polynomial(n, digits).map(|r| (n, r)))
        .collect()
}
