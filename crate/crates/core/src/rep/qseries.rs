//! Truncated Fourier expansions of the numerators of R, R₁, …, R₅ in
//! x = q^{1/72}, with exact coefficients in Q(ζ₇₂).
//!
//! The common denominator η(τ)² has rational coefficients, so it commutes
//! with every σ_d and can be dropped when checking the Galois action.

use std::collections::BTreeMap;

use super::{RepMatrix, DIM};
use crate::cyclo::CycNum;
use crate::error::Result;

/// Sparse series Σ cₑ xᵉ truncated below `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    bound: u64,
    terms: BTreeMap<u64, CycNum>,
}

impl Series {
    pub fn zero(bound: u64) -> Self {
        Series {
            bound,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, e: u64, c: CycNum) {
        if e >= self.bound || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(CycNum::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: u64) -> CycNum {
        self.terms.get(&e).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.bound.min(other.bound));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Series {
        let mut out = Series::zero(self.bound);
        for (e, x) in &self.terms {
            out.add_term(*e, x * c);
        }
        out
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        out.bound = self.bound.min(other.bound);
        out.terms.retain(|e, _| *e < out.bound);
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Applies σ_d coefficientwise.
    pub fn galois(&self, d: i64) -> Result<Series> {
        let mut out = Series::zero(self.bound);
        for (e, c) in &self.terms {
            out.add_term(*e, c.galois(d)?);
        }
        Ok(out)
    }
}

/// Generalised pentagonal numbers m(3m−1)/2 for m ∈ Z, with sign (−1)ᵐ,
/// up to `limit`.
fn pentagonal(limit: u64) -> Vec<(u64, i64)> {
    let mut out = vec![(0, 1)];
    let mut m: i64 = 1;
    loop {
        let p1 = (m * (3 * m - 1) / 2) as u64;
        let p2 = (m * (3 * m + 1) / 2) as u64;
        if p1 > limit {
            break;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        out.push((p1, sign));
        if p2 <= limit {
            out.push((p2, sign));
        }
        m += 1;
    }
    out
}

/// Expansion of η((τ+k)/3) for k ∈ {0,1,2}, or of η(3τ) for k = 3.
pub fn eta_factor(k: i64, bound: u64) -> Series {
    let mut s = Series::zero(bound);
    if k == 3 {
        for (p, sign) in pentagonal(bound / 216 + 1) {
            s.add_term(9 + 216 * p, CycNum::from_integer(sign));
        }
    } else {
        // e^{2πi(τ+k)/72} = ζᵏ x and q'ᵖ = ζ^{24kp} x^{24p}
        for (p, sign) in pentagonal(bound / 24 + 1) {
            let c = CycNum::root_power(k + 24 * k * p as i64);
            s.add_term(1 + 24 * p, if sign < 0 { -c } else { c });
        }
    }
    s
}

/// The two eta factors of each basis function, 3 standing for η(3τ).
pub const FACTORS: [(i64, i64); DIM] = [(3, 0), (3, 1), (3, 2), (0, 2), (0, 1), (2, 1)];

/// Numerator series of Rᵢ truncated below x^bound.
pub fn r_numerator(i: usize, bound: u64) -> Series {
    let (u, v) = FACTORS[i];
    eta_factor(u, bound).mul(&eta_factor(v, bound))
}

/// Checks `σ_d(Rᵢ) = Σⱼ A[i][j] Rⱼ` on the first `bound` powers of x.
/// Returns the indices of the rows that disagree.
pub fn sigma_mismatches(a: &RepMatrix, d: i64, bound: u64) -> Result<Vec<usize>> {
    let series: Vec<Series> = (0..DIM).map(|i| r_numerator(i, bound)).collect();
    let mut bad = Vec::new();
    for i in 0..DIM {
        let lhs = series[i].galois(d)?;
        let mut rhs = Series::zero(bound);
        for (j, s) in series.iter().enumerate() {
            if !a.get(i, j).is_zero() {
                rhs = rhs.add(&s.scale(a.get(i, j)));
            }
        }
        if lhs != rhs {
            bad.push(i);
        }
    }
    Ok(bad)
}
