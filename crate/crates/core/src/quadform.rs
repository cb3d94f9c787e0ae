//! Positive definite binary quadratic forms `[a, b, c] = ax² + bxy + cy²`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::numeric::BigComplex;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// The identity class `[1, 1, (1 − D)/4]` for `D ≡ 1 mod 4`.
    pub fn principal(disc: i64) -> Result<Self> {
        check_discriminant(disc)?;
        Ok(Self::new(1, 1, (1 - disc) / 4))
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.discriminant().is_negative() && self.a.is_positive()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        abs_b <= self.a
            && self.a <= self.c
            && (!(abs_b == self.a || self.a == self.c) || !self.b.is_negative())
    }

    fn not_definite(&self) -> Error {
        Error::NotPositiveDefinite {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
        }
    }

    /// Gauss reduction to the unique reduced form in the SL₂(Z)-class.
    pub fn reduce(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(self.not_definite());
        }
        let disc = self.discriminant();
        let four = BigInt::from(4);
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        loop {
            // b into (−a, a]
            let two_a = &a * 2;
            let mut r = b.mod_floor(&two_a);
            if r > a {
                r -= &two_a;
            }
            b = r;
            let c = (&b * &b - &disc) / (&four * &a);
            if a > c {
                a = c;
                b = -b;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            return Ok(QuadForm { a, b, c });
        }
    }

    /// τ = (−b + i√(4ac − b²)) / 2a, the root of az² + bz + c in the upper half-plane.
    pub fn root(&self, digits: u32) -> Result<BigComplex> {
        if !self.is_positive_definite() {
            return Err(self.not_definite());
        }
        let bits = crate::numeric::bits_for_digits(digits);
        let two_a = BigComplex::from_bigint(&(&self.a * 2), digits);
        let abs_disc = BigComplex::from_bigint(&-self.discriminant(), digits);
        let sqrt = abs_disc.re().sqrt(bits, astro_float::RoundingMode::ToEven);
        let numer = BigComplex::new(
            BigComplex::from_bigint(&-&self.b, digits).re().clone(),
            sqrt,
            digits,
        );
        Ok(&numer / &two_a)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

fn check_discriminant(disc: i64) -> Result<()> {
    if disc >= 0 || disc.rem_euclid(4) != 1 {
        return Err(Error::InvalidDiscriminant(disc));
    }
    Ok(())
}

/// Reduced primitive forms of discriminant `disc`, one per class, sorted by
/// `(a, b)`. The first entry is the principal form.
pub fn enumerate(disc: i64) -> Result<Vec<QuadForm>> {
    check_discriminant(disc)?;
    let abs_d = -disc;
    let b_max = (abs_d / 3).sqrt();
    let mut out = Vec::new();
    for b in (-b_max..=b_max).filter(|b| b.rem_euclid(2) == 1) {
        // ac = (b² − D)/4 with |b| ≤ a ≤ c
        let ac = (b * b + abs_d) / 4;
        let a_min = b.abs().max(1);
        let mut a = a_min;
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                let f = QuadForm::new(a, b, c);
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
            a += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// h(D): the number of reduced primitive forms.
pub fn class_number(disc: i64) -> Result<usize> {
    enumerate(disc).map(|v| v.len())
}

/// True when `n` has no square factor > 1.
pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl QuadForm {
    pub fn a_i64(&self) -> Option<i64> {
        self.a.to_i64()
    }

    pub fn b_i64(&self) -> Option<i64> {
        self.b.to_i64()
    }

    pub fn c_i64(&self) -> Option<i64> {
        self.c.to_i64()
    }

    pub fn is_principal(&self) -> bool {
        self.a.is_one() && self.b.is_one()
    }
}
