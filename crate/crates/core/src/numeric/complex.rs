//! Arbitrary-precision complex numbers.
//!
//! A thin layer over [`astro_float::BigFloat`]. Precision is carried per value
//! as a count of decimal digits; the binary working precision adds a fixed
//! number of guard bits on top of that.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::Zero;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

thread_local! {
    // Cache of computed constants (pi, ln 2, ...). Never affects results.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("allocate constant cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary precision used for a value carrying `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

/// Converts an exact integer into a float with `bits` of precision.
pub fn bigfloat_from_bigint(n: &BigInt, bits: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::new(bits);
    }
    let (sign, words) = n.to_u64_digits();
    let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
    let exp = (words.len() * Word::BITS as usize) as i32;
    let sign = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    let x = BigFloat::from_words(&words, sign, exp);
    x.add(&BigFloat::new(bits), bits, RM)
}

pub fn bigfloat_from_rational(q: &BigRational, bits: usize) -> BigFloat {
    let num = bigfloat_from_bigint(q.numer(), bits);
    let den = bigfloat_from_bigint(q.denom(), bits);
    num.div(&den, bits, RM)
}

/// Integer part of `x` rounded toward zero. `x` must be finite.
pub fn bigfloat_trunc_to_bigint(x: &BigFloat) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let digits: Vec<u64> = words.iter().copied().collect();
    let mantissa = BigInt::from_slice_native(&digits);
    let shift = exp as i64 - (words.len() * Word::BITS as usize) as i64;
    let magnitude = if shift >= 0 {
        mantissa << shift as usize
    } else {
        mantissa >> (-shift) as usize
    };
    Some(if sign == Sign::Neg { -magnitude } else { magnitude })
}

trait FromNativeDigits {
    fn from_slice_native(digits: &[u64]) -> Self;
}

impl FromNativeDigits for BigInt {
    fn from_slice_native(digits: &[u64]) -> Self {
        let mut n = num_bigint::BigUint::zero();
        for &d in digits.iter().rev() {
            n = (n << 64u32) + num_bigint::BigUint::from(d);
        }
        BigInt::from(n)
    }
}

/// Nearest `f64` to `x`; underflows to 0 and saturates to infinity.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_inf_neg() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = words[words.len() - 1] as f64;
    let value = top * 2f64.powi((exp as i64 - 64).clamp(-2000, 2000) as i32);
    if sign == Sign::Neg {
        -value
    } else {
        value
    }
}

/// Renders `x` in scientific notation with `sig` significant digits.
pub fn format_bigfloat(x: &BigFloat, sig: usize) -> String {
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
    let (mantissa, exponent) = match s.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (s.as_str(), None),
    };
    let mut out = String::new();
    let mut count = 0;
    for ch in mantissa.chars() {
        if ch.is_ascii_digit() {
            if count >= sig {
                continue;
            }
            count += 1;
        }
        out.push(ch);
    }
    if let Some(e) = exponent {
        out.push('e');
        out.push_str(e);
    }
    out
}

/// A complex number `re + i·im` with a decimal working precision.
#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    digits: u32,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let zero = BigFloat::new(bits);
        BigComplex {
            re: re.add(&zero, bits, RM),
            im: im.add(&zero, bits, RM),
            digits,
        }
    }

    pub fn zero(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: BigFloat::new(bits),
            im: BigFloat::new(bits),
            digits,
        }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn i(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: BigFloat::new(bits),
            im: BigFloat::from_i64(1, bits),
            digits,
        }
    }

    pub fn from_i64(n: i64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: BigFloat::from_i64(n, bits),
            im: BigFloat::new(bits),
            digits,
        }
    }

    /// Parses from `f64` parts; only for low-precision inputs such as test points.
    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: BigFloat::from_f64(re, bits),
            im: BigFloat::from_f64(im, bits),
            digits,
        }
    }

    pub fn from_bigint(n: &BigInt, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: bigfloat_from_bigint(n, bits),
            im: BigFloat::new(bits),
            digits,
        }
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex {
            re: bigfloat_from_rational(q, bits),
            im: BigFloat::new(bits),
            digits,
        }
    }

    pub fn from_real(re: BigFloat, digits: u32) -> Self {
        Self::new(re, BigFloat::new(bits_for_digits(digits)), digits)
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    /// Same value carried at a different precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::new(self.re.clone(), self.im.clone(), digits)
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.clone().neg(),
            digits: self.digits,
        }
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.bits();
        BigComplex {
            re: self.re.mul(k, p, RM),
            im: self.im.mul(k, p, RM),
            digits: self.digits,
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.bits();
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.bits(), RM)
    }

    pub fn abs_f64(&self) -> f64 {
        bigfloat_to_f64(&self.abs())
    }

    pub fn re_f64(&self) -> f64 {
        bigfloat_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        bigfloat_to_f64(&self.im)
    }

    pub fn recip(&self) -> Self {
        let p = self.bits();
        let n = self.norm_sqr();
        BigComplex {
            re: self.re.div(&n, p, RM),
            im: self.im.clone().neg().div(&n, p, RM),
            digits: self.digits,
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.bits();
        let (m, c, s) = with_consts(|cc| {
            (
                self.re.exp(p, RM, cc),
                self.im.cos(p, RM, cc),
                self.im.sin(p, RM, cc),
            )
        });
        BigComplex {
            re: m.mul(&c, p, RM),
            im: m.mul(&s, p, RM),
            digits: self.digits,
        }
    }

    /// Principal square root: argument in (-pi/2, pi/2].
    pub fn sqrt(&self) -> Self {
        let p = self.bits();
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero(self.digits);
        }
        let r = self.abs();
        let two = BigFloat::from_i64(2, p);
        let a = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let b = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let b = if self.im.is_negative() { b.neg() } else { b };
        BigComplex {
            re: a,
            im: b,
            digits: self.digits,
        }
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.digits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nearest integer to the real part and the distance to it, including the
    /// imaginary part: `max(|re - round(re)|, |im|)`.
    pub fn round_to_integer(&self) -> Option<(BigInt, f64)> {
        if !self.is_finite() {
            return None;
        }
        let p = self.bits();
        let half = BigFloat::from_f64(0.5, p);
        let shifted = if self.re.is_negative() {
            self.re.sub(&half, p, RM)
        } else {
            self.re.add(&half, p, RM)
        };
        let n = bigfloat_trunc_to_bigint(&shifted.int())?;
        let diff = self.re.sub(&bigfloat_from_bigint(&n, p), p, RM).abs();
        let residual = bigfloat_to_f64(&diff).max(bigfloat_to_f64(&self.im.abs()));
        Some((n, residual))
    }

    pub fn to_string_digits(&self, sig: usize) -> String {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        format!(
            "{} {} {}i",
            format_bigfloat(&self.re, sig),
            sign,
            format_bigfloat(&self.im.abs(), sig)
        )
    }
}

pub fn pi(digits: u32) -> BigFloat {
    let p = bits_for_digits(digits);
    with_consts(|cc| cc.pi(p, RM))
}

/// `exp(2*pi*i*x)` for a real rational `x`.
pub fn unit_root(x: &BigRational, digits: u32) -> BigComplex {
    let p = bits_for_digits(digits);
    let angle = pi(digits)
        .mul(&BigFloat::from_i64(2, p), p, RM)
        .mul(&bigfloat_from_rational(x, p), p, RM);
    BigComplex::new(BigFloat::new(p), angle, digits).exp()
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(25))
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: self.re.clone().neg(),
            im: self.im.clone().neg(),
            digits: self.digits,
        }
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for_digits(digits);
        BigComplex {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
            digits,
        }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for_digits(digits);
        BigComplex {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
            digits,
        }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for_digits(digits);
        let ac = self.re.mul(&rhs.re, p, RM);
        let bd = self.im.mul(&rhs.im, p, RM);
        let ad = self.re.mul(&rhs.im, p, RM);
        let bc = self.im.mul(&rhs.re, p, RM);
        BigComplex {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
            digits,
        }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex { (&self).$m(&rhs) }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roundtrip() {
        for s in ["0", "1", "-1", "123456789012345678901234567890", "-337618789203968000000000"] {
            let n: BigInt = s.parse().unwrap();
            let (m, r) = BigComplex::from_bigint(&n, 60).round_to_integer().unwrap();
            assert_eq!(m, n);
            assert_eq!(r, 0.0);
        }
    }

    #[test]
    fn rounding_picks_nearest() {
        let x = BigComplex::from_f64(-2.75, 1e-30, 40);
        let (n, r) = x.round_to_integer().unwrap();
        assert_eq!(n, BigInt::from(-3));
        assert!((r - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sqrt_branch() {
        let z = BigComplex::from_i64(-4, 40).sqrt();
        assert!(z.re_f64().abs() < 1e-30);
        assert!((z.im_f64() - 2.0).abs() < 1e-30);
        let w = BigComplex::from_f64(0.0, -2.0, 40).sqrt();
        assert!((w.re_f64() - 1.0).abs() < 1e-30);
        assert!((w.im_f64() + 1.0).abs() < 1e-30);
    }

    #[test]
    fn euler_identity() {
        let half = BigRational::new(1.into(), 2.into());
        let z = unit_root(&half, 100);
        let err = (&z + &BigComplex::one(100)).abs_f64();
        assert!(err < 1e-100, "{err}");
    }

    #[test]
    fn formatting() {
        let x = BigComplex::from_f64(1.5, -0.25, 30);
        assert_eq!(x.to_string_digits(3), "1.5e+0 - 2.5e-1i");
    }
}
