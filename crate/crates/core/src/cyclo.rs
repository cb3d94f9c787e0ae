//! Exact arithmetic in the cyclotomic field Q(ζ₇₂).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ²³ modulo the 72nd
//! cyclotomic polynomial Φ₇₂(x) = x²⁴ − x¹² + 1, so every element has exactly
//! one representation and equality is coefficient-wise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{unit_root, BigComplex};

/// Order of the root of unity generating the field.
pub const LEVEL: i64 = 72;
/// Degree of Q(ζ₇₂) over Q.
pub const DEGREE: usize = 24;

/// Coefficients of Φ₇₂ in ascending degree (x²⁴ − x¹² + 1).
pub const CYCLOTOMIC_72: [i64; DEGREE + 1] = {
    let mut c = [0i64; DEGREE + 1];
    c[0] = 1;
    c[12] = -1;
    c[24] = 1;
    c
};

/// The units of Z/72Z, i.e. the indices of Gal(Q(ζ₇₂)/Q).
pub fn galois_group() -> Vec<i64> {
    (1..LEVEL).filter(|d| d.gcd(&LEVEL) == 1).collect()
}

/// An element of Q(ζ₇₂).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    coeffs: Vec<BigRational>,
}

/// Folds a coefficient vector of any length back into the canonical basis
/// using ζ²⁴ = ζ¹² − 1.
fn reduce(mut c: Vec<BigRational>) -> Vec<BigRational> {
    for k in (DEGREE..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let v = std::mem::replace(&mut c[k], BigRational::zero());
        c[k - 12] += &v;
        c[k - DEGREE] -= v;
    }
    c.truncate(DEGREE);
    c.resize(DEGREE, BigRational::zero());
    c
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            coeffs: vec![BigRational::zero(); DEGREE],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut z = Self::zero();
        z.coeffs[0] = q;
        z
    }

    /// Builds an element from coefficients of ζ⁰, ζ¹, …; any length is accepted
    /// and reduced.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        CycNum {
            coeffs: reduce(coeffs),
        }
    }

    /// ζ₇₂ᵏ, with `k` taken mod 72.
    pub fn root_power(k: i64) -> Self {
        let k = k.rem_euclid(LEVEL) as usize;
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Self::from_coeffs(c)
    }

    /// √3 = ζ⁶ − ζ³⁰.
    pub fn sqrt3() -> Self {
        &Self::root_power(6) - &Self::root_power(30)
    }

    /// i = ζ¹⁸.
    pub fn imaginary_unit() -> Self {
        Self::root_power(18)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ₇₂.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = poly::from_ints(&CYCLOTOMIC_72);
        let (g, s) = poly::ext_gcd(&poly::trim(self.coeffs.clone()), &modulus);
        // Φ₇₂ is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let c = &g[0];
        Ok(Self::from_coeffs(s).scale(&c.recip()))
    }

    /// The automorphism σ_d: ζ ↦ ζᵈ.
    pub fn galois(&self, d: i64) -> Result<Self> {
        if d.gcd(&LEVEL) != 1 {
            return Err(Error::NotGaloisElement(d));
        }
        let d = d.rem_euclid(LEVEL) as usize;
        let mut out = vec![BigRational::zero(); LEVEL as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(k * d) % LEVEL as usize] += c;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// Complex value under ζ ↦ exp(2πi/72).
    pub fn embed(&self, digits: u32) -> BigComplex {
        let mut acc = BigComplex::zero(digits);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = unit_root(&BigRational::new(BigInt::from(k), BigInt::from(LEVEL)), digits);
            let term = &root * &BigComplex::from_rational(c, digits);
            acc = &acc + &term;
        }
        acc
    }

    /// Number of nonzero basis coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Default for CycNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let mut out = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        CycNum::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Dense univariate polynomials over Q, ascending coefficients, no trailing zeros.
mod poly {
    use num_rational::BigRational;
    use num_traits::Zero;

    pub type Poly = Vec<BigRational>;

    pub fn from_ints(c: &[i64]) -> Poly {
        trim(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    fn sub_scaled_shifted(a: &mut Poly, b: &Poly, q: &BigRational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, BigRational::zero());
        }
        for (i, c) in b.iter().enumerate() {
            a[i + shift] -= c * q;
        }
    }

    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        sub_scaled_shifted(&mut out, b, &BigRational::from_integer(1.into()), 0);
        trim(out)
    }

    pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let mut r = a.clone();
        let db = b.len() - 1;
        let lead = &b[db];
        let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let coef = &r[r.len() - 1] / lead;
            sub_scaled_shifted(&mut r, b, &coef, shift);
            q[shift] = coef;
            r = trim(r);
        }
        (trim(q), r)
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)`.
    pub fn ext_gcd(a: &Poly, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), m.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![BigRational::from_integer(1.into())], Vec::new());
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Integer polynomial division: Φ_n = (xⁿ − 1) / ∏_{d | n, d < n} Φ_d.
    fn cyclotomic(n: usize) -> Vec<i64> {
        let mut num = vec![0i64; n + 1];
        num[0] = -1;
        num[n] = 1;
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let den = cyclotomic(d);
            let mut q = vec![0i64; num.len() - den.len() + 1];
            let mut r = num.clone();
            for i in (0..q.len()).rev() {
                let c = r[i + den.len() - 1];
                q[i] = c;
                for (j, &dj) in den.iter().enumerate() {
                    r[i + j] -= c * dj;
                }
            }
            assert!(r.iter().all(|&x| x == 0), "Φ_{d} does not divide");
            num = q;
        }
        num
    }

    #[test]
    fn hardcoded_minimal_polynomial_matches_division() {
        assert_eq!(cyclotomic(72), CYCLOTOMIC_72.to_vec());
    }

    #[test]
    fn root_power_examples() {
        assert!(CycNum::root_power(0).is_one());
        assert_eq!(CycNum::root_power(36), CycNum::from_integer(-1));
        let w = CycNum::root_power(24);
        assert!(!w.is_one());
        assert!((&(&w * &w) * &w).is_one());
        assert_eq!(CycNum::root_power(-1), CycNum::root_power(71));
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = CycNum::sqrt3();
        assert_eq!(&s * &s, CycNum::from_integer(3));
    }

    #[test]
    fn inverse_examples() {
        assert!(CycNum::one().inv().unwrap().is_one());
        let s = CycNum::sqrt3();
        let expected = s.scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(s.inv().unwrap(), expected);
        assert!((&s * &expected).is_one());
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn galois_examples() {
        let s = CycNum::sqrt3();
        assert_eq!(s.galois(1).unwrap(), s);
        assert_eq!(s.galois(-65).unwrap(), -&s);
        // 6·65 = 390 ≡ 30 and 30·65 = 1950 ≡ 6 (mod 72), so ζ⁶ − ζ³⁰ ↦ ζ³⁰ − ζ⁶.
        assert_eq!(s.galois(65).unwrap(), &CycNum::root_power(30) - &CycNum::root_power(6));
        assert_eq!(s.galois(65).unwrap(), -&s);
        assert_eq!(s.galois(2), Err(Error::NotGaloisElement(2)));
        assert_eq!(s.galois(9), Err(Error::NotGaloisElement(9)));
    }

    #[test]
    fn embed_examples() {
        assert!((CycNum::one().embed(50).re_f64() - 1.0).abs() < 1e-15);
        let r3 = CycNum::sqrt3().embed(50);
        let exact = BigComplex::from_i64(3, 50).sqrt();
        assert!((&r3 - &exact).abs_f64() < 1e-50);
        let i = CycNum::imaginary_unit().embed(50);
        assert!((&i - &BigComplex::i(50)).abs_f64() < 1e-50);
    }

    #[test]
    fn roots_of_unity_pair_to_one() {
        for k in 0..72 {
            assert!((&CycNum::root_power(k) * &CycNum::root_power(72 - k)).is_one(), "k={k}");
        }
    }

    #[test]
    fn display() {
        let e = &CycNum::root_power(6).scale(&BigRational::new(1.into(), 3.into()))
            - &CycNum::root_power(18).scale(&BigRational::new(2.into(), 3.into()));
        assert_eq!(e.to_string(), "-2/3*z^18 + 1/3*z^6");
        assert_eq!(CycNum::zero().to_string(), "0");
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        prop::collection::vec((-5i64..=5, 1i64..=4), DEGREE).prop_map(|v| {
            CycNum::from_coeffs(
                v.into_iter()
                    .map(|(n, d)| BigRational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    fn arb_unit_index() -> impl Strategy<Value = i64> {
        prop::sample::select(galois_group())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_is_exact(x in arb_cyc()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn galois_is_ring_homomorphism(x in arb_cyc(), y in arb_cyc(), d in arb_unit_index()) {
            prop_assert_eq!((&x + &y).galois(d).unwrap(), &x.galois(d).unwrap() + &y.galois(d).unwrap());
            prop_assert_eq!((&x * &y).galois(d).unwrap(), &x.galois(d).unwrap() * &y.galois(d).unwrap());
        }

        #[test]
        fn galois_composes(x in arb_cyc(), d in arb_unit_index(), e in arb_unit_index()) {
            prop_assert_eq!(x.galois(e).unwrap().galois(d).unwrap(), x.galois(d * e % LEVEL).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn embedding_is_multiplicative(x in arb_cyc(), y in arb_cyc()) {
            let prec = 40;
            let lhs = (&x * &y).embed(prec);
            let rhs = &x.embed(prec) * &y.embed(prec);
            let scale = 1.0 + lhs.abs_f64();
            prop_assert!((&lhs - &rhs).abs_f64() < scale * 1e-38);
        }
    }

    #[test]
    fn galois_is_additive_and_multiplicative_for_every_index() {
        let x = &CycNum::root_power(5) + &CycNum::sqrt3();
        let y = &CycNum::root_power(13) - &CycNum::from_integer(2);
        for d in galois_group() {
            assert_eq!((&x * &y).galois(d).unwrap(), &x.galois(d).unwrap() * &y.galois(d).unwrap());
            assert_eq!((&x + &y).galois(d).unwrap(), &x.galois(d).unwrap() + &y.galois(d).unwrap());
        }
        assert_eq!(galois_group().len(), DEGREE);
    }
}
