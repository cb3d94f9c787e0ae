//! 2×2 matrices over Z and Z/mZ, words in the generators S and T, the
//! decomposition of SL₂(Z/pʳZ) elements into such words and their lifts to
//! level 72 through the Chinese remainder theorem.
//!
//! Throughout, `S = (0 −1; 1 0)` and `T = (1 1; 0 1)`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::quadform::QuadForm;

/// `(a b; c d)`, reduced into `[0, modulus)` when `modulus > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    /// 0 for matrices over Z.
    pub modulus: u32,
}

fn reduce_entry(x: i128, m: u32) -> i64 {
    if m == 0 {
        i64::try_from(x).expect("integer matrix entry overflows i64")
    } else {
        x.rem_euclid(m as i128) as i64
    }
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, modulus: u32) -> Self {
        let r = |x: i64| reduce_entry(x as i128, modulus);
        Mat2 {
            a: r(a),
            b: r(b),
            c: r(c),
            d: r(d),
            modulus,
        }
    }

    pub fn identity(modulus: u32) -> Self {
        Self::new(1, 0, 0, 1, modulus)
    }

    pub fn s(modulus: u32) -> Self {
        Self::new(0, -1, 1, 0, modulus)
    }

    pub fn t_pow(e: i64, modulus: u32) -> Self {
        Self::new(1, e, 0, 1, modulus)
    }

    pub fn det(&self) -> i64 {
        reduce_entry(
            self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128,
            self.modulus,
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    /// Reduction to Z/mZ; `m` must divide the current modulus (or it is 0).
    pub fn reduce(&self, m: u32) -> Self {
        assert!(
            self.modulus == 0 || self.modulus.is_multiple_of(m),
            "cannot reduce mod {m} from mod {}",
            self.modulus
        );
        Self::new(self.a, self.b, self.c, self.d, m)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d, self.modulus)
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        assert_eq!(self.modulus, o.modulus, "modulus mismatch");
        let m = self.modulus;
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (o.a as i128, o.b as i128, o.c as i128, o.d as i128);
        Mat2 {
            a: reduce_entry(a * e + b * g, m),
            b: reduce_entry(a * f + b * h, m),
            c: reduce_entry(c * e + d * g, m),
            d: reduce_entry(c * f + d * h, m),
            modulus: m,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)?;
        if self.modulus > 0 {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub gen: Gen,
    pub exp: i64,
}

/// A word in S and T.
///
/// T exponents are arbitrary nonzero integers, S exponents are ±1, adjacent
/// tokens with the same generator are merged. Since S² = −Id the word also
/// carries an overall sign.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct STWord {
    tokens: Vec<Token>,
    negated: bool,
}

impl STWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut w = Self::new();
        for (g, e) in tokens {
            w.push(g, e);
        }
        w
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn push(&mut self, gen: Gen, exp: i64) {
        match gen {
            Gen::T => {
                if exp == 0 {
                    return;
                }
                if let Some(last) = self.tokens.last_mut() {
                    if last.gen == Gen::T {
                        last.exp += exp;
                        if last.exp == 0 {
                            self.tokens.pop();
                        }
                        return;
                    }
                }
                self.tokens.push(Token { gen, exp });
            }
            Gen::S => {
                let mut e = exp.rem_euclid(4);
                if let Some(last) = self.tokens.last() {
                    if last.gen == Gen::S {
                        e = (e + last.exp).rem_euclid(4);
                        self.tokens.pop();
                    }
                }
                // S⁴ = Id, S² = −Id, S³ = S⁻¹
                match e {
                    0 => {}
                    1 => self.tokens.push(Token { gen, exp: 1 }),
                    2 => self.negated = !self.negated,
                    _ => self.tokens.push(Token { gen, exp: -1 }),
                }
            }
        }
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &STWord) -> STWord {
        let mut w = self.clone();
        for t in &other.tokens {
            w.push(t.gen, t.exp);
        }
        w.negated ^= other.negated;
        w
    }

    pub fn inverse(&self) -> STWord {
        let mut w = STWord::from_tokens(self.tokens.iter().rev().map(|t| (t.gen, -t.exp)));
        w.negated ^= self.negated;
        w
    }

    pub fn pow(&self, e: i64) -> STWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = STWord::new();
        for _ in 0..e.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    /// Multiplies the word out over Z (`modulus = 0`) or Z/mZ.
    pub fn eval(&self, modulus: u32) -> Mat2 {
        let mut m = Mat2::identity(modulus);
        for t in &self.tokens {
            let g = match t.gen {
                Gen::T => Mat2::t_pow(t.exp, modulus),
                Gen::S if t.exp == 1 => Mat2::s(modulus),
                Gen::S => Mat2::s(modulus).neg(),
            };
            m = m * g;
        }
        if self.negated {
            m.neg()
        } else {
            m
        }
    }

    /// Replaces every S by `s` and every T by `t`.
    pub fn substitute(&self, s: &STWord, t: &STWord) -> STWord {
        let mut out = STWord::new();
        let s_inv = s.inverse();
        for tok in &self.tokens {
            let piece = match tok.gen {
                Gen::T => t.pow(tok.exp),
                Gen::S if tok.exp == 1 => s.clone(),
                Gen::S => s_inv.clone(),
            };
            out = out.then(&piece);
        }
        out.negated ^= self.negated;
        out
    }
}

impl fmt::Display for STWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        if self.tokens.is_empty() {
            return f.write_str("Id");
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| match (t.gen, t.exp) {
                (Gen::S, 1) => "S".to_string(),
                (Gen::S, _) => "S^-1".to_string(),
                (Gen::T, 1) => "T".to_string(),
                (Gen::T, e) => format!("T^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn smallest_prime_factor(m: u32) -> u32 {
    (2..=m).find(|p| m.is_multiple_of(*p)).unwrap_or(m)
}

fn is_prime_power(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let p = smallest_prime_factor(m);
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Inverse of `x` mod `m`, if it exists.
pub fn mod_inverse(x: i64, m: i64) -> Option<i64> {
    let g = x.rem_euclid(m).extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// Writes `m ∈ SL₂(Z/pʳZ)` as a word in S and T.
///
/// When c is a unit the word is `T^y S T^c S T^(dy−b)` with `y = (1+a)/c`,
/// otherwise `S T^(−z) S T^(−a) S T^(bz−d)` with `z = (1+c)/a`. Both
/// reproduce `m` exactly for `S = (0 −1; 1 0)`; exponents are reduced into
/// `[0, pʳ)`.
pub fn decompose(m: &Mat2) -> Result<STWord> {
    let q = m.modulus;
    if !is_prime_power(q) {
        return Err(Error::UnsupportedModulus(q));
    }
    let p = smallest_prime_factor(q) as i64;
    let qi = q as i64;
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let r = |x: i64| x.rem_euclid(qi);
    if m.is_identity() {
        return Ok(STWord::new());
    }
    let word = if c % p != 0 {
        if m.det() != 1 {
            return Err(Error::NotSpecialLinear(q));
        }
        let y = r((1 + a) * mod_inverse(c, qi).expect("c is a unit"));
        STWord::from_tokens([
            (Gen::T, y),
            (Gen::S, 1),
            (Gen::T, c),
            (Gen::S, 1),
            (Gen::T, r(d * y - b)),
        ])
    } else if a % p != 0 {
        if m.det() != 1 {
            return Err(Error::NotSpecialLinear(q));
        }
        let z = r((1 + c) * mod_inverse(a, qi).expect("a is a unit"));
        STWord::from_tokens([
            (Gen::S, 1),
            (Gen::T, r(-z)),
            (Gen::S, 1),
            (Gen::T, r(-a)),
            (Gen::S, 1),
            (Gen::T, r(b * z - d)),
        ])
    } else {
        return Err(Error::LemmaPrecondition(q));
    };
    Ok(word)
}

/// Words in SL₂(Z) lifting S and T from Z/8 and Z/9 while being trivial
/// modulo the other prime power.
#[derive(Clone, Debug)]
pub struct LiftGenerators {
    pub s8: STWord,
    pub t8: STWord,
    pub s9: STWord,
    pub t9: STWord,
}

/// `S₈ = T⁻¹ S T⁻¹⁰ S T⁻¹ S T⁻¹⁶²`, `T₈ = T⁹`,
/// `S₉ = T⁻¹ S T⁻⁶⁵ S T⁻¹ S T¹⁰⁹⁶`, `T₉ = T⁻⁸`.
pub fn crt_lift_generators() -> LiftGenerators {
    use Gen::{S, T};
    LiftGenerators {
        s8: STWord::from_tokens([(T, -1), (S, 1), (T, -10), (S, 1), (T, -1), (S, 1), (T, -162)]),
        t8: STWord::from_tokens([(T, 9)]),
        s9: STWord::from_tokens([(T, -1), (S, 1), (T, -65), (S, 1), (T, -1), (S, 1), (T, 1096)]),
        t9: STWord::from_tokens([(T, -8)]),
    }
}

/// Lifts a word over Z/8 or Z/9 to one over Z that is trivial modulo the
/// complementary factor of 72.
pub fn lift_word(w: &STWord, modulus: u32) -> Result<STWord> {
    let g = crt_lift_generators();
    match modulus {
        8 => Ok(w.substitute(&g.s8, &g.t8)),
        9 => Ok(w.substitute(&g.s9, &g.t9)),
        m => Err(Error::UnsupportedModulus(m)),
    }
}

fn half(x: &BigInt) -> BigInt {
    debug_assert!(x.is_even());
    x / 2
}

/// The matrix attached to a form at the prime power 8 or 9:
/// `(a, (b−1)/2; 0, 1)` if p ∤ a, `((−b−1)/2, −c; 1, 0)` if p | a and p ∤ c,
/// `((−b−1)/2 − a, (1−b)/2 − c; 1, −1)` otherwise.
pub fn form_matrix(f: &QuadForm, modulus: u32) -> Result<Mat2> {
    let p = match modulus {
        8 => 2,
        9 => 3,
        m => return Err(Error::UnsupportedModulus(m)),
    };
    let disc = f.discriminant();
    if disc.mod_floor(&BigInt::from(4)) != BigInt::from(1) {
        return Err(Error::InvalidDiscriminant(disc.to_i64().unwrap_or(i64::MIN)));
    }
    let one = BigInt::from(1);
    let (a, b, c) = (&f.a, &f.b, &f.c);
    let divides = |x: &BigInt| x.mod_floor(&BigInt::from(p)) == BigInt::from(0);
    let entries: [BigInt; 4] = if !divides(a) {
        [a.clone(), half(&(b - &one)), 0.into(), one.clone()]
    } else if !divides(c) {
        [half(&(-b - &one)), -c, one.clone(), 0.into()]
    } else {
        [half(&(-b - &one)) - a, half(&(&one - b)) - c, one.clone(), BigInt::from(-1)]
    };
    let m = BigInt::from(modulus);
    let r = |x: &BigInt| x.mod_floor(&m).to_i64().expect("reduced entry fits");
    Ok(Mat2::new(r(&entries[0]), r(&entries[1]), r(&entries[2]), r(&entries[3]), modulus))
}

/// The unique x mod 72 with x ≡ x8 (mod 8) and x ≡ x9 (mod 9).
pub fn crt72(x8: i64, x9: i64) -> i64 {
    // 9·9 ≡ 1 (mod 8) and 8·8 ≡ 1 (mod 9)
    (x8.rem_euclid(8) * 81 + x9.rem_euclid(9) * 64).rem_euclid(72)
}

/// Glues matrices mod 8 and mod 9 into one mod 72.
pub fn crt_combine(m8: &Mat2, m9: &Mat2) -> Result<Mat2> {
    if m8.modulus != 8 {
        return Err(Error::UnsupportedModulus(m8.modulus));
    }
    if m9.modulus != 9 {
        return Err(Error::UnsupportedModulus(m9.modulus));
    }
    for m in [m8, m9] {
        if mod_inverse(m.det(), m.modulus as i64).is_none() {
            return Err(Error::SingularDeterminant {
                det: m.det(),
                modulus: m.modulus,
            });
        }
    }
    Ok(Mat2::new(
        crt72(m8.a, m9.a),
        crt72(m8.b, m9.b),
        crt72(m8.c, m9.c),
        crt72(m8.d, m9.d),
        72,
    ))
}

/// Factors `A = B · diag(1, d)` with `d = det A` and `det B = 1`.
pub fn split_det(m: &Mat2) -> Result<(Mat2, i64)> {
    let d = m.det();
    let inv = mod_inverse(d, m.modulus as i64).ok_or(Error::SingularDeterminant {
        det: d,
        modulus: m.modulus,
    })?;
    let b = Mat2::new(m.a, m.b * inv, m.c, m.d * inv, m.modulus);
    Ok((b, d))
}

/// The matrix `(α+β, −Cβ; β, α)` of multiplication by α + βθ, θ² = θ − C.
pub fn generator_matrix(alpha: i64, beta: i64, c: i64) -> Mat2 {
    Mat2::new(alpha + beta, -c * beta, beta, alpha, 0)
}

/// The same unit written against θ − 1 = (−1 + √−n)/2, the point where t_n
/// is evaluated: `(α, −Cβ; β, α+β) = T⁻¹ · generator_matrix · T`.
pub fn shimura_matrix(alpha: i64, beta: i64, c: i64) -> Mat2 {
    Mat2::new(alpha, -c * beta, beta, alpha + beta, 0)
}
