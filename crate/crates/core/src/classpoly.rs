//! Assembly of p_n from the conjugates of t_n, and Hilbert class polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::numeric::modular::{check_n, hilbert_precision, j_invariant, r_function, t_n_value};
use crate::numeric::BigComplex;
use crate::quadform::{self, QuadForm};
use crate::rep::{full_action, FunctionVector};
use crate::sl2::{crt_combine, form_matrix};

/// Largest accepted distance between a computed coefficient and an integer.
pub const ROUNDING_TOLERANCE: f64 = 1e-10;
/// Precision doublings attempted after a rounding failure.
pub const MAX_RETRIES: u32 = 3;
pub const DEFAULT_DIGITS: u32 = 120;

/// Monic polynomial with integer coefficients, stored in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// `coeffs` in ascending degree; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigComplex) -> BigComplex {
        let digits = x.digits();
        let mut acc = BigComplex::zero(digits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &BigComplex::from_bigint(c, digits);
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsePolynomialError(pub String);

impl fmt::Display for ParsePolynomialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse polynomial: {}", self.0)
    }
}

impl std::error::Error for ParsePolynomialError {}

impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    /// Parses the rendering produced by `Display`, e.g. `x^3 - 2x^2 + 4x - 1`;
    /// the variable may be `x` or `t`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || ParsePolynomialError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace('t', "x").replace('−', "-");
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (mag, power) = match body.split_once('x') {
                None => (body, 0usize),
                Some((m, rest)) => {
                    let p = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    (m, p)
                }
            };
            let mag: BigInt = if mag.is_empty() {
                BigInt::one()
            } else {
                mag.parse().map_err(|_| err())?
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += mag * sign;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// One conjugate of t_n: the image of √3·R₂ under the matrix of a reduced
/// form, which is `scalar · R_target`, evaluated at the form's root.
#[derive(Clone, Debug)]
pub struct ConjugateRecord {
    pub form: QuadForm,
    pub scalar: CycNum,
    pub target_index: usize,
    pub d: i64,
    pub value: BigComplex,
}

/// The symbolic part of a conjugate: which R_j and which scalar.
pub fn conjugate_function(f: &QuadForm) -> Result<(FunctionVector, i64)> {
    let a = crt_combine(&form_matrix(f, 8)?, &form_matrix(f, 9)?)?;
    let act = full_action(&a)?;
    if !act.matrix.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok((act.apply(&FunctionVector::sqrt3_r2())?, act.d))
}

pub fn conjugate_value(n: i64, f: &QuadForm, digits: u32) -> Result<ConjugateRecord> {
    check_n(n)?;
    if f.discriminant() != BigInt::from(-n) {
        return Err(Error::InvalidDiscriminant(-n));
    }
    let (image, d) = conjugate_function(f)?;
    let (target_index, scalar) = image.as_single_term().ok_or(Error::NotMonomial)?;
    let tau = f.root(digits)?;
    let value = &scalar.embed(digits) * &r_function(target_index, &tau, digits)?;
    Ok(ConjugateRecord {
        form: f.clone(),
        scalar: scalar.clone(),
        target_index,
        d,
        value,
    })
}

/// Outcome of a polynomial computation, with its numerical diagnostics.
#[derive(Clone, Debug)]
pub struct PolyResult {
    pub polynomial: IntPolynomial,
    pub forms: Vec<QuadForm>,
    pub precision_digits: u32,
    /// Largest distance of a computed coefficient from its integer.
    pub max_residual: f64,
    /// Largest |Im| among the unrounded coefficients.
    pub max_imaginary: f64,
    pub roots: Vec<BigComplex>,
}

impl PolyResult {
    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    /// max |p(r)| over the computed roots, at their own precision.
    pub fn root_residual(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| self.polynomial.eval(r).abs_f64())
            .fold(0.0, f64::max)
    }
}

/// ∏ (x − rᵢ) in ascending coefficients.
fn expand(roots: &[BigComplex], digits: u32) -> Vec<BigComplex> {
    let mut p = vec![BigComplex::one(digits)];
    for r in roots {
        let mut next = vec![BigComplex::zero(digits); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * r);
        }
        p = next;
    }
    p
}

fn round_all(coeffs: &[BigComplex]) -> Result<(IntPolynomial, f64)> {
    let mut ints = Vec::with_capacity(coeffs.len());
    let mut worst = 0f64;
    for c in coeffs {
        let (k, r) = c
            .round_to_integer()
            .ok_or_else(|| Error::Numeric("non-finite coefficient".into()))?;
        worst = worst.max(r);
        ints.push(k);
    }
    Ok((IntPolynomial::new(ints), worst))
}

/// Computes roots at increasing precision until every coefficient rounds
/// within `ROUNDING_TOLERANCE`.
fn assemble(
    forms: Vec<QuadForm>,
    digits: u32,
    roots_at: impl Fn(u32) -> Result<Vec<BigComplex>>,
) -> Result<PolyResult> {
    let mut prec = digits;
    let mut last_residual = f64::INFINITY;
    for attempt in 0..=MAX_RETRIES {
        if attempt > 0 {
            prec *= 2;
        }
        let roots = roots_at(prec)?;
        let coeffs = expand(&roots, prec);
        let (polynomial, max_residual) = round_all(&coeffs)?;
        if max_residual < ROUNDING_TOLERANCE {
            let max_imaginary = coeffs.iter().map(|c| c.im_f64().abs()).fold(0.0, f64::max);
            return Ok(PolyResult {
                polynomial,
                forms,
                precision_digits: prec,
                max_residual,
                max_imaginary,
                roots,
            });
        }
        last_residual = max_residual;
    }
    Err(Error::RoundingFailed {
        residual: last_residual,
        tolerance: ROUNDING_TOLERANCE,
        digits: prec,
    })
}

/// Conjugate records for every reduced form of discriminant −n, in form order.
pub fn conjugates(n: i64, digits: u32) -> Result<Vec<ConjugateRecord>> {
    check_n(n)?;
    let forms = quadform::enumerate(-n)?;
    forms.par_iter().map(|f| conjugate_value(n, f, digits)).collect()
}

/// p_n(x) = ∏ over reduced forms of (x − conjugate of t_n).
pub fn ramanujan_polynomial(n: i64, digits: u32) -> Result<PolyResult> {
    check_n(n)?;
    let forms = quadform::enumerate(-n)?;
    let fs = forms.clone();
    assemble(forms, digits, move |prec| {
        let recs: Result<Vec<ConjugateRecord>> =
            fs.par_iter().map(|f| conjugate_value(n, f, prec)).collect();
        Ok(recs?.into_iter().map(|r| r.value).collect())
    })
}

/// f_D(x) = ∏ (x − j(τ_f)). With `digits = None` the precision is chosen from
/// the size of the j-values.
pub fn hilbert_polynomial(disc: i64, digits: Option<u32>) -> Result<PolyResult> {
    let forms = quadform::enumerate(disc)?;
    let prec = digits.unwrap_or_else(|| hilbert_precision(disc.unsigned_abs(), &forms));
    let fs = forms.clone();
    assemble(forms, prec, move |p| {
        fs.par_iter()
            .map(|f| j_invariant(&f.root(p)?, p))
            .collect()
    })
}

/// Checks run against a candidate p_n.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n: i64,
    /// |p(t_n)|
    pub root_residual: f64,
    pub root_tolerance: f64,
    pub degree: usize,
    pub class_number: usize,
    pub monic: bool,
    pub unit_constant: bool,
}

impl VerifyReport {
    pub fn root_ok(&self) -> bool {
        self.root_residual < self.root_tolerance
    }

    pub fn degree_ok(&self) -> bool {
        self.degree == self.class_number
    }

    pub fn passed(&self) -> bool {
        self.root_ok() && self.degree_ok() && self.monic && self.unit_constant
    }
}

pub fn verify_polynomial(p: &IntPolynomial, n: i64, digits: u32) -> Result<VerifyReport> {
    let t = t_n_value(n, digits)?;
    Ok(VerifyReport {
        n,
        root_residual: p.eval(&t).abs_f64(),
        root_tolerance: 10f64.powf(-(digits as f64) / 2.0),
        degree: p.degree(),
        class_number: quadform::class_number(-n)?,
        monic: p.is_monic(),
        unit_constant: p.constant_term().abs().is_one(),
    })
}
