//! Oracle-based consistency checks that need no tabulated data: word
//! reconstruction, the eta transformation laws, and numerical agreement of
//! the exact representation with the eta quotients themselves.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cyclo::CycNum;
use crate::error::Result;
use crate::numeric::modular::{eta, r_vector};
use crate::numeric::BigComplex;
use crate::rep::{qseries, rep_s, rep_sigma, rep_t, RepMatrix, DIM};
use crate::sl2::{decompose, Mat2};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Every matrix of SL₂(Z/m), in lexicographic order.
pub fn special_linear_group(modulus: u32) -> Vec<Mat2> {
    let m = modulus as i64;
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d - b * c).rem_euclid(m) == 1 {
                        out.push(Mat2::new(a, b, c, d, modulus));
                    }
                }
            }
        }
    }
    out
}

/// Number of matrices whose decomposition does not multiply back to them.
pub fn reconstruction_failures(mats: &[Mat2]) -> usize {
    mats.iter()
        .filter(|m| match decompose(m) {
            Ok(w) => w.eval(m.modulus) != **m,
            Err(_) => true,
        })
        .count()
}

/// Uniform samples from SL₂(Z/m).
pub fn sample_special_linear(modulus: u32, count: usize, rng: &mut impl Rng) -> Vec<Mat2> {
    let all = special_linear_group(modulus);
    (0..count).map(|_| all[rng.gen_range(0..all.len())]).collect()
}

/// τ with Re τ ∈ [−½, ½] and Im τ ∈ [½, 2].
pub fn random_point(rng: &mut impl Rng, digits: u32) -> BigComplex {
    BigComplex::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0), digits)
}

/// Largest errors of η(τ+1) = e^{2πi/24}η(τ) and η(−1/τ) = √(−iτ)η(τ),
/// relative to |η(τ)|.
pub fn eta_transformation_errors(points: &[BigComplex], digits: u32) -> Result<(f64, f64)> {
    let shift = crate::numeric::unit_root(&num_rational::BigRational::new(1.into(), 24.into()), digits);
    let mut worst = (0f64, 0f64);
    for tau in points {
        let e = eta(tau, digits)?;
        let scale = e.abs_f64();
        let t1 = &BigComplex::one(digits) + tau;
        let err_t = (&eta(&t1, digits)? - &(&shift * &e)).abs_f64() / scale;
        let s = -&tau.recip();
        let root = (&(-&BigComplex::i(digits)) * tau).sqrt();
        let err_s = (&eta(&s, digits)? - &(&root * &e)).abs_f64() / scale;
        worst = (worst.0.max(err_t), worst.1.max(err_s));
    }
    Ok(worst)
}

fn apply_numeric(m: &RepMatrix, v: &[BigComplex; DIM], digits: u32) -> Vec<BigComplex> {
    (0..DIM)
        .map(|i| {
            let mut acc = BigComplex::zero(digits);
            for (j, x) in v.iter().enumerate() {
                if !m.get(i, j).is_zero() {
                    acc = &acc + &(&m.get(i, j).embed(digits) * x);
                }
            }
            acc
        })
        .collect()
}

fn max_relative(lhs: &[BigComplex], rhs: &[BigComplex]) -> f64 {
    lhs.iter()
        .zip(rhs)
        .map(|(a, b)| (a - b).abs_f64() / a.abs_f64().max(1e-300))
        .fold(0.0, f64::max)
}

/// Which transformation to compare against the exact matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericLaw {
    /// R(τ+1) = A_T R(τ)
    T,
    /// R(−1/τ) = A_S R(τ)
    S,
    /// σ₋₁ is complex conjugation of Fourier coefficients:
    /// conj(R(−τ̄)) = A_{σ₋₁} R(τ).
    Conjugation,
}

/// Largest relative error of the chosen law over `points`.
pub fn representation_error(law: NumericLaw, points: &[BigComplex], digits: u32) -> Result<f64> {
    let mut worst = 0f64;
    for tau in points {
        let base = r_vector(tau, digits)?;
        let (moved, matrix): (Vec<BigComplex>, RepMatrix) = match law {
            NumericLaw::T => (
                r_vector(&(tau + &BigComplex::one(digits)), digits)?.to_vec(),
                rep_t().clone(),
            ),
            NumericLaw::S => (r_vector(&(-&tau.recip()), digits)?.to_vec(), rep_s().clone()),
            NumericLaw::Conjugation => {
                let reflected = -&tau.conj();
                let vals = r_vector(&reflected, digits)?;
                (vals.iter().map(|v| v.conj()).collect(), rep_sigma(-1)?)
            }
        };
        worst = worst.max(max_relative(&moved, &apply_numeric(&matrix, &base, digits)));
    }
    Ok(worst)
}

/// Largest relative change of any R_i under τ ↦ τ + 72.
pub fn periodicity_error(points: &[BigComplex], digits: u32) -> Result<f64> {
    let mut worst = 0f64;
    for tau in points {
        let shifted = tau + &BigComplex::from_i64(72, digits);
        worst = worst.max(max_relative(&r_vector(tau, digits)?, &r_vector(&shifted, digits)?));
    }
    Ok(worst)
}

/// Exact q-expansion check of the Galois matrices for each `d`.
pub fn sigma_qseries_ok(ds: &[i64], bound: u64) -> Result<bool> {
    for &d in ds {
        if !qseries::sigma_mismatches(&rep_sigma(d)?, d, bound)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// S² acts trivially and the representation of T has order 18.
pub fn generator_relations_ok() -> Result<bool> {
    let id = RepMatrix::identity();
    let s2 = rep_s() * rep_s();
    let st3 = (rep_s() * rep_t()).pow(3)?;
    // (ST)³ = ±Id in SL₂(Z), and ±Id both act trivially on functions of τ
    Ok(s2 == id && rep_t().pow(18)? == id && st3 == id && CycNum::sqrt3().inv().is_ok())
}

pub const SELFTEST_SEED: u64 = 0x5eed_7215;

/// Runs every suite; `points` random evaluation points at `digits` digits.
pub fn run_all(digits: u32, points: usize, samples9: usize) -> Result<Vec<Check>> {
    let mut rng = StdRng::seed_from_u64(SELFTEST_SEED);
    let tol = 10f64.powi(-(digits as i32 - 20));
    let mut out = Vec::new();

    let sl8 = special_linear_group(8);
    let bad8 = reconstruction_failures(&sl8);
    out.push(Check::new(
        "word reconstruction SL2(Z/8)",
        bad8 == 0,
        format!("{} matrices, {bad8} failures", sl8.len()),
    ));
    let sl9 = sample_special_linear(9, samples9, &mut rng);
    let bad9 = reconstruction_failures(&sl9);
    out.push(Check::new(
        "word reconstruction SL2(Z/9)",
        bad9 == 0,
        format!("{} samples, {bad9} failures", sl9.len()),
    ));
    let all9 = special_linear_group(9);
    let bad9_all = reconstruction_failures(&all9);
    out.push(Check::new(
        "word reconstruction SL2(Z/9) exhaustive",
        bad9_all == 0,
        format!("{} matrices, {bad9_all} failures", all9.len()),
    ));

    let pts: Vec<BigComplex> = (0..points).map(|_| random_point(&mut rng, digits)).collect();
    let (et, es) = eta_transformation_errors(&pts, digits)?;
    out.push(Check::new("eta(tau+1)", et < tol, format!("max error {et:.2e}")));
    out.push(Check::new("eta(-1/tau)", es < tol, format!("max error {es:.2e}")));

    for (name, law) in [
        ("rep_T numeric", NumericLaw::T),
        ("rep_S numeric", NumericLaw::S),
        ("rep_sigma(-1) numeric", NumericLaw::Conjugation),
    ] {
        let e = representation_error(law, &pts, digits)?;
        out.push(Check::new(name, e < tol, format!("max error {e:.2e}")));
    }
    let p = periodicity_error(&pts, digits)?;
    out.push(Check::new("R_i(tau+72) = R_i(tau)", p < tol, format!("max error {p:.2e}")));
    let q_ok = sigma_qseries_ok(&[5, 7, 11, 65], 2000)?;
    out.push(Check::new(
        "rep_sigma q-series",
        q_ok,
        "d = 5, 7, 11, 65".to_string(),
    ));
    out.push(Check::new(
        "generator relations",
        generator_relations_ok()?,
        "S^2, T^18, (ST)^3".to_string(),
    ));
    Ok(out)
}
