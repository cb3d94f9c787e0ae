//! Dedekind eta, the eta quotients R, R₁, …, R₅, t_n and Klein's j.

use num_rational::BigRational;

use super::complex::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::quadform::QuadForm;

/// Extra decimal digits carried through every series evaluation.
pub const GUARD_DIGITS: u32 = 10;

fn check_upper(tau: &BigComplex) -> Result<()> {
    if tau.im().is_positive() && !tau.im().is_zero() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane)
    }
}

/// log₁₀ |e^{2πiτ}| from the imaginary part, avoiding f64 underflow of |q|.
fn log10_abs_q(tau: &BigComplex) -> f64 {
    -2.0 * std::f64::consts::PI * tau.im_f64() / std::f64::consts::LN_10
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// exp(2πi·x·τ)
fn q_power(tau: &BigComplex, x: &BigRational) -> BigComplex {
    let digits = tau.digits();
    let two_pi_i = BigComplex::new(
        BigComplex::zero(digits).re().clone(),
        pi(digits).mul(
            &astro_float::BigFloat::from_i64(2, tau.bits()),
            tau.bits(),
            astro_float::RoundingMode::ToEven,
        ),
        digits,
    );
    (&(&two_pi_i * &BigComplex::from_rational(x, digits)) * tau).exp()
}

/// Σ_{m∈Z} (−1)ᵐ q^{m(3m−1)/2}, summed until terms drop below 10^{−stop}.
fn pentagonal_series(q: &BigComplex, log10_q: f64, stop: f64) -> BigComplex {
    let digits = q.digits();
    let mut sum = BigComplex::one(digits);
    let q3 = q.powi(3);
    // q^{m(3m−1)/2}, its step q^{3m+1}, and q^m
    let mut qp = q.clone();
    let mut step = q.powi(4);
    let mut qm = q.clone();
    let mut m: u64 = 1;
    loop {
        let p1 = m * (3 * m - 1) / 2;
        if p1 as f64 * log10_q < -stop {
            break;
        }
        let term = &qp + &(&qp * &qm);
        sum = if m % 2 == 1 { &sum - &term } else { &sum + &term };
        qp = &qp * &step;
        step = &step * &q3;
        qm = &qm * q;
        m += 1;
    }
    sum
}

/// η(τ) = q^{1/24} Σ (−1)ᵐ q^{m(3m−1)/2}, accurate to about 10^{−digits}
/// relative to |η(τ)|.
pub fn eta(tau: &BigComplex, digits: u32) -> Result<BigComplex> {
    check_upper(tau)?;
    let work = digits + GUARD_DIGITS;
    let t = tau.with_digits(work);
    let q = q_power(&t, &rat(1, 1));
    let series = pentagonal_series(&q, log10_abs_q(&t), work as f64);
    let prefactor = q_power(&t, &rat(1, 24));
    Ok((&prefactor * &series).with_digits(digits))
}

/// η via the truncated product q^{1/24} ∏_{k≤factors} (1 − qᵏ); a test oracle.
pub fn eta_product(tau: &BigComplex, digits: u32, factors: u32) -> Result<BigComplex> {
    check_upper(tau)?;
    let work = digits + GUARD_DIGITS;
    let t = tau.with_digits(work);
    let q = q_power(&t, &rat(1, 1));
    let one = BigComplex::one(work);
    let mut prod = one.clone();
    let mut qk = one.clone();
    for _ in 0..factors {
        qk = &qk * &q;
        prod = &prod * &(&one - &qk);
    }
    Ok((&q_power(&t, &rat(1, 24)) * &prod).with_digits(digits))
}

/// The four eta values η(τ/3), η((τ+1)/3), η((τ+2)/3), η(3τ).
fn eta_factors(tau: &BigComplex, digits: u32) -> Result<[BigComplex; 4]> {
    check_upper(tau)?;
    let work = digits + GUARD_DIGITS;
    let t = tau.with_digits(work);
    let third = BigComplex::from_rational(&rat(1, 3), work);
    let shifted = |k: i64| &(&t + &BigComplex::from_i64(k, work)) * &third;
    Ok([
        eta(&shifted(0), work)?,
        eta(&shifted(1), work)?,
        eta(&shifted(2), work)?,
        eta(&(&t * &BigComplex::from_i64(3, work)), work)?,
    ])
}

/// Factor indices (into `eta_factors`) of each Rᵢ numerator.
const FACTORS: [(usize, usize); 6] = [(3, 0), (3, 1), (3, 2), (0, 2), (0, 1), (2, 1)];

/// Rᵢ(τ) for i = 0..5, e.g. R₂(τ) = η(3τ)η((τ+2)/3)/η(τ)².
pub fn r_function(i: usize, tau: &BigComplex, digits: u32) -> Result<BigComplex> {
    if i >= 6 {
        return Err(Error::Numeric(format!("no eta quotient R{i}")));
    }
    let work = digits + GUARD_DIGITS;
    let t = tau.with_digits(work);
    let (u, v) = FACTORS[i];
    let third = BigComplex::from_rational(&rat(1, 3), work);
    let factor = |k: usize| -> Result<BigComplex> {
        if k == 3 {
            eta(&(&t * &BigComplex::from_i64(3, work)), work)
        } else {
            eta(&(&(&t + &BigComplex::from_i64(k as i64, work)) * &third), work)
        }
    };
    let denom = eta(&t, work)?;
    let value = &(&factor(u)? * &factor(v)?) / &(&denom * &denom);
    Ok(value.with_digits(digits))
}

/// All six Rᵢ(τ), sharing the eta evaluations.
pub fn r_vector(tau: &BigComplex, digits: u32) -> Result<[BigComplex; 6]> {
    let work = digits + GUARD_DIGITS;
    let etas = eta_factors(tau, digits)?;
    let denom = eta(&tau.with_digits(work), work)?;
    let denom2 = &denom * &denom;
    Ok(std::array::from_fn(|i| {
        let (u, v) = FACTORS[i];
        (&(&etas[u] * &etas[v]) / &denom2).with_digits(digits)
    }))
}

pub fn check_n(n: i64) -> Result<()> {
    if n > 0 && n.rem_euclid(24) == 11 {
        Ok(())
    } else {
        Err(Error::InvalidN(n))
    }
}

/// t_n = √3·R₂((−1 + i√n)/2).
pub fn t_n_value(n: i64, digits: u32) -> Result<BigComplex> {
    check_n(n)?;
    let work = digits + GUARD_DIGITS;
    let tau = QuadForm::principal(-n)?.root(work)?;
    let r2 = r_function(2, &tau, work)?;
    let sqrt3 = BigComplex::from_i64(3, work).sqrt();
    Ok((&sqrt3 * &r2).with_digits(digits))
}

/// Moves τ into the standard fundamental domain (|Re τ| ≤ 1/2, |τ| ≥ 1).
pub fn reduce_to_fundamental_domain(tau: &BigComplex) -> Result<BigComplex> {
    check_upper(tau)?;
    let digits = tau.digits();
    let mut t = tau.clone();
    for _ in 0..10_000 {
        let shift = t.re_f64().round();
        if shift != 0.0 {
            t = &t - &BigComplex::from_i64(shift as i64, digits);
        }
        if t.abs_f64() < 1.0 - 1e-15 {
            t = -&t.recip();
        } else {
            return Ok(t);
        }
    }
    Err(Error::Numeric("fundamental domain reduction did not terminate".into()))
}

/// E₄(τ) = 1 + 240 Σ σ₃(k) qᵏ.
fn eisenstein_e4(tau: &BigComplex, digits: u32) -> BigComplex {
    let q = q_power(tau, &rat(1, 1));
    let lq = log10_abs_q(tau);
    let mut sum = BigComplex::zero(digits);
    let mut qk = BigComplex::one(digits);
    let mut k: u64 = 1;
    loop {
        qk = &qk * &q;
        let sigma3: u64 = (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| d * d * d).sum();
        sum = &sum + &(&qk * &BigComplex::from_i64(sigma3 as i64, digits));
        if k as f64 * lq + 3.0 * (k as f64).log10() < -(digits as f64) - 3.0 {
            break;
        }
        k += 1;
    }
    &BigComplex::one(digits) + &(&sum * &BigComplex::from_i64(240, digits))
}

/// j(τ) = E₄(τ)³ / η(τ)²⁴, evaluated after reduction to the fundamental domain.
pub fn j_invariant(tau: &BigComplex, digits: u32) -> Result<BigComplex> {
    let work = digits + GUARD_DIGITS;
    let t = reduce_to_fundamental_domain(&tau.with_digits(work))?;
    let e4 = eisenstein_e4(&t, work);
    let delta = eta(&t, work)?.powi(24);
    Ok((&e4.powi(3) / &delta).with_digits(digits))
}

/// Decimal digits for the Hilbert class polynomial of discriminant −n:
/// |j(τ)| ≈ e^{π√n/a}, so the largest coefficient has about
/// (π√n/ln 10)·Σ 1/a digits.
pub fn hilbert_precision(n: u64, forms: &[QuadForm]) -> u32 {
    let inv_a: f64 = forms
        .iter()
        .map(|f| 1.0 / f.a_i64().unwrap_or(i64::MAX) as f64)
        .sum();
    let bound = std::f64::consts::PI * (n as f64).sqrt() / std::f64::consts::LN_10 * inv_a;
    bound.ceil() as u32 + 20
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 60;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, D)
    }

    #[test]
    fn eta_at_i() {
        let e = eta(&BigComplex::i(D), D).unwrap();
        assert!((e.re_f64() - 0.768_225_422_326_056_6).abs() < 1e-15);
        assert!(e.im_f64().abs() < 1e-50);
        let p = eta_product(&BigComplex::i(D), D, 200).unwrap();
        assert!((&e - &p).abs_f64() < 1e-50);
    }

    #[test]
    fn eta_rejects_lower_half_plane() {
        assert_eq!(eta(&c(0.3, -1.0), D).unwrap_err(), Error::NotInUpperHalfPlane);
        assert_eq!(eta(&c(0.3, 0.0), D).unwrap_err(), Error::NotInUpperHalfPlane);
        assert!(r_function(6, &c(0.0, 1.0), D).is_err());
    }

    #[test]
    fn principal_value_n11_is_one() {
        let t = t_n_value(11, D).unwrap();
        assert!((&t - &BigComplex::one(D)).abs_f64() < 1e-55);
        assert!(t_n_value(12, D).is_err());
    }

    #[test]
    fn golden_ratio_for_n35() {
        let t = t_n_value(35, D).unwrap();
        let phi = (&BigComplex::from_i64(5, D).sqrt() - &BigComplex::one(D))
            / BigComplex::from_i64(2, D);
        assert!((&t - &phi).abs_f64() < 1e-55);
    }

    #[test]
    fn j_special_values() {
        let j_i = j_invariant(&BigComplex::i(D), D).unwrap();
        assert!((&j_i - &BigComplex::from_i64(1728, D)).abs_f64() < 1e-45);
        let rho = QuadForm::new(1, 1, 1).root(D).unwrap();
        assert!(j_invariant(&rho, D).unwrap().abs_f64() < 1e-45);
        // invariance under τ ↦ −1/τ + 5
        let t = c(0.1, 0.9);
        let moved = &(-&t.recip()) + &BigComplex::from_i64(5, D);
        let diff = (&j_invariant(&t, D).unwrap() - &j_invariant(&moved, D).unwrap()).abs_f64();
        assert!(diff < 1e-40);
    }

    #[test]
    fn j_root_sum_for_107() {
        let forms = crate::quadform::enumerate(-107).unwrap();
        let prec = hilbert_precision(107, &forms);
        let mut sum = BigComplex::zero(prec);
        for f in &forms {
            sum = &sum + &j_invariant(&f.root(prec).unwrap(), prec).unwrap();
        }
        let (k, r) = sum.round_to_integer().unwrap();
        assert_eq!(k, "-129783279616000".parse().unwrap());
        assert!(r < 1e-10);
    }

    #[test]
    fn fundamental_domain() {
        let t = reduce_to_fundamental_domain(&c(3.7, 0.05)).unwrap();
        assert!(t.re_f64().abs() <= 0.5 + 1e-12);
        assert!(t.abs_f64() >= 1.0 - 1e-12);
    }
}
