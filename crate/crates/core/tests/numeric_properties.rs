use proptest::prelude::*;
use tn_core::numeric::modular::{eta, eta_product, r_vector, t_n_value};
use tn_core::quadform::enumerate;
use tn_core::BigComplex;

const DIGITS: u32 = 50;

fn arb_tau() -> impl Strategy<Value = BigComplex> {
    (-0.5f64..0.5, 0.5f64..2.0).prop_map(|(x, y)| BigComplex::from_f64(x, y, DIGITS))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn series_and_product_agree(tau in arb_tau()) {
        let s = eta(&tau, DIGITS).unwrap();
        let p = eta_product(&tau, DIGITS, 400).unwrap();
        prop_assert!((&s - &p).abs_f64() / s.abs_f64() < 1e-47);
    }

    #[test]
    fn level_72_periodicity(tau in arb_tau()) {
        let shifted = &tau + &BigComplex::from_i64(72, DIGITS);
        let a = r_vector(&tau, DIGITS).unwrap();
        let b = r_vector(&shifted, DIGITS).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs_f64() / x.abs_f64() < 1e-40);
        }
    }
}

#[test]
fn t_n_is_real() {
    for n in (11..1000).step_by(24) {
        let t = t_n_value(n, 60).unwrap();
        assert!(t.im_f64().abs() < 1e-55, "n = {n}");
    }
}

#[test]
fn reduced_roots_lie_high_enough() {
    let bound = 3f64.sqrt() / 2.0 - 1e-12;
    for n in (11..1000).step_by(24) {
        for f in enumerate(-n).unwrap() {
            assert_eq!(f.discriminant(), (-n).into());
            assert!(f.root(30).unwrap().im_f64() >= bound, "{f:?}");
        }
    }
}
