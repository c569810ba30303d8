mod common;

use common::{digits_between, prec};
use proptest::prelude::*;
use qprod::qfunc::{
    euler_function, gamma_classical, jackson_value, qgamma, qpochhammer, JacksonId, PochLength, QParam,
};
use qprod::{HPComplex, HPReal, Precision};

fn qparam(num: i64, den: i64, p: Precision) -> QParam {
    QParam::new(HPReal::from_ratio(num, den, p)).unwrap()
}

fn complex(re: f64, im: f64, p: Precision) -> HPComplex {
    HPComplex::new(HPReal::from_f64(re, p).unwrap(), HPReal::from_f64(im, p).unwrap())
}

const FE_DIGITS: u32 = 40;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn functional_equation(re in 0.01f64..2.99, im in -2.0f64..2.0, qi in 0usize..3) {
        let p = prec(FE_DIGITS);
        let (n, d) = [(1, 5), (3, 5), (9, 10)][qi];
        let q = qparam(n, d, p);
        let x = complex(re, im, p);
        let x1 = &x + &HPComplex::one(p);
        let lhs = qgamma(&x1, &q, p).unwrap();
        let one = HPComplex::one(p);
        let factor = &(&one - &q.power(&x)) / &(&one - &HPComplex::from_real(q.value().clone()));
        let rhs = &factor * &qgamma(&x, &q, p).unwrap();
        let agreed = digits_between(&lhs, &rhs);
        prop_assert!(agreed >= f64::from(FE_DIGITS - 5), "x = {re}+{im}i, q = {n}/{d}: {agreed}");
    }
}

#[test]
fn dissection() {
    let p = prec(40);
    for (num, den) in [(3, 10), (7, 10)] {
        let q = qparam(num, den, p);
        for n in 2..=8u64 {
            let root = q.root_base(n, p);
            let lhs = (1..=n).fold(HPComplex::one(p), |acc, k| {
                let a = HPComplex::from_real(root.value().clone()).powi(k as i64);
                &acc * &qpochhammer(&a, &q, PochLength::Infinite, p).unwrap()
            });
            let rhs = euler_function(&root, p);
            assert!(digits_between(&lhs, &rhs) >= 35.0, "q={num}/{den} n={n}");
        }
    }
}

#[test]
fn euler_function_matches_pentagonal_series() {
    let p = prec(50);
    for (num, den) in [(1, 10), (1, 2), (4, 5)] {
        let q = qparam(num, den, p);
        let qv = q.value().clone();
        let mut series = HPReal::one(p);
        let eps = p.epsilon();
        for k in 1i64.. {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let a = qv.powi(k * (3 * k - 1) / 2);
            let b = qv.powi(k * (3 * k + 1) / 2);
            let t = &a + &b;
            series = series + HPReal::from_i64(sign, p) * t.clone();
            if t < eps {
                break;
            }
        }
        let direct = euler_function(&q, p);
        assert!(
            digits_between(&direct, &HPComplex::from_real(series)) >= 45.0,
            "q={num}/{den}"
        );
    }
}

#[test]
fn finite_pochhammer_is_plain_product() {
    let p = prec(30);
    let q = qparam(2, 3, p);
    let a = complex(0.3, -0.7, p);
    let mut expected = HPComplex::one(p);
    for k in 0..12 {
        let f = &HPComplex::one(p) - &(&a * &HPComplex::from_real(q.value().powi(k)));
        expected = &expected * &f;
    }
    let got = qpochhammer(&a, &q, PochLength::Finite(12), p).unwrap();
    assert!(digits_between(&got, &expected) >= 35.0);
    assert_eq!(
        qpochhammer(&a, &q, PochLength::Finite(0), p).unwrap(),
        HPComplex::one(p)
    );
}

#[test]
fn qgamma_at_one_and_two_is_one() {
    let p = prec(40);
    let q = qparam(1, 2, p);
    for x in [1, 2] {
        let v = qgamma(&HPComplex::from_i64(x, p), &q, p).unwrap();
        assert!(digits_between(&v, &HPComplex::one(p)) >= 40.0, "x = {x}");
    }
}

#[test]
fn q_to_one_approaches_classical_gamma() {
    let p = prec(20);
    let half = HPComplex::from_ratio(1, 2, p);
    let target = gamma_classical(&half, p).unwrap();
    let errs: Vec<f64> = [(9, 10), (99, 100), (999, 1000)]
        .into_iter()
        .map(|(n, d)| (&qgamma(&half, &qparam(n, d, p), p).unwrap() - &target).abs().to_f64())
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let last = qgamma(&half, &qparam(999, 1000, p), p).unwrap().re.to_f64();
    assert!((last - sqrt_pi).abs() < 0.01, "{last}");
}

#[test]
fn classical_gamma_quarter_matches_agm() {
    let p = prec(60);
    let g = gamma_classical(&HPComplex::from_ratio(1, 4, p), p).unwrap();
    let agm = common::gamma_quarter_agm(p);
    let diff = (&g.re - &agm).abs();
    assert!(diff < HPReal::from_i64(10, p).powi(-50), "{diff:?}");
    assert!(g.im.is_zero() || g.im.abs() < HPReal::from_i64(10, p).powi(-60));
}

#[test]
fn classical_gamma_half_is_sqrt_pi() {
    let p = prec(50);
    let g = gamma_classical(&HPComplex::from_ratio(1, 2, p), p).unwrap();
    let sqrt_pi = HPComplex::from_real(HPReal::pi(p).sqrt().unwrap());
    assert!(digits_between(&g, &sqrt_pi) >= 48.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn classical_gamma_reflection(re in 0.05f64..0.95, im in -3.0f64..3.0) {
        let p = prec(30);
        let z = complex(re, im, p);
        let one_minus = &HPComplex::one(p) - &z;
        let lhs = &gamma_classical(&z, p).unwrap() * &gamma_classical(&one_minus, p).unwrap();
        let pi = HPReal::pi(p);
        let pz = z.scale(&pi);
        let i = HPComplex::i(p);
        let two_i = &i + &i;
        let sin = &(&(&pz * &i).exp() - &(&(&pz * &i) * &HPComplex::from_i64(-1, p)).exp()) / &two_i;
        let rhs = &HPComplex::from_real(pi) / &sin;
        prop_assert!(digits_between(&lhs, &rhs) >= 27.0);
    }
}

#[test]
fn jackson_closed_forms_match_agm_oracle() {
    let p = prec(60);
    let g = common::gamma_quarter_agm(p);
    for (index, id) in JacksonId::ALL.into_iter().enumerate() {
        let closed = jackson_value(id, p).unwrap();
        let oracle = common::jackson_oracle(index + 1, &g, p);
        assert!(
            digits_between(&HPComplex::from_real(closed), &HPComplex::from_real(oracle)) >= 55.0,
            "{id:?}"
        );
    }
}

#[test]
fn outputs_are_deterministic() {
    let p = prec(50);
    let q = qparam(3, 7, p);
    let x = HPComplex::new(HPReal::from_ratio(1, 3, p), HPReal::from_ratio(-2, 9, p));
    let a = qgamma(&x, &q, p).unwrap().to_decimal_string(50);
    let b = qgamma(&x, &q, p).unwrap().to_decimal_string(50);
    assert_eq!(a, b);
    let g1 = gamma_classical(&x, p).unwrap().to_decimal_string(50);
    let g2 = gamma_classical(&x, p).unwrap().to_decimal_string(50);
    assert_eq!(g1, g2);
}
