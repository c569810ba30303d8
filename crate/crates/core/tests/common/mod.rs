#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use qprod::products::Scalar;
use qprod::{HPComplex, HPReal, Precision};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn prec(digits: u32) -> Precision {
    Precision::new(digits).unwrap()
}

pub fn ratio(n: i64, d: i64, p: Precision) -> HPReal {
    HPReal::from_ratio(n, d, p)
}

/// `base^(n/d)` through exp/log.
pub fn pow_ratio(base: &HPReal, n: i64, d: i64, p: Precision) -> HPReal {
    (base.ln().unwrap() * ratio(n, d, p)).exp()
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: &HPReal, b: &HPReal, p: Precision) -> HPReal {
    let (mut a, mut b) = (a.clone(), b.clone());
    let half = ratio(1, 2, p);
    let eps = p.epsilon();
    for _ in 0..200 {
        let next_a = (&a + &b) * half.clone();
        let next_b = (&a * &b).sqrt().unwrap();
        let done = (&next_a - &next_b).abs() < eps;
        a = next_a;
        b = next_b;
        if done {
            break;
        }
    }
    a
}

/// `Γ(1/4)^2 = (2π)^{3/2} / AGM(1, √2)`.
pub fn gamma_quarter_agm(p: Precision) -> HPReal {
    let two = HPReal::from_i64(2, p);
    let two_pi = &two * &HPReal::pi(p);
    let m = agm(&HPReal::one(p), &two.sqrt().unwrap(), p);
    (pow_ratio(&two_pi, 3, 2, p) / m).sqrt().unwrap()
}

/// `e^{(n/d) π}`.
fn exp_pi(n: i64, d: i64, p: Precision) -> HPReal {
    (HPReal::pi(p) * ratio(n, d, p)).exp()
}

fn sqrt_one_plus_sqrt2(p: Precision) -> HPReal {
    (HPReal::one(p) + HPReal::from_i64(2, p).sqrt().unwrap())
        .sqrt()
        .unwrap()
}

fn pi_pow(n: i64, d: i64, p: Precision) -> HPReal {
    pow_ratio(&HPReal::pi(p), n, d, p)
}

fn two_pow(n: i64, d: i64, p: Precision) -> HPReal {
    pow_ratio(&HPReal::from_i64(2, p), n, d, p)
}

/// Closed forms of the four product evaluations at `q = e^{-π}` and
/// `q = e^{-2π}`, built from the supplied `Γ(1/4)`. The second one at
/// `e^{-2π}` carries the `1/√(1+√2)` correction.
pub fn example_oracle(name: &str, g: &HPReal, p: Precision) -> HPReal {
    let one = HPReal::one(p);
    let g2 = g * g;
    match name {
        "EX1A" => exp_pi(3, 8, p) * (&one - &exp_pi(-1, 1, p)) * g2 / (two_pow(23, 8, p) * pi_pow(3, 2, p)),
        "EX1B" => two_pow(5, 8, p) * exp_pi(-1, 8, p) / (&one + &exp_pi(-1, 1, p)),
        "EX2A" => {
            exp_pi(3, 4, p) * (&one - &exp_pi(-2, 1, p)) * g2
                / (HPReal::from_i64(16, p) * pi_pow(3, 2, p) * sqrt_one_plus_sqrt2(p))
        }
        "EX2A_PRINTED" => {
            exp_pi(3, 4, p) * (&one - &exp_pi(-2, 1, p)) * g2 / (HPReal::from_i64(16, p) * pi_pow(3, 2, p))
        }
        "EX2B" => {
            let s = (HPReal::from_i64(2, p) + HPReal::from_i64(2, p) * HPReal::from_i64(2, p).sqrt().unwrap())
                .sqrt()
                .unwrap();
            s * exp_pi(-1, 4, p) / (&one + &exp_pi(-2, 1, p))
        }
        other => panic!("no oracle for {other}"),
    }
}

/// Closed forms of `Γ_q(1/4)Γ_q(3/4)` and `Γ_q(1/2)` at `q = e^{-4π}` and
/// `q = e^{-8π}`, in the order of the `JACKSON1..4` identity ids.
pub fn jackson_oracle(index: usize, g: &HPReal, p: Precision) -> HPReal {
    let one = HPReal::one(p);
    match index {
        1 => exp_pi(-29, 8, p) * (exp_pi(4, 1, p) - one) * (g * g) / (two_pow(23, 8, p) * pi_pow(3, 2, p)),
        2 => {
            exp_pi(-7, 4, p) * (exp_pi(4, 1, p) - one).sqrt().unwrap() * g.clone()
                / (two_pow(7, 4, p) * pi_pow(3, 4, p))
        }
        3 => {
            exp_pi(-7, 2, p) * (exp_pi(8, 1, p) - one).sqrt().unwrap() * g.clone()
                / (two_pow(9, 4, p) * pi_pow(3, 4, p) * sqrt_one_plus_sqrt2(p))
        }
        4 => {
            exp_pi(-29, 4, p) * (exp_pi(8, 1, p) - one) * (g * g)
                / (HPReal::from_i64(16, p) * pi_pow(3, 2, p) * sqrt_one_plus_sqrt2(p))
        }
        _ => panic!("jackson index {index}"),
    }
}

/// `|a - b| / max(|a|, |b|)` as an `f64`-friendly log10.
pub fn digits_between(a: &HPComplex, b: &HPComplex) -> f64 {
    let d = (a - b).abs();
    let s = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    if d.is_zero() {
        return f64::INFINITY;
    }
    -(d / s).log10_abs_approx()
}

fn exact(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_entry(rng: &mut ChaCha8Rng) -> (BigRational, BigRational) {
    (
        exact(rng.gen_range(200..=3000), 1000),
        exact(rng.gen_range(-500..=500), 1000),
    )
}

fn in_range((re, im): &(BigRational, BigRational)) -> bool {
    *re >= exact(1, 5) && *re <= exact(3, 1) && *im >= exact(-1, 2) && *im <= exact(1, 2)
}

/// Random parameter lists of equal length `1..=4` with entries whose real
/// part lies in `[0.2, 3]` and imaginary part in `[-0.5, 0.5]`; the last `β`
/// is set so that `∑α = ∑β`, redrawing until it also lies in range.
pub fn balanced_lists(rng: &mut ChaCha8Rng) -> (Vec<Scalar>, Vec<Scalar>) {
    loop {
        let len = rng.gen_range(1..=4usize);
        let alphas: Vec<_> = (0..len).map(|_| random_entry(rng)).collect();
        let mut betas: Vec<_> = (0..len - 1).map(|_| random_entry(rng)).collect();
        let sum = |xs: &[(BigRational, BigRational)]| {
            xs.iter()
                .fold((exact(0, 1), exact(0, 1)), |(a, b), (x, y)| (a + x, b + y))
        };
        let (sa, sb) = (sum(&alphas), sum(&betas));
        let last = (sa.0 - sb.0, sa.1 - sb.1);
        if !in_range(&last) {
            continue;
        }
        betas.push(last);
        let conv =
            |xs: Vec<(BigRational, BigRational)>| xs.into_iter().map(|(r, i)| Scalar::from_exact(r, i)).collect();
        return (conv(alphas), conv(betas));
    }
}
