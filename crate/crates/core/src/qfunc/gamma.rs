use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hp::{HPComplex, HPReal, Precision};
use crate::error::{Error, Result};

thread_local! {
    // B_0, B_1, B_2, ... as exact rationals, extended on demand.
    static BERNOULLI: RefCell<Vec<BigRational>> = RefCell::new(vec![BigRational::one()]);
}

fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..m {
        let next = &row[k] * BigInt::from(m - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Exact Bernoulli number `B_{2k}` (with `B_1 = -1/2` convention), from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_even(k: usize) -> BigRational {
    let idx = 2 * k;
    BERNOULLI.with(|cache| {
        let mut b = cache.borrow_mut();
        while b.len() <= idx {
            let m = b.len();
            let row = binomial_row(m + 1);
            let s: BigRational = b
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| v * BigRational::from_integer(row[j].clone()))
                .sum();
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b[idx].clone()
    })
}

/// `ln Γ(w)` by the Stirling series for `Re w` large. Terms are added until
/// the first omitted one, scaled by `sec^{2k+2}(arg w / 2)`, is below the
/// working epsilon.
pub fn ln_gamma_stirling(w: &HPComplex, prec: Precision) -> Result<HPComplex> {
    if !w.re.is_positive() {
        return Err(Error::InvalidArgument("Stirling series needs Re w > 0".into()));
    }
    let eps = prec.epsilon();
    let half = HPComplex::from_ratio(1, 2, prec);
    let two_pi = HPReal::pi(prec) * HPReal::from_i64(2, prec);
    let ln_w = w.ln()?;
    let mut acc = &(&(w - &half) * &ln_w) - w;
    acc = &acc + &HPComplex::from_real(two_pi.ln()? * HPReal::from_ratio(1, 2, prec));

    let theta = w.arg().to_f64().abs();
    let sec_half = 1.0 / (theta / 2.0).cos();
    let inv_w = w.recip();
    let inv_w2 = &inv_w * &inv_w;
    let mut w_pow = inv_w.clone(); // w^{-(2k-1)}
    let max_terms = 4 * prec.working_digits() as usize + 20;
    for k in 1..=max_terms {
        let b = HPReal::from_rational(&bernoulli_even(k), prec);
        let denom = HPReal::from_u64((2 * k * (2 * k - 1)) as u64, prec);
        let term = w_pow.scale(&(b / denom));
        let mag = term.abs();
        let bound = &mag * &HPReal::from_f64(sec_half.powi(2 * k as i32 + 2), prec)?;
        if bound < eps {
            return Ok(acc);
        }
        acc = &acc + &term;
        w_pow = &w_pow * &inv_w2;
    }
    Err(Error::NonConvergent(
        "Stirling series did not reach the target precision".into(),
    ))
}

/// Classical gamma function for complex arguments away from the poles at
/// the non-positive integers. The argument is shifted up by an integer `s`
/// until `Re(x + s)` exceeds the working digit count, where the Stirling
/// series converges quickly, and the recurrence is undone by dividing out
/// `x (x+1) ... (x+s-1)`.
pub fn gamma_classical(x: &HPComplex, prec: Precision) -> Result<HPComplex> {
    let eps = prec.epsilon();
    let re = x.re.to_f64();
    if x.im.is_zero() && re <= 0.5 {
        let r = x.re.round_to_integer();
        let near = HPReal::from_bigint(&r, prec);
        if (&x.re - &near).abs() < eps && r <= BigInt::zero() {
            return Err(Error::Singular(format!("gamma pole at {x:?}")));
        }
    }
    let target = f64::from(prec.working_digits()).max(20.0);
    let shift = if re < target { (target - re).ceil() as u64 } else { 0 };
    let mut w = x.clone();
    let mut divisor = HPComplex::one(prec);
    let one = HPComplex::one(prec);
    for _ in 0..shift {
        if w.abs() < eps {
            return Err(Error::Singular(format!("gamma pole at {x:?}")));
        }
        divisor = &divisor * &w;
        w = &w + &one;
    }
    let lg = ln_gamma_stirling(&w, prec)?;
    Ok(&lg.exp() / &divisor)
}
