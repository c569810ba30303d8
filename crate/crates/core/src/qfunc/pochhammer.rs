use std::fmt;

use super::hp::{HPComplex, HPReal, Precision};
use crate::error::{Error, Result};

/// A base `q` in the open interval `(0, 1)`, with its logarithm cached.
#[derive(Clone)]
pub struct QParam {
    q: HPReal,
    ln_q: HPReal,
}

impl QParam {
    pub fn new(q: HPReal) -> Result<Self> {
        let one = q.powi(0);
        if !q.is_positive() || q >= one {
            return Err(Error::InvalidArgument(format!("q must lie in (0, 1), got {q:?}")));
        }
        let ln_q = q.ln()?;
        Ok(Self { q, ln_q })
    }

    /// `q = exp(ln_q)` for a negative logarithm; keeps `ln q` exact for
    /// bases like `e^{-π}`.
    pub fn from_ln(ln_q: HPReal) -> Result<Self> {
        if !ln_q.is_negative() {
            return Err(Error::InvalidArgument("ln q must be negative".into()));
        }
        Ok(Self { q: ln_q.exp(), ln_q })
    }

    pub fn value(&self) -> &HPReal {
        &self.q
    }

    pub fn ln(&self) -> &HPReal {
        &self.ln_q
    }

    pub fn ln_f64(&self) -> f64 {
        self.ln_q.to_f64()
    }

    /// `q^x = exp(x ln q)`, principal branch.
    pub fn power(&self, x: &HPComplex) -> HPComplex {
        x.scale(&self.ln_q).exp()
    }

    pub fn power_real(&self, x: &HPReal) -> HPReal {
        (x * &self.ln_q).exp()
    }

    /// The base `q^k`.
    pub fn pow_base(&self, k: i64, prec: Precision) -> QParam {
        let ln = &self.ln_q * &HPReal::from_i64(k, prec);
        Self { q: ln.exp(), ln_q: ln }
    }

    /// The base `q^(1/n)`.
    pub fn root_base(&self, n: u64, prec: Precision) -> QParam {
        let ln = &self.ln_q / &HPReal::from_u64(n, prec);
        Self { q: ln.exp(), ln_q: ln }
    }
}

impl fmt::Debug for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QParam({:?})", self.q)
    }
}

/// Number of factors in a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLength {
    Finite(u64),
    Infinite,
}

/// First index `N` of a geometric tail `c·q^n` (`n >= N`) such that every
/// tail term is at most `1/2` and the tail's total log-contribution bound
/// `2 c q^N / (1 - q)` is below `exp(ln_eps)`. Uses `|log(1-u)| <= 2|u|`
/// for `|u| <= 1/2`.
pub fn geometric_tail_start(ln_c: f64, ln_q: f64, ln_eps: f64) -> u64 {
    assert!(ln_q < 0.0, "geometric tail needs 0 < q < 1");
    let rate = -ln_q;
    let ln_one_minus_q = (-ln_q.exp_m1()).ln();
    let half = (ln_c - 0.5f64.ln()) / rate;
    let tol = (std::f64::consts::LN_2 + ln_c - ln_one_minus_q - ln_eps) / rate;
    let n = half.max(tol).max(0.0).ceil() + 1.0;
    n as u64
}

/// `∏_{k < terms} (1 - a q^k)`. With `singular_check`, a factor whose
/// modulus falls below `10^-(digits+guard)` is reported as an error.
pub(crate) fn poch_product(
    a: &HPComplex,
    q: &QParam,
    terms: u64,
    prec: Precision,
    singular_check: bool,
) -> Result<HPComplex> {
    let one = HPComplex::one(prec);
    let eps = prec.epsilon();
    let qv = q.value().clone();
    let mut u = a.clone();
    let mut acc = one.clone();
    for _ in 0..terms {
        let factor = &one - &u;
        if singular_check {
            let (re, im) = (u.re.to_f64(), u.im.to_f64());
            if re * re + im * im > 0.25 && factor.abs() < eps {
                return Err(Error::Singular(format!("factor 1 - {u:?} vanishes")));
            }
        }
        acc = &acc * &factor;
        u = u.scale(&qv);
    }
    Ok(acc)
}

/// Truncation point of `(a; q)_∞`.
pub(crate) fn poch_terms(a: &HPComplex, q: &QParam, prec: Precision) -> u64 {
    let mag = a.abs();
    if mag.is_zero() {
        return 0;
    }
    let ln_c = mag.log10_abs_approx() * std::f64::consts::LN_10;
    geometric_tail_start(ln_c, q.ln_f64(), prec.ln_epsilon())
}

/// `(a; q)_n`, or `(a; q)_∞` truncated once the neglected tail is below
/// `10^-(digits+guard)`.
pub fn qpochhammer(a: &HPComplex, q: &QParam, len: PochLength, prec: Precision) -> Result<HPComplex> {
    let terms = match len {
        PochLength::Finite(n) => n,
        PochLength::Infinite => poch_terms(a, q, prec),
    };
    poch_product(a, q, terms, prec, false)
}

/// Euler's function `(q; q)_∞`.
pub fn euler_function(q: &QParam, prec: Precision) -> HPComplex {
    let a = HPComplex::from_real(q.value().clone());
    qpochhammer(&a, q, PochLength::Infinite, prec).expect("infinite product of a finite base")
}

/// `Γ_q(x) = (1-q)^{1-x} (q;q)_∞ / (q^x;q)_∞`.
pub fn qgamma(x: &HPComplex, q: &QParam, prec: Precision) -> Result<HPComplex> {
    qgamma_scaled(x, q, prec, 1)
}

/// [`qgamma`] with both infinite products run to `scale` times their
/// usual truncation point.
pub(crate) fn qgamma_scaled(x: &HPComplex, q: &QParam, prec: Precision, scale: u64) -> Result<HPComplex> {
    let one = HPComplex::one(prec);
    let qx = q.power(x);
    let den = poch_product(&qx, q, poch_terms(&qx, q, prec) * scale, prec, true)
        .map_err(|_| Error::Singular(format!("q-gamma pole at x = {x:?}")))?;
    let qq = HPComplex::from_real(q.value().clone());
    let euler = poch_product(&qq, q, poch_terms(&qq, q, prec) * scale, prec, false)?;
    let one_minus_q = &HPReal::one(prec) - q.value();
    let prefactor = (&one - x).scale(&one_minus_q.ln()?).exp();
    Ok(&(&prefactor * &euler) / &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::new(40).unwrap()
    }

    fn q(num: i64, den: i64) -> QParam {
        QParam::new(HPReal::from_ratio(num, den, prec())).unwrap()
    }

    fn close(a: &HPComplex, b: &HPComplex, digits: i64) -> bool {
        let tol = HPReal::from_i64(10, prec()).powi(-digits);
        let one = HPReal::one(prec());
        let scale = if b.abs() > one { b.abs() } else { one };
        (a - b).abs() <= tol * scale
    }

    #[test]
    fn finite_products() {
        let a = HPComplex::from_ratio(1, 3, prec());
        let qq = q(1, 2);
        let p0 = qpochhammer(&a, &qq, PochLength::Finite(0), prec()).unwrap();
        assert_eq!(p0, HPComplex::one(prec()));
        let p2 = qpochhammer(&a, &qq, PochLength::Finite(2), prec()).unwrap();
        let want = HPComplex::from_ratio(2, 3, prec()) * HPComplex::from_ratio(5, 6, prec());
        assert!(close(&p2, &want, 45));
    }

    #[test]
    fn euler_function_at_one_half() {
        // Oracle: partial products of (1 - 2^-k), run to 200 terms in exact
        // rational arithmetic; the neglected tail is below 2^-200.
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let mut acc = BigRational::from_integer(1.into());
        for k in 1..=200u32 {
            let two_k = BigInt::from(2).pow(k);
            acc *= BigRational::new(&two_k - 1, two_k);
        }
        let oracle = HPReal::from_rational(&acc, prec());
        let e = euler_function(&q(1, 2), prec());
        assert!(close(&e, &HPComplex::from_real(oracle), 45));
        assert!(e.re.to_decimal_string(13).starts_with("2.887880950866"));
    }

    #[test]
    fn qgamma_at_one_is_one() {
        for (n, d) in [(1, 10), (1, 2), (9, 10)] {
            let g = qgamma(&HPComplex::one(prec()), &q(n, d), prec()).unwrap();
            assert!(close(&g, &HPComplex::one(prec()), 45), "q = {n}/{d}: {g:?}");
        }
    }

    #[test]
    fn qgamma_at_three() {
        let qq = q(3, 10);
        let g = qgamma(&HPComplex::from_i64(3, prec()), &qq, prec()).unwrap();
        let want = HPComplex::from_ratio(13, 10, prec());
        assert!(close(&g, &want, 45));
    }

    #[test]
    fn qgamma_poles_are_reported() {
        let qq = q(1, 2);
        for x in [0i64, -1, -3] {
            let r = qgamma(&HPComplex::from_i64(x, prec()), &qq, prec());
            assert!(matches!(r, Err(Error::Singular(_))), "x = {x}");
        }
    }

    #[test]
    fn qparam_validation() {
        assert!(QParam::new(HPReal::from_i64(1, prec())).is_err());
        assert!(QParam::new(HPReal::zero(prec())).is_err());
        assert!(QParam::new(HPReal::from_i64(-1, prec())).is_err());
        assert!(QParam::from_ln(HPReal::from_i64(1, prec())).is_err());
    }

    #[test]
    fn tail_start_is_monotone_in_tolerance() {
        let a = geometric_tail_start(0.0, (0.5f64).ln(), -50.0);
        let b = geometric_tail_start(0.0, (0.5f64).ln(), -100.0);
        assert!(b > a);
        // 2 q^N / (1-q) < e^-50 at q = 1/2 needs N > (ln 4 + 50)/ln 2
        assert!(a as f64 >= (4f64.ln() + 50.0) / 2f64.ln());
    }
}
