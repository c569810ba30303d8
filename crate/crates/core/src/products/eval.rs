//! Evaluators working on plain numeric inputs. Character-indexed products
//! take the value table `values[r] = χ(r)` for `r` in `0..k`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, psi_reduced, totient, von_mangoldt, IntPolynomial};
use crate::qfunc::{
    gamma_classical, geometric_tail_start, qgamma_scaled, qpochhammer, von_mangoldt_value, HPComplex, HPReal,
    PochLength, Precision, QParam,
};

/// A computed side of an identity.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: HPComplex,
    /// Estimated relative error from truncation, when the side is truncated.
    pub error_estimate: Option<f64>,
    /// Number of factors (or blocks) multiplied.
    pub terms: Option<u64>,
}

impl Evaluation {
    fn exact(value: HPComplex) -> Self {
        Self {
            value,
            error_estimate: None,
            terms: None,
        }
    }
}

/// Relative bound `2 c q^N / (1 - q)` on a geometric tail starting at `N`.
fn tail_bound(ln_c: f64, ln_q: f64, n: u64) -> f64 {
    let ln_one_minus_q = (-ln_q.exp_m1()).ln();
    (std::f64::consts::LN_2 + ln_c + n as f64 * ln_q - ln_one_minus_q).exp()
}

fn one_minus(x: &HPComplex, prec: Precision) -> HPComplex {
    &HPComplex::one(prec) - x
}

/// `∏_{n≥0} ∏_j (1 - q^{n+α_j}) / (1 - q^{n+β_j})`.
pub fn thm1_lhs(
    alphas: &[HPComplex],
    betas: &[HPComplex],
    q: &QParam,
    prec: Precision,
    scale: u64,
) -> Result<Evaluation> {
    let a: Vec<HPComplex> = alphas.iter().map(|x| q.power(x)).collect();
    let b: Vec<HPComplex> = betas.iter().map(|x| q.power(x)).collect();
    let c: f64 = a.iter().chain(&b).map(|u| u.abs().to_f64()).sum();
    let ln_c = c.max(f64::MIN_POSITIVE).ln();
    let n0 = geometric_tail_start(ln_c, q.ln_f64(), prec.ln_epsilon());
    let terms = n0 * scale;
    let eps = prec.epsilon();
    let qv = q.value().clone();
    let mut num = HPComplex::one(prec);
    let mut den = HPComplex::one(prec);
    let (mut a, mut b) = (a, b);
    for _ in 0..terms {
        for u in &mut a {
            num = &num * &one_minus(u, prec);
            *u = u.scale(&qv);
        }
        for u in &mut b {
            let f = one_minus(u, prec);
            if f.abs() < eps {
                return Err(Error::Singular("denominator factor 1 - q^(n+beta) vanishes".into()));
            }
            den = &den * &f;
            *u = u.scale(&qv);
        }
    }
    Ok(Evaluation {
        value: &num / &den,
        error_estimate: Some(tail_bound(ln_c, q.ln_f64(), terms)),
        terms: Some(terms),
    })
}

/// `∏_j Γ_q(β_j) / Γ_q(α_j)`.
pub fn thm1_rhs(alphas: &[HPComplex], betas: &[HPComplex], q: &QParam, prec: Precision) -> Result<Evaluation> {
    let mut acc = HPComplex::one(prec);
    for (a, b) in alphas.iter().zip(betas) {
        acc = &(&acc * &qgamma_scaled(b, q, prec, 1)?) / &qgamma_scaled(a, q, prec, 1)?;
    }
    Ok(Evaluation::exact(acc))
}

/// `∏_{n=0}^{N-1} ∏_j (n + α_j) / (n + β_j)` with a bound on the neglected
/// tail. With `∑α = ∑β` the log of the tail is
/// `-S_2 ∑ 1/(2n^2) + S_3 ∑ 1/(3n^3) + ...` where `S_m = ∑α^m - ∑β^m`.
pub fn cor2_lhs(alphas: &[HPComplex], betas: &[HPComplex], terms: u64, prec: Precision) -> Result<Evaluation> {
    let mut acc = HPComplex::one(prec);
    for n in 0..terms {
        let nn = HPComplex::from_real(HPReal::from_u64(n, prec));
        let mut num = HPComplex::one(prec);
        let mut den = HPComplex::one(prec);
        for (a, b) in alphas.iter().zip(betas) {
            num = &num * &(&nn + a);
            den = &den * &(&nn + b);
        }
        if den.is_zero() {
            return Err(Error::Singular(format!("factor n + beta vanishes at n = {n}")));
        }
        acc = &(&acc * &num) / &den;
    }
    Ok(Evaluation {
        value: acc,
        error_estimate: cor2_error_estimate(alphas, betas, terms),
        terms: Some(terms),
    })
}

fn cor2_error_estimate(alphas: &[HPComplex], betas: &[HPComplex], terms: u64) -> Option<f64> {
    let to_c = |z: &HPComplex| (z.re.to_f64(), z.im.to_f64());
    let pow = |(x, y): (f64, f64), m: i32| {
        let r = (x * x + y * y).sqrt().powi(m);
        let t = y.atan2(x) * f64::from(m);
        (r * t.cos(), r * t.sin())
    };
    let power_sum_diff = |m: i32| {
        let (mut re, mut im) = (0.0, 0.0);
        for a in alphas {
            let (x, y) = pow(to_c(a), m);
            re += x;
            im += y;
        }
        for b in betas {
            let (x, y) = pow(to_c(b), m);
            re -= x;
            im -= y;
        }
        (re * re + im * im).sqrt()
    };
    let max_abs = alphas.iter().chain(betas).map(|z| z.abs().to_f64()).fold(0.0, f64::max);
    let quartic: f64 = alphas.iter().chain(betas).map(|z| z.abs().to_f64().powi(4)).sum();
    let m = terms as f64 - 1.0;
    if m < 2.0 * max_abs || m < 1.0 {
        return None;
    }
    let t = power_sum_diff(2) / (2.0 * m) + power_sum_diff(3) / (6.0 * m * m) + quartic / (6.0 * m * m * m);
    Some(t.exp_m1())
}

/// `∏_j Γ(β_j) / Γ(α_j)`.
pub fn cor2_rhs(alphas: &[HPComplex], betas: &[HPComplex], prec: Precision) -> Result<Evaluation> {
    let mut acc = HPComplex::one(prec);
    for (a, b) in alphas.iter().zip(betas) {
        acc = &(&acc * &gamma_classical(b, prec)?) / &gamma_classical(a, prec)?;
    }
    Ok(Evaluation::exact(acc))
}

fn qgamma_at_fractions(n: u64, q: &QParam, prec: Precision, scale: u64, coprime_only: bool) -> Result<HPComplex> {
    let mut acc = HPComplex::one(prec);
    for k in 1..=n {
        if coprime_only && gcd(k, n) != 1 {
            continue;
        }
        let x = HPComplex::from_real(HPReal::from_u64(k, prec) / HPReal::from_u64(n, prec));
        acc = &acc * &qgamma_scaled(&x, q, prec, scale)?;
    }
    Ok(acc)
}

/// `∏_{k=1}^{n} Γ_q(k/n)`.
pub fn thm3_full_lhs(n: u64, q: &QParam, prec: Precision, scale: u64) -> Result<Evaluation> {
    Ok(Evaluation::exact(qgamma_at_fractions(n, q, prec, scale, false)?))
}

/// `(1-q)^{(n-1)/2} (q;q)_∞^n / (q^{1/n}; q^{1/n})_∞`.
pub fn thm3_full_rhs(n: u64, q: &QParam, prec: Precision) -> Result<Evaluation> {
    let one_minus_q = &HPReal::one(prec) - q.value();
    let pre = (one_minus_q.ln()? * HPReal::from_ratio(n as i64 - 1, 2, prec)).exp();
    let qq = HPComplex::from_real(q.value().clone());
    let euler = qpochhammer(&qq, q, PochLength::Infinite, prec)?;
    let root = q.root_base(n, prec);
    let r = HPComplex::from_real(root.value().clone());
    let dissected = qpochhammer(&r, &root, PochLength::Infinite, prec)?;
    Ok(Evaluation::exact(
        &(&euler.powi(n as i64) / &dissected) * &HPComplex::from_real(pre),
    ))
}

/// `∏_{k ≤ n, (k,n)=1} Γ_q(k/n)`.
pub fn thm3_coprime_lhs(n: u64, q: &QParam, prec: Precision, scale: u64) -> Result<Evaluation> {
    Ok(Evaluation::exact(qgamma_at_fractions(n, q, prec, scale, true)?))
}

fn eval_poly(p: &IntPolynomial, x: &HPReal, prec: Precision) -> HPReal {
    p.coefficients()
        .iter()
        .rev()
        .fold(HPReal::zero(prec), |acc, c| acc * x + HPReal::from_bigint(c, prec))
}

/// `∏_{j≥1} Ψ_n(x^j)` for `x = base`, evaluated as
/// `(∏_j Φ_{rad n}(x^j))^{μ(rad n)}`. Since `|Φ(y) - 1| ≤ C y` with
/// `C` the sum of the absolute non-constant coefficients, the tail is
/// geometric with constant `C`.
pub fn psi_product(n: u64, base: &QParam, prec: Precision, scale: u64) -> Result<(HPReal, u64)> {
    if n < 2 {
        return Err(Error::InvalidArgument("psi product needs n >= 2".into()));
    }
    let reduced = psi_reduced(n)?;
    let c: f64 = reduced.base.coefficients()[1..]
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::INFINITY).abs())
        .sum();
    let n0 = geometric_tail_start(c.ln(), base.ln_f64(), prec.ln_epsilon());
    let terms = n0 * scale;
    let x = base.value();
    let mut y = x.clone();
    let mut acc = HPReal::one(prec);
    for _ in 1..terms {
        acc = acc * eval_poly(&reduced.base, &y, prec);
        y = &y * x;
    }
    if reduced.exponent < 0 {
        acc = HPReal::one(prec) / acc;
    }
    Ok((acc, terms))
}

/// `(1-q)^{φ(n)/2} (q;q)_∞^{φ(n)} / ∏_{k≥1} Φ_{rad n}(q^{k/n})^{μ(rad n)}`, `n ≥ 2`.
pub fn thm3_coprime_rhs(n: u64, q: &QParam, prec: Precision) -> Result<Evaluation> {
    let phi = totient(n)?;
    let one_minus_q = &HPReal::one(prec) - q.value();
    let pre = (one_minus_q.ln()? * HPReal::from_ratio(phi as i64, 2, prec)).exp();
    let qq = HPComplex::from_real(q.value().clone());
    let euler = qpochhammer(&qq, q, PochLength::Infinite, prec)?;
    let (psi, _) = psi_product(n, &q.root_base(n, prec), prec, 1)?;
    let v = euler.powi(phi as i64).scale(&(pre / psi));
    Ok(Evaluation::exact(v))
}

/// `∏_{n≥2} (1 - q^{n - χ(n) z}) / (1 - q^n)`.
///
/// `q^{n-χ(n)z}` is built as `q^n · q^{-χ(r) z}` with `q^n` accumulated by
/// repeated multiplication, so no exponential is taken inside the loop.
pub fn chi_product_lhs(
    values: &[HPComplex],
    q: &QParam,
    z: &HPComplex,
    prec: Precision,
    scale: u64,
) -> Result<Evaluation> {
    let k = values.len();
    let w: Vec<HPComplex> = values.iter().map(|c| q.power(&-(c * z))).collect();
    let c = 1.0 + w.iter().map(|u| u.abs().to_f64()).fold(0.0, f64::max);
    let n0 = geometric_tail_start(c.ln(), q.ln_f64(), prec.ln_epsilon()).max(2);
    let terms = n0 * scale;
    let qv = q.value();
    let one = HPReal::one(prec);
    let mut qn = qv * qv;
    let mut num = HPComplex::one(prec);
    let mut den = HPReal::one(prec);
    for n in 2..terms {
        num = &num * &one_minus(&w[(n as usize) % k].scale(&qn), prec);
        den = den * (&one - &qn);
        qn = &qn * qv;
    }
    Ok(Evaluation {
        value: num.scale(&(one / den)),
        error_estimate: Some(tail_bound(c.ln(), q.ln_f64(), terms)),
        terms: Some(terms),
    })
}

/// `(1-q) / (1 - q^{1-z})`, the prefactor shared by the character identities.
fn z_prefactor(q: &QParam, z: &HPComplex, prec: Precision) -> Result<HPComplex> {
    let d = one_minus(&q.power(&one_minus(z, prec)), prec);
    if d.abs() < prec.epsilon() {
        return Err(Error::Singular("1 - q^(1-z) vanishes".into()));
    }
    let one_minus_q = HPComplex::from_real(&HPReal::one(prec) - q.value());
    Ok(&one_minus_q / &d)
}

fn shifted_argument(j: usize, k: usize, chi: &HPComplex, z: &HPComplex, prec: Precision) -> HPComplex {
    let jj = HPComplex::from_i64(j as i64, prec);
    (&jj - &(chi * z)).scale(&(HPReal::one(prec) / HPReal::from_u64(k as u64, prec)))
}

/// `((1-q)/(1-q^{1-z})) ∏_{j=1}^{k} Γ_{q^k}(j/k) / Γ_{q^k}((j - χ(j) z)/k)`.
pub fn thm5_rhs(values: &[HPComplex], q: &QParam, z: &HPComplex, prec: Precision) -> Result<Evaluation> {
    let k = values.len();
    let qk = q.pow_base(k as i64, prec);
    let mut acc = z_prefactor(q, z, prec)?;
    for j in 1..=k {
        let chi = &values[j % k];
        if chi.is_zero() {
            continue;
        }
        let top = qgamma_scaled(&HPComplex::from_ratio(j as i64, k as i64, prec), &qk, prec, 1)?;
        let bottom = qgamma_scaled(&shifted_argument(j, k, chi, z, prec), &qk, prec, 1)?;
        acc = &(&acc * &top) / &bottom;
    }
    Ok(Evaluation::exact(acc))
}

/// The full q-analog: the `Γ_{q^k}(j/k)` product of [`thm5_rhs`] replaced by
/// `(1-q^k)^{φ(k)/2} (q^k;q^k)_∞^{φ(k)} / ∏_{j≥1} Ψ_k(q^j)`.
pub fn cor6_rhs(values: &[HPComplex], q: &QParam, z: &HPComplex, prec: Precision) -> Result<Evaluation> {
    let k = values.len() as u64;
    let phi = totient(k)?;
    let qk = q.pow_base(k as i64, prec);
    let one_minus_qk = &HPReal::one(prec) - qk.value();
    let pre = (one_minus_qk.ln()? * HPReal::from_ratio(phi as i64, 2, prec)).exp();
    let qkc = HPComplex::from_real(qk.value().clone());
    let euler = qpochhammer(&qkc, &qk, PochLength::Infinite, prec)?;
    let (psi, _) = psi_product(k, q, prec, 1)?;
    let mut acc = &z_prefactor(q, z, prec)? * &euler.powi(phi as i64).scale(&(pre / psi));
    for (j, chi) in values.iter().enumerate().skip(1) {
        if chi.is_zero() {
            continue;
        }
        acc = &acc / &qgamma_scaled(&shifted_argument(j, k as usize, chi, z, prec), &qk, prec, 1)?;
    }
    Ok(Evaluation::exact(acc))
}

/// `∏_{n=2}^{Mk} (1 - χ(n) z / n)` over `M` complete residue blocks.
///
/// The neglected tail has logarithm about
/// `(z ∑ j χ(j) - (z^2/2) ∑ χ(j)^2) / (k^2 M)`, recorded as the estimate.
pub fn thm4_lhs(values: &[HPComplex], z: &HPComplex, blocks: u64, prec: Precision) -> Result<Evaluation> {
    let k = values.len() as u64;
    let cz: Vec<HPComplex> = values.iter().map(|c| c * z).collect();
    let real = cz.iter().all(|c| c.is_real());
    let last = blocks * k;
    let value = if real {
        let cr: Vec<HPReal> = cz.iter().map(|c| c.re.clone()).collect();
        let mut acc = HPReal::one(prec);
        for n in 2..=last {
            let c = &cr[(n % k) as usize];
            if c.is_zero() {
                continue;
            }
            let nn = HPReal::from_u64(n, prec);
            acc = acc * ((&nn - c) / nn);
        }
        HPComplex::from_real(acc)
    } else {
        let mut acc = HPComplex::one(prec);
        for n in 2..=last {
            let c = &cz[(n % k) as usize];
            if c.is_zero() {
                continue;
            }
            let nn = HPComplex::from_real(HPReal::from_u64(n, prec));
            acc = &acc * &(&(&nn - c) / &nn);
        }
        acc
    };
    let to_c = |v: &HPComplex| (v.re.to_f64(), v.im.to_f64());
    let (zr, zi) = to_c(z);
    let (mut s1r, mut s1i, mut s2r, mut s2i) = (0.0, 0.0, 0.0, 0.0);
    for (j, v) in values.iter().enumerate() {
        let j = if j == 0 { k as f64 } else { j as f64 };
        let (x, y) = to_c(v);
        s1r += j * x;
        s1i += j * y;
        s2r += x * x - y * y;
        s2i += 2.0 * x * y;
    }
    let (z2r, z2i) = (zr * zr - zi * zi, 2.0 * zr * zi);
    let er = zr * s1r - zi * s1i - 0.5 * (z2r * s2r - z2i * s2i);
    let ei = zr * s1i + zi * s1r - 0.5 * (z2r * s2i + z2i * s2r);
    let est = (er * er + ei * ei).sqrt() / ((k * k) as f64 * blocks as f64);
    Ok(Evaluation {
        value,
        error_estimate: Some(est),
        terms: Some(blocks),
    })
}

/// `(2π)^{φ(k)/2} / ((1-z) e^{Λ(k)/2}) ∏_{j<k, (j,k)=1} 1/Γ((j - χ(j) z)/k)`.
pub fn thm4_rhs(values: &[HPComplex], z: &HPComplex, prec: Precision) -> Result<Evaluation> {
    let k = values.len() as u64;
    let one_minus_z = one_minus(z, prec);
    if one_minus_z.abs() < prec.epsilon() {
        return Err(Error::Singular("z = 1 is excluded".into()));
    }
    let phi = totient(k)?;
    let two_pi = HPReal::pi(prec) * HPReal::from_i64(2, prec);
    let lambda = von_mangoldt_value(&von_mangoldt(k)?, prec)?;
    let ln_pre = (two_pi.ln()? * HPReal::from_u64(phi, prec) - lambda) * HPReal::from_ratio(1, 2, prec);
    let mut acc = &HPComplex::from_real(ln_pre.exp()) / &one_minus_z;
    for j in 1..k {
        if gcd(j, k) != 1 {
            continue;
        }
        let x = shifted_argument(j as usize, k as usize, &values[j as usize], z, prec);
        acc = &acc / &gamma_classical(&x, prec)?;
    }
    Ok(Evaluation::exact(acc))
}

/// `∏_{k=1}^{N} (1 - (-1)^k / (2k+1))`. The log-terms alternate in sign with
/// decreasing size, so the tail is bounded by the first omitted one.
pub fn prototype_lhs(terms: u64, prec: Precision) -> Result<Evaluation> {
    let mut acc = HPReal::one(prec);
    for k in 1..=terms {
        let d = 2 * k + 1;
        let n = if k % 2 == 0 { d - 1 } else { d + 1 };
        acc = acc * (HPReal::from_u64(n, prec) / HPReal::from_u64(d, prec));
    }
    let next = terms + 1;
    let u = 1.0 / (2 * next + 1) as f64;
    let t = if next.is_multiple_of(2) {
        (-u).ln_1p()
    } else {
        u.ln_1p()
    }
    .abs();
    let est = t.exp_m1();
    Ok(Evaluation {
        value: HPComplex::from_real(acc),
        error_estimate: Some(est),
        terms: Some(terms),
    })
}

/// `π √2 / 4`.
pub fn prototype_rhs(prec: Precision) -> Result<Evaluation> {
    let v = HPReal::pi(prec) * HPReal::from_i64(2, prec).sqrt()? / HPReal::from_i64(4, prec);
    Ok(Evaluation::exact(HPComplex::from_real(v)))
}
