use serde::{Deserialize, Serialize};

use super::gamma::gamma_classical;
use super::hp::{HPComplex, HPReal, Precision};
use crate::error::Result;
use crate::numtheory::ArithValue;

/// Closed-form q-gamma special values at `q = e^{-4π}` and `q = e^{-8π}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum JacksonId {
    /// `Γ_{e^{-4π}}(1/4) Γ_{e^{-4π}}(3/4)`
    #[serde(rename = "J_QTR_4PI")]
    JQtr4pi,
    /// `Γ_{e^{-4π}}(1/2)`
    #[serde(rename = "J_HALF_4PI")]
    JHalf4pi,
    /// `Γ_{e^{-8π}}(1/2)`
    #[serde(rename = "J_HALF_8PI")]
    JHalf8pi,
    /// `Γ_{e^{-8π}}(1/4) Γ_{e^{-8π}}(3/4)`
    #[serde(rename = "J_QTR_8PI")]
    JQtr8pi,
}

impl JacksonId {
    pub const ALL: [JacksonId; 4] = [Self::JQtr4pi, Self::JHalf4pi, Self::JHalf8pi, Self::JQtr8pi];

    /// The `k` in `q = e^{-kπ}`.
    pub fn pi_multiple(self) -> u32 {
        match self {
            Self::JQtr4pi | Self::JHalf4pi => 4,
            Self::JHalf8pi | Self::JQtr8pi => 8,
        }
    }
}

/// Right-hand sides of the four closed-form product evaluations for the
/// non-principal character mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleId {
    /// `q = e^{-π}`, `z = 1`.
    Ex1a,
    /// `q = e^{-π}`, `z = -1`.
    Ex1b,
    /// `q = e^{-2π}`, `z = 1`.
    Ex2a,
    /// `q = e^{-2π}`, `z = -1`.
    Ex2b,
    /// The published form of `Ex2a`, which lacks the factor `1/√(1+√2)`.
    Ex2aPrinted,
}

struct Constants {
    pi: HPReal,
    ln2: HPReal,
    ln_pi: HPReal,
    gamma_quarter: HPReal,
    prec: Precision,
}

impl Constants {
    fn new(prec: Precision) -> Result<Self> {
        let pi = HPReal::pi(prec);
        let ln_pi = pi.ln()?;
        let g = gamma_classical(&HPComplex::from_ratio(1, 4, prec), prec)?;
        Ok(Self {
            ln2: HPReal::ln2(prec),
            ln_pi,
            gamma_quarter: g.re,
            pi,
            prec,
        })
    }

    fn r(&self, num: i64, den: i64) -> HPReal {
        HPReal::from_ratio(num, den, self.prec)
    }

    /// `e^{(num/den) π}`
    fn exp_pi(&self, num: i64, den: i64) -> HPReal {
        (&self.pi * &self.r(num, den)).exp()
    }

    /// `2^{num/den}`
    fn two_pow(&self, num: i64, den: i64) -> HPReal {
        (&self.ln2 * &self.r(num, den)).exp()
    }

    /// `π^{num/den}`
    fn pi_pow(&self, num: i64, den: i64) -> HPReal {
        (&self.ln_pi * &self.r(num, den)).exp()
    }

    fn sqrt_one_plus_sqrt2(&self) -> Result<HPReal> {
        let s2 = HPReal::from_i64(2, self.prec).sqrt()?;
        (&HPReal::one(self.prec) + &s2).sqrt()
    }
}

/// Evaluates one of the closed forms, using `Γ(1/4)` from [`gamma_classical`].
pub fn jackson_value(id: JacksonId, prec: Precision) -> Result<HPReal> {
    let c = Constants::new(prec)?;
    let one = HPReal::one(prec);
    let g = &c.gamma_quarter;
    let g2 = g * g;
    Ok(match id {
        JacksonId::JQtr4pi => {
            let num = c.exp_pi(-29, 8) * (c.exp_pi(4, 1) - &one) * g2;
            num / (c.two_pow(23, 8) * c.pi_pow(3, 2))
        }
        JacksonId::JHalf4pi => {
            let num = c.exp_pi(-7, 4) * (c.exp_pi(4, 1) - &one).sqrt()? * g;
            num / (c.two_pow(7, 4) * c.pi_pow(3, 4))
        }
        JacksonId::JHalf8pi => {
            let num = c.exp_pi(-7, 2) * (c.exp_pi(8, 1) - &one).sqrt()? * g;
            num / (c.two_pow(9, 4) * c.pi_pow(3, 4) * c.sqrt_one_plus_sqrt2()?)
        }
        JacksonId::JQtr8pi => {
            let num = c.exp_pi(-29, 4) * (c.exp_pi(8, 1) - &one) * g2;
            num / (HPReal::from_i64(16, prec) * c.pi_pow(3, 2) * c.sqrt_one_plus_sqrt2()?)
        }
    })
}

/// Evaluates the closed-form value of one of the example products.
pub fn example_closed_form(id: ExampleId, prec: Precision) -> Result<HPReal> {
    let c = Constants::new(prec)?;
    let one = HPReal::one(prec);
    let g2 = &c.gamma_quarter * &c.gamma_quarter;
    Ok(match id {
        ExampleId::Ex1a => {
            let num = c.exp_pi(3, 8) * (&one - &c.exp_pi(-1, 1)) * g2;
            num / (c.two_pow(23, 8) * c.pi_pow(3, 2))
        }
        ExampleId::Ex1b => c.two_pow(5, 8) * c.exp_pi(-1, 8) / (&one + &c.exp_pi(-1, 1)),
        ExampleId::Ex2a | ExampleId::Ex2aPrinted => {
            let num = c.exp_pi(3, 4) * (&one - &c.exp_pi(-2, 1)) * g2;
            let den = HPReal::from_i64(16, prec) * c.pi_pow(3, 2);
            let v = num / den;
            if id == ExampleId::Ex2a {
                v / c.sqrt_one_plus_sqrt2()?
            } else {
                v
            }
        }
        ExampleId::Ex2b => {
            let two = HPReal::from_i64(2, prec);
            let s = (&two + &(&two * &two.sqrt()?)).sqrt()?;
            s * c.exp_pi(-1, 4) / (&one + &c.exp_pi(-2, 1))
        }
    })
}

/// Numeric value of a von Mangoldt result: `log p` or `0`.
pub fn von_mangoldt_value(v: &ArithValue, prec: Precision) -> Result<HPReal> {
    match v {
        ArithValue::PrimePowerLog { prime, .. } => HPReal::from_u64(*prime, prec).ln(),
        ArithValue::Integer { value } => Ok(HPReal::from_i64(*value, prec)),
        ArithValue::Sign { value } => Ok(HPReal::from_i64(i64::from(*value), prec)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::von_mangoldt;

    fn prec() -> Precision {
        Precision::new(40).unwrap()
    }

    #[test]
    fn ex1b_leading_digits() {
        // 2^{5/8} e^{-π/8} / (1 + e^{-π}) evaluated in f64
        let pi = std::f64::consts::PI;
        let want = 2f64.powf(0.625) * (-pi / 8.0).exp() / (1.0 + (-pi).exp());
        let got = example_closed_form(ExampleId::Ex1b, prec()).unwrap().to_f64();
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn printed_ex2a_differs_by_sqrt_one_plus_sqrt2() {
        let a = example_closed_form(ExampleId::Ex2a, prec()).unwrap();
        let b = example_closed_form(ExampleId::Ex2aPrinted, prec()).unwrap();
        let ratio = (b / a).to_f64();
        assert!((ratio - (1.0 + 2f64.sqrt()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn jackson_values_in_f64() {
        // Γ_q(1/2) = (1-q)^{1/2} (q;q)_∞ / (q^{1/2};q)_∞, truncated in f64.
        let q = (-4.0 * std::f64::consts::PI).exp();
        let poch = |a: f64| (0..40).map(|k| 1.0 - a * q.powi(k)).product::<f64>();
        let approx = (1.0 - q).sqrt() * poch(q) / poch(q.sqrt());
        let v = jackson_value(JacksonId::JHalf4pi, prec()).unwrap().to_f64();
        assert!((v - approx).abs() < 1e-9, "{v} vs {approx}");
    }

    #[test]
    fn von_mangoldt_numeric() {
        let p = prec();
        let l8 = von_mangoldt_value(&von_mangoldt(8).unwrap(), p).unwrap();
        assert!((l8.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert!(von_mangoldt_value(&von_mangoldt(6).unwrap(), p).unwrap().is_zero());
    }
}
