use serde::{Deserialize, Serialize};

use super::poly::{IntPolynomial, RationalPolyFraction};
use super::{divisors, mobius, radical};
use crate::error::{Error, Result};

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic: n must be positive".into()));
    }
    let ds = divisors(n);
    let mut table: Vec<IntPolynomial> = Vec::with_capacity(ds.len());
    for (i, &d) in ds.iter().enumerate() {
        let mut p = IntPolynomial::x_pow_minus_one(d as usize);
        for (j, &e) in ds[..i].iter().enumerate() {
            if d % e == 0 {
                p = p.div_exact(&table[j])?;
            }
        }
        table.push(p);
    }
    Ok(table.pop().expect("n divides itself"))
}

/// `Ψ_n(x) = ∏_{d|n} (1 - x^d)^{μ(d)}`, assembled as the product of the
/// `μ(d) = +1` factors over the product of the `μ(d) = -1` factors, then
/// normalized by exact polynomial gcd.
pub fn psi_by_definition(n: u64) -> Result<RationalPolyFraction> {
    let (num, den) = psi_factor_products(n)?;
    RationalPolyFraction::new(num, den)
}

/// The raw numerator and denominator products before normalization.
pub fn psi_factor_products(n: u64) -> Result<(IntPolynomial, IntPolynomial)> {
    if n == 0 {
        return Err(Error::InvalidArgument("psi: n must be positive".into()));
    }
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in divisors(n) {
        match mobius(d)? {
            1 => num = &num * &IntPolynomial::one_minus_x_pow(d as usize),
            -1 => den = &den * &IntPolynomial::one_minus_x_pow(d as usize),
            _ => {}
        }
    }
    Ok((num, den))
}

/// `Ψ_n` written as `base^exponent` with `exponent = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReduced {
    pub base: IntPolynomial,
    pub exponent: i8,
}

impl PsiReduced {
    pub fn to_fraction(&self) -> RationalPolyFraction {
        let f = RationalPolyFraction::from_polynomial(self.base.clone());
        if self.exponent < 0 {
            f.recip().expect("cyclotomic polynomials are nonzero")
        } else {
            f
        }
    }
}

/// `Ψ_n = Φ_{rad n}^{μ(rad n)}` for `n >= 2`.
///
/// `Ψ_1 = 1 - x = -Φ_1`, so `n = 1` returns the base `1 - x` with exponent
/// `+1` instead of the cyclotomic form.
pub fn psi_reduced(n: u64) -> Result<PsiReduced> {
    match n {
        0 => Err(Error::InvalidArgument("psi: n must be positive".into())),
        1 => Ok(PsiReduced {
            base: IntPolynomial::one_minus_x_pow(1),
            exponent: 1,
        }),
        _ => {
            let r = radical(n)?;
            Ok(PsiReduced {
                base: cyclotomic(r)?,
                exponent: mobius(r)?,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::totient;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Independent route: Φ_n = ∏_{d|n} (x^{n/d} - 1)^{μ(d)}.
    fn cyclotomic_by_mobius(n: u64) -> RationalPolyFraction {
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for d in divisors(n) {
            let f = IntPolynomial::x_pow_minus_one((n / d) as usize);
            match mobius(d).unwrap() {
                1 => num = &num * &f,
                -1 => den = &den * &f,
                _ => {}
            }
        }
        RationalPolyFraction::new(num, den).unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn cyclotomic_105_has_a_coefficient_two() {
        let c = cyclotomic(105).unwrap();
        assert!(c.coefficients().iter().any(|x| *x == (-2).into()));
    }

    #[test]
    fn division_and_mobius_routes_agree() {
        for n in 1..=60 {
            let direct = RationalPolyFraction::from_polynomial(cyclotomic(n).unwrap());
            assert_eq!(direct, cyclotomic_by_mobius(n), "n = {n}");
        }
    }

    #[test]
    fn psi_examples() {
        let two = psi_by_definition(2).unwrap();
        assert_eq!(two.numerator(), &IntPolynomial::one());
        assert_eq!(two.denominator(), &p(&[1, 1]));
        assert_eq!(
            psi_by_definition(1).unwrap(),
            RationalPolyFraction::from_polynomial(p(&[1, -1]))
        );

        let (num, den) = psi_factor_products(12).unwrap();
        assert_eq!(num, &p(&[1, -1]) * &IntPolynomial::one_minus_x_pow(6));
        assert_eq!(
            den,
            &IntPolynomial::one_minus_x_pow(2) * &IntPolynomial::one_minus_x_pow(3)
        );
        assert_eq!(
            psi_by_definition(12).unwrap(),
            RationalPolyFraction::from_polynomial(p(&[1, -1, 1]))
        );
    }

    #[test]
    fn psi_reduced_examples() {
        assert_eq!(
            psi_reduced(12).unwrap(),
            PsiReduced {
                base: cyclotomic(6).unwrap(),
                exponent: 1
            }
        );
        assert_eq!(
            psi_reduced(2).unwrap(),
            PsiReduced {
                base: p(&[1, 1]),
                exponent: -1
            }
        );
        let one = psi_reduced(1).unwrap();
        assert_eq!(one.base, p(&[1, -1]));
        assert_eq!(one.base, -cyclotomic(1).unwrap());
        assert!(psi_reduced(0).is_err());
    }

    #[test]
    fn degree_and_constant_term() {
        for n in 1..=100 {
            let c = cyclotomic(n).unwrap();
            assert_eq!(c.degree().unwrap() as u64, totient(n).unwrap());
            if n >= 2 {
                assert_eq!(c.coeff(0), 1.into());
            }
        }
    }
}
