use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial with exact integer coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(BigInt::one(), n);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    /// `1 - x^d`
    pub fn one_minus_x_pow(d: usize) -> Self {
        -Self::x_pow_minus_one(d)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Content-free multiple with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Substitute `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Quotient and remainder when the divisor's leading coefficient divides
    /// every intermediate leading term; errors otherwise.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dv) = divisor.degree() else {
            return Err(Error::InvalidArgument("polynomial division by zero".into()));
        };
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dn < dv {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); dn - dv + 1];
        for i in (0..=dn - dv).rev() {
            let top = &rem[i + dv];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InvalidArgument(
                    "leading coefficient does not divide; division is not exact over the integers".into(),
                ));
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidArgument(format!("{divisor} does not divide {self}")))
        }
    }

    /// A nonzero constant multiple of the pseudo-remainder of `self` by
    /// `divisor`, with content removed.
    fn pseudo_rem_primitive(&self, divisor: &Self) -> Self {
        let dv = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().unwrap().clone();
        let unit_lead = lead.abs().is_one();
        let mut r = self.coeffs.clone();
        while r.len() > dv {
            let dr = r.len() - 1;
            let top = r[dr].clone();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let shift = dr - dv;
            if unit_lead {
                let q = &top * &lead;
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + j] -= &q * c;
                }
            } else {
                let g = top.gcd(&lead);
                let a = &lead / &g;
                let b = &top / &g;
                for x in r.iter_mut() {
                    *x *= &a;
                }
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + j] -= &b * c;
                }
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            let reduced = Self::new(std::mem::take(&mut r));
            r = reduced.primitive_part().coeffs;
        }
        Self::new(r).primitive_part()
    }

    /// Greatest common divisor over the rationals, returned primitive with a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut u, mut v) = (self.primitive_part(), other.primitive_part());
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_zero() {
            if v.degree() == Some(0) {
                return Self::one();
            }
            let r = u.pseudo_rem_primitive(&v);
            u = v;
            v = r;
        }
        u.primitive_part()
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers, e.g. `1 - x + x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let raw = Vec::<Coeff>::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Text(s) => s.parse::<BigInt>().map_err(de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(Self::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

macro_rules! poly_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_owned!(Add, add);
poly_owned!(Sub, sub);
poly_owned!(Mul, mul);

/// Quotient of two integer polynomials kept in canonical form: numerator
/// and denominator coprime over the rationals, no common integer content,
/// and a positive leading coefficient in the denominator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPolyFraction {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalPolyFraction {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidArgument("rational function with zero denominator".into()));
        }
        Ok(Self::normalize(numerator, denominator))
    }

    pub fn from_polynomial(p: IntPolynomial) -> Self {
        Self::normalize(p, IntPolynomial::one())
    }

    pub fn one() -> Self {
        Self::from_polynomial(IntPolynomial::one())
    }

    fn normalize(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return Self {
                numerator: IntPolynomial::zero(),
                denominator: IntPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Self {
            numerator: num,
            denominator: den,
        }
    }

    /// Assemble without normalizing; only for displaying raw factor products.
    pub fn unnormalized(numerator: IntPolynomial, denominator: IntPolynomial) -> Self {
        Self { numerator, denominator }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0)
    }

    /// Equality of `a/b` and `c/d` via `a d = c b`; valid for unnormalized
    /// fractions too.
    pub fn cross_equals(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        Self::normalize(self.numerator.compose_power(k), self.denominator.compose_power(k))
    }
}

impl Mul for &RationalPolyFraction {
    type Output = RationalPolyFraction;
    fn mul(self, rhs: &RationalPolyFraction) -> RationalPolyFraction {
        RationalPolyFraction::normalize(&self.numerator * &rhs.numerator, &self.denominator * &rhs.denominator)
    }
}

impl fmt::Display for RationalPolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalPolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolyFraction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn display_ascending_powers() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 - x + x^2");
        assert_eq!(p(&[0, -2, 0, 3]).to_string(), "-2x + 3x^3");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), None);
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[-1, 0, 2]);
        assert_eq!(a.div_exact(&p(&[1, 1])).unwrap(), p(&[-1, 0, 2]));
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_err());
        assert!(p(&[1, 1]).div_exact(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn gcd_of_binomials() {
        let g = IntPolynomial::x_pow_minus_one(6).gcd(&IntPolynomial::x_pow_minus_one(4));
        assert_eq!(g, p(&[-1, 0, 1]));
        let g = p(&[2, 4]).gcd(&p(&[3, 6, 0]));
        assert_eq!(g, p(&[1, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2])), IntPolynomial::one());
    }

    #[test]
    fn gcd_with_non_unit_leading_coefficients() {
        let f = p(&[1, 3]);
        let a = &f * &p(&[5, 0, 2]);
        let b = &f * &p(&[-7, 4]);
        assert_eq!(a.gcd(&b), p(&[1, 3]));
    }

    #[test]
    fn fraction_normalization_is_canonical() {
        let r = RationalPolyFraction::new(p(&[1, -1]), p(&[1, 0, -1])).unwrap();
        assert_eq!(r.numerator(), &IntPolynomial::one());
        assert_eq!(r.denominator(), &p(&[1, 1]));
        let s = RationalPolyFraction::new(p(&[-2, -2]), p(&[-4, 0, 4])).unwrap();
        assert_eq!(s.numerator(), &p(&[-1]));
        assert_eq!(s.denominator(), &p(&[-2, 2]));
        assert!(RationalPolyFraction::new(p(&[1]), IntPolynomial::zero()).is_err());
    }

    #[test]
    fn json_coefficient_arrays() {
        let q = p(&[1, -1, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1,-1,1]");
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let big: IntPolynomial = serde_json::from_str("[\"123456789012345678901234567890\", 1]").unwrap();
        assert_eq!(big.coeff(0).to_string(), "123456789012345678901234567890");
    }
}
