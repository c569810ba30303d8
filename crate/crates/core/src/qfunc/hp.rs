//! Working-precision real and complex numbers.
//!
//! [`HPReal`] wraps an `astro_float::BigFloat` together with the binary
//! precision it was created at. Binary operations run at the larger of the
//! two operand precisions, so values built from one [`Precision`] stay at
//! that precision through an evaluation. NaN and infinite states never
//! escape: constructors validate their input and the fallible elementary
//! functions return [`Error`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Target decimal digits plus guard digits carried through every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    pub digits: u32,
    #[serde(default = "Precision::default_guard")]
    pub guard: u32,
}

impl Precision {
    pub const MIN_DIGITS: u32 = 10;
    pub const DEFAULT_GUARD: u32 = 10;

    fn default_guard() -> u32 {
        Self::DEFAULT_GUARD
    }

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self { digits, guard })
    }

    /// Total decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision (rounded up to whole words by the backend).
    pub fn bits(&self) -> usize {
        let raw = (f64::from(self.working_digits()) * LOG2_10).ceil() as usize + 8;
        raw.max(64).div_ceil(64) * 64
    }

    /// `10^-(digits+guard)`, the threshold every truncation targets.
    pub fn epsilon(&self) -> HPReal {
        HPReal::from_i64(10, *self).powi(-i64::from(self.working_digits()))
    }

    /// Natural log of [`Precision::epsilon`] as an `f64`, for cutoff estimates.
    pub fn ln_epsilon(&self) -> f64 {
        -f64::from(self.working_digits()) * std::f64::consts::LN_10
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            digits: 50,
            guard: Self::DEFAULT_GUARD,
        }
    }
}

/// A finite real number at a fixed binary precision.
#[derive(Clone)]
pub struct HPReal {
    v: BigFloat,
    bits: usize,
}

impl HPReal {
    fn wrap(v: BigFloat, bits: usize) -> Self {
        debug_assert!(!v.is_nan() && !v.is_inf(), "non-finite HPReal");
        Self { v, bits }
    }

    fn checked(v: BigFloat, bits: usize, what: &str) -> Result<Self> {
        if v.is_nan() || v.is_inf() {
            Err(Error::InvalidArgument(format!("{what} is not finite")))
        } else {
            Ok(Self { v, bits })
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::wrap(BigFloat::new(prec.bits()), prec.bits())
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(v, prec.bits()), prec.bits())
    }

    pub fn from_u64(v: u64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_u64(v, prec.bits()), prec.bits())
    }

    /// `num / den` rounded to the working precision.
    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num, prec) / Self::from_i64(den, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        let bits = prec.bits();
        if let Some(small) = v.to_i64() {
            return Self::from_i64(small, prec);
        }
        // Horner over 32-bit limbs, exact as long as the precision suffices.
        let base = BigFloat::from_u64(1u64 << 32, bits);
        let mut acc = BigFloat::new(bits);
        for limb in v.magnitude().to_u32_digits().iter().rev() {
            acc = acc.mul(&base, bits, RM).add(&BigFloat::from_u32(*limb, bits), bits, RM);
        }
        if v.is_negative() {
            acc.inv_sign();
        }
        Self::wrap(acc, bits)
    }

    pub fn from_rational(v: &BigRational, prec: Precision) -> Self {
        Self::from_bigint(v.numer(), prec) / Self::from_bigint(v.denom(), prec)
    }

    /// Lossless conversion of an `f64`; intended for tests and plotting input.
    pub fn from_f64(v: f64, prec: Precision) -> Result<Self> {
        Self::checked(BigFloat::from_f64(v, prec.bits()), prec.bits(), "f64 input")
    }

    pub fn pi(prec: Precision) -> Self {
        let bits = prec.bits();
        Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    pub fn ln2(prec: Precision) -> Self {
        let bits = prec.bits();
        Self::wrap(with_consts(|cc| cc.ln_2(bits, RM)), bits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.bits)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        Self::checked(self.v.sqrt(self.bits, RM), self.bits, "sqrt")
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.exp(bits, RM, cc)), bits)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::InvalidArgument("logarithm of a non-positive number".into()));
        }
        let bits = self.bits;
        Self::checked(with_consts(|cc| self.v.ln(bits, RM, cc)), bits, "ln")
    }

    pub fn sin(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.sin(bits, RM, cc)), bits)
    }

    pub fn cos(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.cos(bits, RM, cc)), bits)
    }

    pub fn atan(&self) -> Self {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.v.atan(bits, RM, cc)), bits)
    }

    /// Angle of the point `(x, y)` in `(-π, π]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let bits = y.bits.max(x.bits);
        let pi = Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits);
        let half_pi = Self::wrap(pi.v.div(&BigFloat::from_u8(2, bits), bits, RM), bits);
        if x.is_zero() {
            return if y.is_zero() {
                Self::wrap(BigFloat::new(bits), bits)
            } else if y.is_negative() {
                -half_pi
            } else {
                half_pi
            };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - pi
        } else {
            base + pi
        }
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Self) -> Result<Self> {
        Ok((&self.ln()? * y).exp())
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let m = n.unsigned_abs() as usize;
        let p = Self::wrap(self.v.powi(m, self.bits, RM), self.bits);
        if n < 0 {
            let one = Self::wrap(BigFloat::from_u8(1, self.bits), self.bits);
            one / p
        } else {
            p
        }
    }

    /// Nearest `f64`; values beyond the `f64` range saturate to infinity.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let (words, _, sign, exp, _) = self.v.as_raw_parts().expect("finite value");
        let top = words.last().copied().unwrap_or(0);
        let top_bits = WORD_BIT_SIZE as i32;
        let mut mant = top as f64;
        if WORD_BIT_SIZE == 32 && words.len() > 1 {
            mant = mant * 4294967296.0 + words[words.len() - 2] as f64;
            let v = mant * 2f64.powi(exp - 2 * top_bits);
            return if sign == Sign::Neg { -v } else { v };
        }
        let v = mant * 2f64.powi(exp - top_bits);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Base-2 exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(i64::from)
        }
    }

    /// Approximate `log10 |self|`, accurate to about 1e-15 in the mantissa.
    pub fn log10_abs_approx(&self) -> f64 {
        let Some((words, _, _, exp, _)) = self.v.as_raw_parts() else {
            return f64::NEG_INFINITY;
        };
        if self.v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let top = *words.last().unwrap() as f64;
        let frac = top / 2f64.powi(WORD_BIT_SIZE as i32);
        frac.log10() + f64::from(exp) * std::f64::consts::LOG10_2
    }

    /// Round to the nearest integer (ties to even).
    pub fn round_to_integer(&self) -> BigInt {
        if self.v.is_zero() {
            return BigInt::zero();
        }
        let r = self.v.round(0, RM);
        let (words, _, sign, exp, _) = r.as_raw_parts().expect("finite value");
        if r.is_zero() || exp <= 0 {
            return BigInt::zero();
        }
        let mut bytes = Vec::with_capacity(words.len() * WORD_BIT_SIZE / 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let mantissa = BigUint::from_bytes_le(&bytes);
        let total = (words.len() * WORD_BIT_SIZE) as i64;
        let shift = total - i64::from(exp);
        let mag = if shift >= 0 {
            mantissa >> (shift as usize)
        } else {
            mantissa << ((-shift) as usize)
        };
        let v = BigInt::from(mag);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Scientific decimal string with exactly `sig` significant digits,
    /// e.g. `1.2500000000e-1`. Deterministic for identical inputs.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.v.is_zero() {
            return format!("0.{}e0", "0".repeat(sig as usize - 1));
        }
        let prec_bits = self.bits.max((f64::from(sig) * LOG2_10) as usize + 16);
        let x = Self::wrap(self.v.abs(), prec_bits);
        let ten = Self::wrap(BigFloat::from_u8(10, prec_bits), prec_bits);
        let mut e10 = x.log10_abs_approx().floor() as i64;
        let digits = loop {
            let shift = i64::from(sig) - 1 - e10;
            let scaled = &x * &ten.powi(shift);
            let d = scaled.round_to_integer().to_string();
            match d.len().cmp(&(sig as usize)) {
                Ordering::Equal => break d,
                Ordering::Greater => e10 += 1,
                Ordering::Less => e10 -= 1,
            }
        };
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Parse a plain decimal literal such as `-0.25`, `3`, or `1.5e-3`.
    pub fn parse_decimal(s: &str, prec: Precision) -> Result<Self> {
        let r = parse_decimal_rational(s)?;
        Ok(Self::from_rational(&r, prec))
    }

    fn binop(&self, rhs: &Self, f: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Self {
        let bits = self.bits.max(rhs.bits);
        Self::wrap(f(&self.v, &rhs.v, bits), bits)
    }
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("malformed decimal number '{s}'"));
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.as_bytes().first() {
        Some(b'-') => (true, &mant[1..]),
        Some(b'+') => (false, &mant[1..]),
        _ => (false, mant),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

impl fmt::Debug for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f
            .precision()
            .map(|p| p as u32)
            .unwrap_or(((self.bits as f64) / LOG2_10) as u32);
        write!(f, "{}", self.to_decimal_string(sig))
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<&HPReal> for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                self.binop(rhs, |a, b, p| a.$call(b, p, RM))
            }
        }
        impl $trait<HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &HPReal) -> HPReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<HPReal> for &HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);

impl Div<&HPReal> for &HPReal {
    type Output = HPReal;
    /// Panics on a zero divisor; callers screen singular inputs first.
    fn div(self, rhs: &HPReal) -> HPReal {
        assert!(!rhs.is_zero(), "HPReal division by zero");
        self.binop(rhs, |a, b, p| a.div(b, p, RM))
    }
}

impl Div<HPReal> for HPReal {
    type Output = HPReal;
    fn div(self, rhs: HPReal) -> HPReal {
        &self / &rhs
    }
}

impl Div<&HPReal> for HPReal {
    type Output = HPReal;
    fn div(self, rhs: &HPReal) -> HPReal {
        &self / rhs
    }
}

impl Div<HPReal> for &HPReal {
    type Output = HPReal;
    fn div(self, rhs: HPReal) -> HPReal {
        self / &rhs
    }
}

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        Self::wrap(self.v.neg(), self.bits)
    }
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal::wrap(self.v.clone().neg(), self.bits)
    }
}

/// A finite complex number with [`HPReal`] parts.
#[derive(Clone, PartialEq)]
pub struct HPComplex {
    pub re: HPReal,
    pub im: HPReal,
}

impl HPComplex {
    pub fn new(re: HPReal, im: HPReal) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: HPReal) -> Self {
        let im = HPReal::wrap(BigFloat::new(re.bits), re.bits);
        Self { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_real(HPReal::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_real(HPReal::one(prec))
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Self::from_real(HPReal::from_i64(v, prec))
    }

    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        Self::from_real(HPReal::from_ratio(num, den, prec))
    }

    pub fn i(prec: Precision) -> Self {
        Self::new(HPReal::zero(prec), HPReal::one(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> HPReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> HPReal {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt().expect("non-negative norm")
    }

    pub fn arg(&self) -> HPReal {
        HPReal::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, k: &HPReal) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        if self.im.is_zero() {
            return Self::from_real(r);
        }
        Self::new(&r * &self.im.cos(), &r * &self.im.sin())
    }

    /// Principal logarithm, imaginary part in `(-π, π]`.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("logarithm of zero".into()));
        }
        if self.im.is_zero() && self.re.is_positive() {
            return Ok(Self::from_real(self.re.ln()?));
        }
        Ok(Self::new(self.abs().ln()?, self.arg()))
    }

    /// Principal power `self^w = exp(w ln self)`.
    pub fn pow(&self, w: &Self) -> Result<Self> {
        Ok((&self.ln()? * w).exp())
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::from_real(HPReal::wrap(BigFloat::from_u8(1, self.re.bits), self.re.bits));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `base^exponent` for a positive real base, via the real logarithm.
    pub fn real_pow(base: &HPReal, exponent: &Self) -> Result<Self> {
        let l = base.ln()?;
        Ok(exponent.scale(&l).exp())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "HPComplex reciprocal of zero");
        if self.im.is_zero() {
            let one = HPReal::wrap(BigFloat::from_u8(1, self.re.bits), self.re.bits);
            return Self::from_real(one / &self.re);
        }
        let d = self.norm_sqr();
        Self::new(&self.re / &d, -(&self.im / &d))
    }

    /// Scientific decimal rendering with `sig` significant digits per part.
    /// Real values print as a single number; otherwise `re+imi` / `re-imi`.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        let re = self.re.to_decimal_string(sig);
        if self.im.is_zero() {
            return re;
        }
        let im = self.im.abs().to_decimal_string(sig);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }
}

impl From<HPReal> for HPComplex {
    fn from(re: HPReal) -> Self {
        Self::from_real(re)
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f
            .precision()
            .map(|p| p as u32)
            .unwrap_or(((self.re.bits as f64) / LOG2_10) as u32);
        write!(f, "{}", self.to_decimal_string(sig))
    }
}

impl Add<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn add(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn sub(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn mul(self, rhs: &HPComplex) -> HPComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return HPComplex::from_real(&self.re * &rhs.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        HPComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    /// Panics on a zero divisor.
    fn div(self, rhs: &HPComplex) -> HPComplex {
        if rhs.im.is_zero() {
            return HPComplex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.recip()
    }
}

macro_rules! complex_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: HPComplex) -> HPComplex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: &HPComplex) -> HPComplex {
                (&self).$method(rhs)
            }
        }
        impl $trait<HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: HPComplex) -> HPComplex {
                self.$method(&rhs)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex::new(-self.re, -self.im)
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex::new(-&self.re, -&self.im)
    }
}
