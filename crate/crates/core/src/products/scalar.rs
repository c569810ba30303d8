use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qfunc::hp::parse_decimal_rational;
use crate::qfunc::{HPComplex, HPReal, Precision, QParam};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Exact {
        re: BigRational,
        im: BigRational,
    },
    /// `e^{-kπ}`
    ExpNegPi(u32),
}

/// A numeric parameter given as text and kept exact where possible.
///
/// Accepted forms: decimals (`0.25`, `-1.5e-3`), fractions (`3/4`), complex
/// values (`0.25+0.25i`, `-i`, `2/3-1/5i`) and the literals `e^-pi`,
/// `e^-2pi`, `e^-4pi`, `e^-8pi` (any `e^-kpi` with positive integer `k`).
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    text: String,
    value: Value,
}

fn parse_real(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_decimal_rational(n)?;
            let d = parse_decimal_rational(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(n / d)
        }
        None => parse_decimal_rational(s),
    }
}

fn parse_exp_neg_pi(s: &str) -> Option<Result<u32>> {
    let rest = s.strip_prefix("e^-")?.strip_suffix("pi")?;
    if rest.is_empty() {
        return Some(Ok(1));
    }
    Some(
        rest.parse::<u32>()
            .ok()
            .filter(|k| *k > 0)
            .ok_or_else(|| Error::Parse(format!("bad exponent in '{s}'"))),
    )
}

/// Position of the `+`/`-` separating real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len())
        .rev()
        .find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E' | b'/'))
}

impl Scalar {
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_lowercase();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if let Some(k) = parse_exp_neg_pi(&t) {
            return Ok(Self {
                text: t.clone(),
                value: Value::ExpNegPi(k?),
            });
        }
        let value = if let Some(body) = t.strip_suffix('i') {
            let (re, im) = match split_point(body) {
                Some(i) => (parse_real(&body[..i])?, &body[i..]),
                None => (BigRational::zero(), body),
            };
            let im = match im {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_real(other)?,
            };
            Value::Exact { re, im }
        } else {
            Value::Exact {
                re: parse_real(&t)?,
                im: BigRational::zero(),
            }
        };
        Ok(Self { text: t, value })
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        let r = BigRational::new(num.into(), den.into());
        Self::from_exact(r, BigRational::zero())
    }

    pub fn from_exact(re: BigRational, im: BigRational) -> Self {
        let text = render(&re, &im);
        Self {
            text,
            value: Value::Exact { re, im },
        }
    }

    pub fn exp_neg_pi(k: u32) -> Self {
        let text = if k == 1 {
            "e^-pi".to_string()
        } else {
            format!("e^-{k}pi")
        };
        Self {
            text,
            value: Value::ExpNegPi(k),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Exact real and imaginary parts, unless the value is transcendental.
    pub fn exact(&self) -> Option<(&BigRational, &BigRational)> {
        match &self.value {
            Value::Exact { re, im } => Some((re, im)),
            Value::ExpNegPi(_) => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.exact().is_none_or(|(_, im)| im.is_zero())
    }

    /// True for `0, -1, -2, ...`.
    pub fn is_nonpositive_integer(&self) -> bool {
        matches!(self.exact(), Some((re, im)) if im.is_zero() && re.is_integer() && !re.is_positive())
    }

    pub fn to_complex(&self, prec: Precision) -> HPComplex {
        match &self.value {
            Value::Exact { re, im } => HPComplex::new(HPReal::from_rational(re, prec), HPReal::from_rational(im, prec)),
            Value::ExpNegPi(k) => HPComplex::from_real(exp_neg_pi_value(*k, prec)),
        }
    }

    pub fn to_real(&self, prec: Precision) -> Result<HPReal> {
        if !self.is_real() {
            return Err(Error::InvalidArgument(format!("'{}' must be real", self.text)));
        }
        Ok(self.to_complex(prec).re)
    }

    /// Interpret as a base `q` in `(0, 1)`. For `e^{-kπ}` the logarithm
    /// `-kπ` is kept exact.
    pub fn to_qparam(&self, prec: Precision) -> Result<QParam> {
        match &self.value {
            Value::ExpNegPi(k) => QParam::from_ln(-(HPReal::pi(prec) * HPReal::from_u64(u64::from(*k), prec))),
            Value::Exact { re, im } => {
                if !im.is_zero() || !re.is_positive() || *re >= BigRational::one() {
                    return Err(Error::InvalidArgument(format!(
                        "q must lie in (0, 1), got '{}'",
                        self.text
                    )));
                }
                QParam::new(HPReal::from_rational(re, prec))
            }
        }
    }
}

fn exp_neg_pi_value(k: u32, prec: Precision) -> HPReal {
    (-(HPReal::pi(prec) * HPReal::from_u64(u64::from(k), prec))).exp()
}

fn render_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render(re: &BigRational, im: &BigRational) -> String {
    if im.is_zero() {
        return render_rational(re);
    }
    let im_text = render_rational(&im.abs());
    let sign = if im.is_negative() { "-" } else { "+" };
    if re.is_zero() {
        let sign = if im.is_negative() { "-" } else { "" };
        format!("{sign}{im_text}i")
    } else {
        format!("{}{sign}{im_text}i", render_rational(re))
    }
}

/// Parse a comma-separated list such as `1/2,0.25+0.1i`.
pub fn parse_list(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(Scalar::parse).collect()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.text)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_reals_and_fractions() {
        let s = Scalar::parse("0.25").unwrap();
        assert_eq!(s.exact().unwrap(), (&r(1, 4), &r(0, 1)));
        let s = Scalar::parse("-3/4").unwrap();
        assert_eq!(s.exact().unwrap().0, &r(-3, 4));
        let s = Scalar::parse("1.5e-3").unwrap();
        assert_eq!(s.exact().unwrap().0, &r(3, 2000));
    }

    #[test]
    fn parses_complex_forms() {
        let cases = [
            ("0.25+0.25i", r(1, 4), r(1, 4)),
            ("1-i", r(1, 1), r(-1, 1)),
            ("-i", r(0, 1), r(-1, 1)),
            ("i", r(0, 1), r(1, 1)),
            ("2/3-1/5i", r(2, 3), r(-1, 5)),
            ("1e-2+2e-1i", r(1, 100), r(1, 5)),
            ("-0.5i", r(0, 1), r(-1, 2)),
        ];
        for (text, re, im) in cases {
            let s = Scalar::parse(text).unwrap();
            assert_eq!(s.exact().unwrap(), (&re, &im), "{text}");
        }
    }

    #[test]
    fn parses_pi_literals() {
        for (text, k) in [("e^-pi", 1u32), ("e^-2pi", 2), ("E^-8PI", 8)] {
            let s = Scalar::parse(text).unwrap();
            assert!(s.exact().is_none());
            let q = s.to_qparam(Precision::default()).unwrap();
            assert!((q.ln_f64() + f64::from(k) * std::f64::consts::PI).abs() < 1e-12);
        }
        assert!(Scalar::parse("e^-0pi").is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "abc", "1/0", "1+", "0.2.3", "--1"] {
            assert!(Scalar::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn qparam_range() {
        let p = Precision::default();
        assert!(Scalar::parse("1").unwrap().to_qparam(p).is_err());
        assert!(Scalar::parse("0.5i").unwrap().to_qparam(p).is_err());
        assert!(Scalar::parse("0.5").unwrap().to_qparam(p).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let s = Scalar::parse("1/3+1/4i").unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "\"1/3+1/4i\"");
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rendering_exact_values() {
        assert_eq!(Scalar::from_exact(r(1, 2), r(-1, 3)).text(), "1/2-1/3i");
        assert_eq!(Scalar::from_exact(r(0, 1), r(2, 1)).text(), "2i");
        assert_eq!(Scalar::from_ratio(3, 4).text(), "3/4");
        assert!(Scalar::from_ratio(-2, 1).is_nonpositive_integer());
        assert!(!Scalar::from_ratio(1, 2).is_nonpositive_integer());
    }
}
