//! Exact number theory: multiplicative functions, the Jacobi symbol,
//! integer polynomials, cyclotomic polynomials and `Ψ_n`.
//!
//! Factorization is by trial division; arguments up to about `10^6` are the
//! intended range.

mod cyclotomic;
mod poly;

pub use cyclotomic::{cyclotomic, psi_by_definition, psi_factor_products, psi_reduced, PsiReduced};
pub use poly::{IntPolynomial, RationalPolyFraction};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!(
            "{what}: argument must be positive, got 0"
        )))
    } else {
        Ok(())
    }
}

/// Prime factorization `[(p, e), ...]` in increasing order of `p`.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    require_positive(n, "mobius")?;
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> Result<u64> {
    require_positive(n, "totient")?;
    Ok(factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> Result<u64> {
    require_positive(n, "radical")?;
    Ok(factorize(n).iter().map(|&(p, _)| p).product())
}

/// Exact value of an arithmetic function. Logarithmic values stay symbolic
/// until a numeric consumer asks for them at some precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArithValue {
    Integer {
        value: i64,
    },
    Sign {
        value: i8,
    },
    /// `log p` for an argument equal to `p^a`, `a >= 1`.
    PrimePowerLog {
        prime: u64,
        exponent: u32,
    },
}

/// von Mangoldt function: `log p` on prime powers `p^a`, zero elsewhere.
pub fn von_mangoldt(n: u64) -> Result<ArithValue> {
    require_positive(n, "von_mangoldt")?;
    Ok(match factorize(n).as_slice() {
        [(p, a)] => ArithValue::PrimePowerLog {
            prime: *p,
            exponent: *a,
        },
        _ => ArithValue::Integer { value: 0 },
    })
}

/// Jacobi symbol `(n | m)` for odd positive `m`.
pub fn jacobi_symbol(n: i64, m: u64) -> Result<i8> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "jacobi symbol needs an odd positive modulus, got {m}"
        )));
    }
    let mut a = n.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    Ok(if m == 1 { sign } else { 0 })
}
