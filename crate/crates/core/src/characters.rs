//! Dirichlet characters modulo `k` with exact root-of-unity values.
//!
//! The unit group `(Z/kZ)^*` is decomposed over the prime powers of `k`:
//! odd prime powers are cyclic with a primitive-root generator, `4` is
//! generated by `-1`, and `2^e` for `e >= 3` by the pair `{-1, 5}`. Each
//! generator is lifted to a residue mod `k` by CRT. A character is an
//! exponent vector on these generators, and its full value table over
//! `0..k` is computed once at construction.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, factorize, gcd, is_prime, totient};
use crate::qfunc::hp::{HPComplex, HPReal, Precision};

/// `exp(2πi · numerator / order)`, stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    numerator: u64,
    order: u64,
}

impl RootOfUnity {
    pub fn new(numerator: i64, order: u64) -> Self {
        assert!(order > 0, "root of unity needs a positive order");
        let n = numerator.rem_euclid(order as i64) as u64;
        let g = n.gcd(&order);
        Self {
            numerator: n / g,
            order: order / g,
        }
    }

    pub fn one() -> Self {
        Self { numerator: 0, order: 1 }
    }

    pub fn minus_one() -> Self {
        Self { numerator: 1, order: 2 }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.order.lcm(&other.order);
        let n = self.numerator * (l / self.order) + other.numerator * (l / other.order);
        Self::new((n % l) as i64, l)
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = (self.numerator as i128 * e as i128).rem_euclid(self.order as i128);
        Self::new(n as i64, self.order)
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.numerator as i64), self.order)
    }

    /// `+1` or `-1` when the value is real.
    pub fn as_sign(&self) -> Option<i8> {
        match self.order {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Numeric value; orders 1, 2 and 4 are produced exactly.
    pub fn to_complex(&self, prec: Precision) -> HPComplex {
        let zero = HPReal::zero(prec);
        let one = HPReal::one(prec);
        match (self.numerator, self.order) {
            (0, 1) => HPComplex::new(one, zero),
            (1, 2) => HPComplex::new(-one, zero),
            (1, 4) => HPComplex::new(zero, one),
            (3, 4) => HPComplex::new(zero, -one),
            (n, m) => {
                let theta = HPReal::pi(prec) * HPReal::from_ratio(2 * n as i64, m as i64, prec);
                HPComplex::new(theta.cos(), theta.sin())
            }
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numerator, self.order) {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (n, m) => write!(f, "e({n}/{m})"),
        }
    }
}

/// One cyclic factor of the unit group: a generator (as a residue mod `k`)
/// and its multiplicative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub generator: u64,
    pub order: u64,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as u64
}

fn primitive_root(pe: u64, p: u64) -> u64 {
    let phi = totient(pe).expect("positive");
    let primes: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    (2..pe)
        .find(|&g| g % p != 0 && primes.iter().all(|&q| pow_mod(g, phi / q, pe) != 1))
        .expect("odd prime powers have primitive roots")
}

/// Generators of `(Z/kZ)^*` lifted to residues mod `k`, with their orders.
fn unit_group(k: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, e) in factorize(k) {
        let pe = p.pow(e);
        let rest = k / pe;
        // x ≡ g (mod p^e), x ≡ 1 (mod rest)
        let lift = |g: u64| -> u64 {
            if rest == 1 {
                return g % k;
            }
            let t = mul_mod((g + pe - 1) % pe, inverse_mod(rest % pe, pe), pe);
            (1 + rest * t) % k
        };
        let local: Vec<(u64, u64)> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pe - 1, 2), (5, pe / 4)],
            }
        } else {
            vec![(primitive_root(pe, p), pe / p * (p - 1))]
        };
        out.extend(local.into_iter().map(|(g, order)| CyclicFactor {
            generator: lift(g),
            order,
        }));
    }
    out
}

/// Discrete-log table: for each residue mod `k` coprime to `k`, its
/// exponent vector on the group generators.
fn discrete_logs(k: u64, group: &[CyclicFactor]) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; k as usize];
    let mut exps = vec![0u64; group.len()];
    loop {
        let r = group
            .iter()
            .zip(&exps)
            .fold(1 % k, |acc, (f, &e)| mul_mod(acc, pow_mod(f.generator, e, k), k));
        debug_assert!(table[r as usize].is_none(), "generators must be independent");
        table[r as usize] = Some(exps.clone());
        // odometer increment, last factor fastest
        let mut i = group.len();
        loop {
            if i == 0 {
                return table;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < group[i].order {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// A Dirichlet character mod `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    group: Vec<CyclicFactor>,
    exponents: Vec<u64>,
    table: Vec<Option<RootOfUnity>>,
}

impl DirichletCharacter {
    fn build(modulus: u64, group: Vec<CyclicFactor>, logs: &[Option<Vec<u64>>], exponents: Vec<u64>) -> Self {
        let table = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    group
                        .iter()
                        .zip(&exponents)
                        .zip(l)
                        .fold(RootOfUnity::one(), |acc, ((f, &a), &x)| {
                            acc.mul(&RootOfUnity::new(((a * x) % f.order) as i64, f.order))
                        })
                })
            })
            .collect();
        Self {
            modulus,
            group,
            exponents,
            table,
        }
    }

    /// Character with the given exponent on each unit-group generator.
    pub fn from_exponents(modulus: u64, exponents: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("character modulus must be positive".into()));
        }
        let group = unit_group(modulus);
        if exponents.len() != group.len() {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus} needs {} exponents, got {}",
                group.len(),
                exponents.len()
            )));
        }
        if let Some((f, a)) = group.iter().zip(exponents).find(|(f, &a)| a >= f.order) {
            return Err(Error::InvalidArgument(format!(
                "exponent {a} out of range for generator {} of order {}",
                f.generator, f.order
            )));
        }
        let logs = discrete_logs(modulus, &group);
        Ok(Self::build(modulus, group, &logs, exponents.to_vec()))
    }

    /// Quadratic character mod an odd prime, i.e. the Legendre symbol.
    pub fn legendre(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "legendre character needs an odd prime, got {p}"
            )));
        }
        Self::from_exponents(p, &[(p - 1) / 2])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn group_structure(&self) -> &[CyclicFactor] {
        &self.group
    }

    /// `χ(n)`, or `None` when `gcd(n, k) > 1`.
    pub fn evaluate(&self, n: i64) -> Option<RootOfUnity> {
        self.table[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value_table(&self) -> &[Option<RootOfUnity>] {
        &self.table
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// True when every value is `0` or `±1`.
    pub fn is_real(&self) -> bool {
        self.table.iter().flatten().all(|v| v.order <= 2)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.group
            .iter()
            .zip(&self.exponents)
            .map(|(f, &a)| f.order / a.gcd(&f.order))
            .fold(1, |l, o| l.lcm(&o))
    }

    /// Smallest `f | k` such that `χ(a) = 1` whenever `a ≡ 1 (mod f)` and
    /// `gcd(a, k) = 1`, together with the primitivity flag `f == k`.
    pub fn conductor(&self) -> (u64, bool) {
        let k = self.modulus;
        let f = divisors(k)
            .into_iter()
            .find(|&f| {
                (1..=k)
                    .filter(|&a| a % f == 1 % f && gcd(a, k) == 1)
                    .all(|a| self.evaluate(a as i64).is_some_and(|v| v.is_one()))
            })
            .expect("k itself always qualifies");
        (f, f == k)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor().1
    }

    /// `χ(n)` as a working-precision complex number (zero off the units).
    pub fn value_complex(&self, n: i64, prec: Precision) -> HPComplex {
        match self.evaluate(n) {
            Some(v) => v.to_complex(prec),
            None => HPComplex::zero(prec),
        }
    }

    /// `(modulus, exponents)`, the identifying pair used in serialized specs.
    pub fn reference(&self) -> CharacterRef {
        CharacterRef {
            modulus: self.modulus,
            exponents: self.exponents.clone(),
        }
    }
}

/// All `φ(k)` characters mod `k`, ordered lexicographically by exponent
/// vector; index 0 is the principal character.
pub fn enumerate_characters(k: u64) -> Result<Vec<DirichletCharacter>> {
    if k == 0 {
        return Err(Error::InvalidArgument("character modulus must be positive".into()));
    }
    let group = unit_group(k);
    let logs = discrete_logs(k, &group);
    let count: u64 = group.iter().map(|f| f.order).product();
    let mut out = Vec::with_capacity(count as usize);
    let mut exps = vec![0u64; group.len()];
    'outer: loop {
        out.push(DirichletCharacter::build(k, group.clone(), &logs, exps.clone()));
        let mut i = group.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < group[i].order {
                break;
            }
            exps[i] = 0;
        }
    }
    Ok(out)
}

/// Serialized handle for a character: modulus plus exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterRef {
    pub modulus: u64,
    pub exponents: Vec<u64>,
}

impl CharacterRef {
    pub fn resolve(&self) -> Result<DirichletCharacter> {
        DirichletCharacter::from_exponents(self.modulus, &self.exponents)
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    modulus: u64,
    exponents: Vec<u64>,
    #[serde(default)]
    value_table: Vec<Option<[u64; 2]>>,
    #[serde(default)]
    conductor: u64,
    #[serde(default)]
    primitive: bool,
    #[serde(default)]
    principal: bool,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (conductor, primitive) = self.conductor();
        CharacterJson {
            modulus: self.modulus,
            exponents: self.exponents.clone(),
            value_table: self.table.iter().map(|v| v.map(|r| [r.numerator, r.order])).collect(),
            conductor,
            primitive,
            principal: self.is_principal(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    /// Rebuilt from `modulus` and `exponents`; a supplied value table must match.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CharacterJson::deserialize(d)?;
        let chi = DirichletCharacter::from_exponents(raw.modulus, &raw.exponents).map_err(D::Error::custom)?;
        if !raw.value_table.is_empty() {
            let expect: Vec<Option<[u64; 2]>> = chi.table.iter().map(|v| v.map(|r| [r.numerator, r.order])).collect();
            if expect != raw.value_table {
                return Err(D::Error::custom("value_table does not match modulus/exponents"));
            }
        }
        Ok(chi)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter(mod {}, exponents {:?})",
            self.modulus, self.exponents
        )
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} {:?}:", self.modulus, self.exponents)?;
        for (n, v) in self.table.iter().enumerate() {
            match v {
                Some(v) => write!(f, " {n}->{v}")?,
                None => write!(f, " {n}->0")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::jacobi_symbol;

    #[test]
    fn mod_four() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_principal());
        let chi = &chars[1];
        assert_eq!(chi.evaluate(1), Some(RootOfUnity::one()));
        assert_eq!(chi.evaluate(3), Some(RootOfUnity::minus_one()));
        assert_eq!(chi.evaluate(2), None);
        assert_eq!(chars[0].evaluate(2), None);
        assert_eq!(chi.conductor(), (4, true));
    }

    #[test]
    fn trivial_modulus() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        for n in -5..5 {
            assert_eq!(chars[0].evaluate(n), Some(RootOfUnity::one()));
        }
        assert!(enumerate_characters(0).is_err());
    }

    #[test]
    fn mod_five_orders() {
        let chars = enumerate_characters(5).unwrap();
        let mut orders: Vec<u64> = chars.iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        for c in chars.iter().filter(|c| c.order() == 4) {
            let v = c.evaluate(2).unwrap();
            assert_eq!(v.order(), 4, "2 generates (Z/5Z)^*, so chi(2) = ±i");
        }
    }

    #[test]
    fn principal_conductor_is_one() {
        for k in 2..20 {
            let chi = &enumerate_characters(k).unwrap()[0];
            assert_eq!(chi.conductor(), (1, false));
        }
    }

    #[test]
    fn imprimitive_character_mod_eight() {
        let chi4 = enumerate_characters(4).unwrap().remove(1);
        let induced = enumerate_characters(8)
            .unwrap()
            .into_iter()
            .find(|c| (1..8).step_by(2).all(|a| c.evaluate(a) == chi4.evaluate(a)))
            .unwrap();
        assert_eq!(induced.conductor(), (4, false));
    }

    #[test]
    fn legendre_characters() {
        let chi7 = DirichletCharacter::legendre(7).unwrap();
        assert_eq!(chi7.evaluate(2), Some(RootOfUnity::one()));
        assert_eq!(chi7.evaluate(3), Some(RootOfUnity::minus_one()));
        assert_eq!(chi7.evaluate(14), None);
        let chi3 = DirichletCharacter::legendre(3).unwrap();
        assert_eq!(chi3.evaluate(2), Some(RootOfUnity::minus_one()));
        for p in [3u64, 5, 7, 11, 13, 101] {
            let chi = DirichletCharacter::legendre(p).unwrap();
            assert!(chi.is_primitive() && !chi.is_principal());
            for n in 0..p as i64 {
                let want = jacobi_symbol(n, p).unwrap();
                let got = chi.evaluate(n).map_or(0, |v| v.as_sign().unwrap());
                assert_eq!(got, want, "({n}|{p})");
            }
        }
        assert!(DirichletCharacter::legendre(9).is_err());
        assert!(DirichletCharacter::legendre(2).is_err());
    }

    #[test]
    fn from_exponents_validates() {
        assert!(DirichletCharacter::from_exponents(8, &[1]).is_err());
        assert!(DirichletCharacter::from_exponents(8, &[2, 0]).is_err());
        assert!(DirichletCharacter::from_exponents(8, &[1, 1]).is_ok());
        assert!(DirichletCharacter::from_exponents(0, &[]).is_err());
    }

    #[test]
    fn json_shape_and_roundtrip() {
        let chi = enumerate_characters(4).unwrap().remove(1);
        let v = serde_json::to_value(&chi).unwrap();
        assert_eq!(v["modulus"], 4);
        assert_eq!(v["conductor"], 4);
        assert_eq!(v["primitive"], true);
        assert_eq!(v["principal"], false);
        assert_eq!(v["value_table"], serde_json::json!([null, [0, 1], null, [1, 2]]));
        let back: DirichletCharacter = serde_json::from_value(v).unwrap();
        assert_eq!(back, chi);
        let bad = serde_json::json!({"modulus": 4, "exponents": [1], "value_table": [null, [0, 1], null, [0, 1]]});
        assert!(serde_json::from_value::<DirichletCharacter>(bad).is_err());
    }

    #[test]
    fn root_of_unity_arithmetic() {
        let a = RootOfUnity::new(1, 6);
        assert_eq!(a.pow(6), RootOfUnity::one());
        assert_eq!(a.pow(3), RootOfUnity::minus_one());
        assert_eq!(a.mul(&a.conj()), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(-1, 4).to_string(), "-i");
    }
}
