mod common;

use std::collections::HashSet;

use qprod::characters::{enumerate_characters, DirichletCharacter, RootOfUnity};
use qprod::numtheory::{gcd, totient};
use qprod::HPComplex;

fn all_up_to(k_max: u64) -> impl Iterator<Item = DirichletCharacter> {
    (1..=k_max).flat_map(|k| enumerate_characters(k).unwrap())
}

#[test]
fn count_and_distinct_tables() {
    for k in 1..=60u64 {
        let chars = enumerate_characters(k).unwrap();
        assert_eq!(chars.len() as u64, totient(k).unwrap(), "k = {k}");
        let tables: HashSet<_> = chars.iter().map(|c| c.value_table().to_vec()).collect();
        assert_eq!(tables.len(), chars.len(), "k = {k}");
        assert!(chars[0].is_principal());
    }
}

#[test]
fn complete_multiplicativity() {
    for chi in all_up_to(24) {
        let k = chi.modulus() as i64;
        for m in 1..=k {
            for n in 1..=k {
                let lhs = chi.evaluate(m * n);
                let rhs = match (chi.evaluate(m), chi.evaluate(n)) {
                    (Some(a), Some(b)) => Some(a.mul(&b)),
                    _ => None,
                };
                assert_eq!(lhs, rhs, "{chi:?} m={m} n={n}");
            }
        }
    }
}

#[test]
fn vanishes_exactly_off_units_and_is_periodic() {
    for chi in all_up_to(24) {
        let k = chi.modulus();
        for n in 0..3 * k as i64 {
            assert_eq!(chi.evaluate(n).is_some(), gcd(n as u64, k) == 1, "{chi:?} n={n}");
            assert_eq!(chi.evaluate(n), chi.evaluate(n + k as i64));
            assert_eq!(chi.evaluate(-n), chi.evaluate(4 * k as i64 - n));
        }
    }
}

#[test]
fn orthogonality_exact_for_real_characters() {
    for chi in all_up_to(40).filter(|c| !c.is_principal() && c.is_real()) {
        let s: i64 = chi
            .value_table()
            .iter()
            .flatten()
            .map(|v| i64::from(v.as_sign().unwrap()))
            .sum();
        assert_eq!(s, 0, "{chi:?}");
    }
}

#[test]
fn orthogonality_numeric() {
    let p = common::prec(40);
    let tiny = qprod::HPReal::from_i64(10, p).powi(-(i64::from(p.digits) - 2));
    for chi in all_up_to(30).filter(|c| !c.is_principal()) {
        let k = chi.modulus() as i64;
        let s = (1..=k).fold(HPComplex::zero(p), |acc, j| &acc + &chi.value_complex(j, p));
        assert!(s.abs() < tiny, "{chi:?}: {s}");
    }
}

#[test]
fn orthogonality_between_characters() {
    let p = common::prec(30);
    let tiny = qprod::HPReal::from_i64(10, p).powi(-25);
    for k in [5u64, 8, 12, 15] {
        let chars = enumerate_characters(k).unwrap();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let s = (1..=k as i64).fold(HPComplex::zero(p), |acc, n| {
                    let v = match (a.evaluate(n), b.evaluate(n)) {
                        (Some(x), Some(y)) => x.mul(&y.conj()).to_complex(p),
                        _ => HPComplex::zero(p),
                    };
                    &acc + &v
                });
                let expected = if i == j { totient(k).unwrap() as i64 } else { 0 };
                assert!((&s - &HPComplex::from_i64(expected, p)).abs() < tiny, "k={k} {i} {j}");
            }
        }
    }
}

#[test]
fn conductor_divides_and_induces() {
    for chi in all_up_to(24) {
        let k = chi.modulus();
        let (f, primitive) = chi.conductor();
        assert_eq!(k % f, 0);
        assert_eq!(primitive, f == k);
        let induced = enumerate_characters(f)
            .unwrap()
            .into_iter()
            .filter(|psi| {
                (1..=k)
                    .filter(|&a| gcd(a, k) == 1)
                    .all(|a| psi.evaluate(a as i64) == chi.evaluate(a as i64))
            })
            .collect::<Vec<_>>();
        assert_eq!(induced.len(), 1, "{chi:?} conductor {f}");
        assert!(induced[0].is_primitive());
    }
}

#[test]
fn legendre_symbol_matches_quadratic_residues() {
    for p in [3u64, 5, 7, 11, 13, 101] {
        let chi = DirichletCharacter::legendre(p).unwrap();
        let squares: HashSet<u64> = (1..p).map(|a| a * a % p).collect();
        for a in 1..p {
            let expected = if squares.contains(&a) {
                RootOfUnity::one()
            } else {
                RootOfUnity::minus_one()
            };
            assert_eq!(chi.evaluate(a as i64), Some(expected), "p={p} a={a}");
        }
        assert!(chi.is_primitive());
    }
}

#[test]
fn json_round_trip() {
    for chi in enumerate_characters(20).unwrap() {
        let s = serde_json::to_string(&chi).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in [
            "modulus",
            "exponents",
            "value_table",
            "conductor",
            "primitive",
            "principal",
        ] {
            assert!(v.get(key).is_some(), "{key} missing in {s}");
        }
        let back: DirichletCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, chi);
    }
}
