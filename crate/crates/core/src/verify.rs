//! Comparison engine, suite configuration and report output.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::characters::enumerate_characters;
use crate::error::Result;
use crate::products::{eval_lhs, eval_rhs, IdentityId, IdentitySpec, Params, Scalar};
use crate::qfunc::{HPComplex, HPReal, Precision};

/// Outcome of comparing two computed values.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub abs_diff: HPReal,
    pub rel_diff: HPReal,
    pub digits_agreed: i64,
    pub pass: bool,
    /// Both sides are below `10^-digits` in modulus, so agreement says nothing.
    pub vacuous: bool,
}

/// `digits_agreed = floor(-log10(|l - r| / max(|l|, |r|)))`, capped at the
/// working digit count, which is also its value when the sides coincide.
pub fn compare(lhs: &HPComplex, rhs: &HPComplex, tolerance_digits: i64, prec: Precision) -> Comparison {
    let cap = i64::from(prec.working_digits());
    let abs_diff = (lhs - rhs).abs();
    let (la, ra) = (lhs.abs(), rhs.abs());
    let scale = if la > ra { la.clone() } else { ra.clone() };
    let tiny = HPReal::from_i64(10, prec).powi(-i64::from(prec.digits));
    let vacuous = la < tiny && ra < tiny;
    if vacuous {
        return Comparison {
            abs_diff,
            rel_diff: HPReal::zero(prec),
            digits_agreed: cap,
            pass: true,
            vacuous,
        };
    }
    let rel_diff = &abs_diff / &scale;
    let digits_agreed = if rel_diff.is_zero() {
        cap
    } else {
        let ln10 = HPReal::from_i64(10, prec).ln().expect("ln 10");
        let l = -(rel_diff.ln().expect("positive relative difference") / ln10);
        (l.to_f64().floor() as i64).min(cap)
    };
    Comparison {
        abs_diff,
        rel_diff,
        digits_agreed,
        pass: digits_agreed >= tolerance_digits,
        vacuous,
    }
}

/// One verified identity instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: Params,
    pub precision: Precision,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub abs_diff: Option<String>,
    pub rel_diff: Option<String>,
    pub digits_agreed: i64,
    pub tolerance_digits: i64,
    pub pass: bool,
    pub error: Option<String>,
    pub elapsed_ms: u64,
    #[serde(default)]
    pub vacuous: bool,
    /// Recorded truncation error estimate of the left side (relative).
    #[serde(default)]
    pub error_estimate: Option<f64>,
    /// Primitivity of the character, for character identities.
    #[serde(default)]
    pub primitive: Option<bool>,
    #[serde(default)]
    pub notes: Vec<String>,
}

const DIFF_DIGITS: u32 = 6;

/// Wall-clock timer; `Instant` is unavailable on `wasm32-unknown-unknown`,
/// where elapsed time is reported as zero.
struct Timer {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Timer {
    fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.start.elapsed().as_millis() as u64;
        #[cfg(target_arch = "wasm32")]
        0
    }
}

/// Evaluate both sides of `spec` and compare them. Evaluation errors give a
/// failing report with `error` set.
pub fn run_identity(spec: &IdentitySpec, tolerance_digits: i64) -> VerificationReport {
    let timer = Timer::start();
    let mut report = VerificationReport {
        identity: spec.id,
        params: spec.params.clone(),
        precision: spec.precision,
        lhs: None,
        rhs: None,
        abs_diff: None,
        rel_diff: None,
        digits_agreed: 0,
        tolerance_digits,
        pass: false,
        error: None,
        elapsed_ms: 0,
        vacuous: false,
        error_estimate: None,
        primitive: None,
        notes: Vec::new(),
    };
    if let Ok(chi) = spec.character() {
        let primitive = chi.is_primitive();
        report.primitive = Some(primitive);
        if !primitive {
            report
                .notes
                .push(format!("imprimitive character (conductor {})", chi.conductor().0));
        }
    }
    match eval_lhs(spec).and_then(|l| eval_rhs(spec).map(|r| (l, r))) {
        Ok((l, r)) => {
            let c = compare(&l.value, &r.value, tolerance_digits, spec.precision);
            let sig = spec.precision.digits;
            report.lhs = Some(l.value.to_decimal_string(sig));
            report.rhs = Some(r.value.to_decimal_string(sig));
            report.abs_diff = Some(c.abs_diff.to_decimal_string(DIFF_DIGITS));
            report.rel_diff = Some(c.rel_diff.to_decimal_string(DIFF_DIGITS));
            report.digits_agreed = c.digits_agreed;
            report.pass = c.pass;
            report.vacuous = c.vacuous;
            report.error_estimate = l.error_estimate;
            if c.vacuous {
                report.notes.push("both sides vanish to working precision".into());
            }
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    if spec.id == IdentityId::Thm1 && spec.sums_match() == Some(false) {
        report.pass = false;
        report.notes.push("sum(alpha) != sum(beta): hypothesis violated".into());
    }
    report.elapsed_ms = timer.elapsed_ms();
    report
}

/// A parameter grid over one identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub id: IdentityId,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub tolerance: Option<i64>,
    /// Character moduli; every non-principal character of each is used.
    #[serde(default)]
    pub moduli: Vec<u64>,
    #[serde(default)]
    pub q: Vec<Scalar>,
    #[serde(default)]
    pub z: Vec<Scalar>,
    #[serde(default)]
    pub n: Vec<u64>,
    #[serde(default)]
    pub blocks: Option<u64>,
    #[serde(default)]
    pub terms: Option<u64>,
}

/// A single explicit suite entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCase {
    pub spec: IdentitySpec,
    #[serde(default)]
    pub tolerance: Option<i64>,
}

/// Identities and parameter grids to verify. The default value is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub grids: Vec<Grid>,
    #[serde(default)]
    pub cases: Vec<SuiteCase>,
}

fn scalars(xs: &[&str]) -> Vec<Scalar> {
    xs.iter().map(|s| Scalar::parse(s).expect("literal scalar")).collect()
}

impl Grid {
    pub fn new(id: IdentityId) -> Self {
        Self {
            id,
            digits: None,
            tolerance: None,
            moduli: Vec::new(),
            q: Vec::new(),
            z: Vec::new(),
            n: Vec::new(),
            blocks: None,
            terms: None,
        }
    }
}

fn grid(id: IdentityId, digits: u32) -> Grid {
    Grid {
        digits: Some(digits),
        ..Grid::new(id)
    }
}

impl SuiteConfig {
    /// The full default suite.
    pub fn standard() -> Self {
        use IdentityId::*;
        let mut grids = Vec::new();
        for id in [Thm3Full, Thm3Coprime] {
            grids.push(Grid {
                n: (2..=12).collect(),
                q: scalars(&["0.2", "0.6", "0.95"]),
                ..grid(id, 50)
            });
        }
        for id in [Thm5, Cor6] {
            grids.push(Grid {
                moduli: (3..=12).collect(),
                q: scalars(&["0.3", "0.7"]),
                z: scalars(&["0.5", "-0.5", "0.25+0.25i"]),
                ..grid(id, 60)
            });
        }
        grids.push(Grid {
            moduli: vec![3, 4],
            z: scalars(&["0.5"]),
            blocks: Some(1_000_000),
            ..grid(Thm4, 20)
        });
        grids.push(Grid {
            terms: Some(1_000_000),
            ..grid(Prototype, 20)
        });
        for id in [Ex1a, Ex1b, Ex2a, Ex2b, Jackson1, Jackson2, Jackson3, Jackson4] {
            grids.push(grid(id, 60));
        }

        let p50 = Precision::new(50).expect("precision");
        let mut cases = Vec::new();
        let thm1 = [
            ("1/2,1/3", "1/4,7/12", "0.5"),
            ("0.3+0.2i,1.7,2.5-0.4i", "0.9,1.1+0.1i,2.5-0.3i", "0.1"),
            ("0.25,0.75", "1/2,1/2", "0.9"),
        ];
        for (a, b, q) in thm1 {
            let params = Params {
                alphas: crate::products::parse_list(a).expect("alphas"),
                betas: crate::products::parse_list(b).expect("betas"),
                q: Some(Scalar::parse(q).expect("q")),
                ..Params::default()
            };
            cases.push(SuiteCase {
                spec: IdentitySpec::new(Thm1, params, p50),
                tolerance: Some(42),
            });
        }
        let params = Params {
            alphas: scalars(&["1/2", "1/2"]),
            betas: scalars(&["1/4", "3/4"]),
            terms: Some(100_000),
            ..Params::default()
        };
        cases.push(SuiteCase {
            spec: IdentitySpec::new(Cor2, params, Precision::new(30).expect("precision")),
            tolerance: None,
        });
        Self { grids, cases }
    }

    /// Expand grids and explicit cases into `(spec, tolerance)` pairs.
    pub fn expand(&self) -> Result<Vec<(IdentitySpec, i64)>> {
        let mut out = Vec::new();
        for g in &self.grids {
            let prec = match g.digits {
                Some(d) => Precision::new(d)?,
                None => Precision::default(),
            };
            let tol = g.tolerance.unwrap_or_else(|| g.id.default_tolerance());
            let base = Params {
                blocks: g.blocks,
                terms: g.terms,
                ..Params::default()
            };
            let mut params = vec![base];
            if !g.moduli.is_empty() {
                let mut next = Vec::new();
                for &k in &g.moduli {
                    for chi in enumerate_characters(k)?.iter().filter(|c| !c.is_principal()) {
                        for p in &params {
                            next.push(Params {
                                character: Some(chi.reference()),
                                ..p.clone()
                            });
                        }
                    }
                }
                params = next;
            }
            if !g.n.is_empty() {
                params = params
                    .iter()
                    .flat_map(|p| {
                        g.n.iter().map(move |&n| Params {
                            n: Some(n),
                            ..p.clone()
                        })
                    })
                    .collect();
            }
            if !g.q.is_empty() {
                params = params
                    .iter()
                    .flat_map(|p| {
                        g.q.iter().map(move |q| Params {
                            q: Some(q.clone()),
                            ..p.clone()
                        })
                    })
                    .collect();
            }
            if !g.z.is_empty() {
                params = params
                    .iter()
                    .flat_map(|p| {
                        g.z.iter().map(move |z| Params {
                            z: Some(z.clone()),
                            ..p.clone()
                        })
                    })
                    .collect();
            }
            out.extend(params.into_iter().map(|p| (IdentitySpec::new(g.id, p, prec), tol)));
        }
        for c in &self.cases {
            out.push((
                c.spec.clone(),
                c.tolerance.unwrap_or_else(|| c.spec.id.default_tolerance()),
            ));
        }
        Ok(out)
    }
}

fn sort_key(r: &VerificationReport) -> (IdentityId, String, u32) {
    (
        r.identity,
        serde_json::to_string(&r.params).unwrap_or_default(),
        r.precision.digits,
    )
}

/// Run every case of `config`. Failures never abort the suite; reports are
/// sorted by identity, then parameters, independent of execution order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let cases = config.expand()?;
    #[cfg(feature = "parallel")]
    let mut reports: Vec<VerificationReport> = {
        use rayon::prelude::*;
        cases.par_iter().map(|(s, t)| run_identity(s, *t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut reports: Vec<VerificationReport> = cases.iter().map(|(s, t)| run_identity(s, *t)).collect();
    reports.sort_by_cached_key(sort_key);
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Suite output document: the reports plus an aggregate summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutput {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl SuiteOutput {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        };
        Self { reports, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "identity",
    "params",
    "lhs",
    "rhs",
    "abs_diff",
    "rel_diff",
    "digits_agreed",
    "tolerance_digits",
    "pass",
    "error",
    "elapsed_ms",
];

/// Write reports as CSV with the report columns; `params` is embedded JSON.
pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        w.write_record([
            r.identity.name().to_string(),
            serde_json::to_string(&r.params)?,
            r.lhs.clone().unwrap_or_default(),
            r.rhs.clone().unwrap_or_default(),
            r.abs_diff.clone().unwrap_or_default(),
            r.rel_diff.clone().unwrap_or_default(),
            r.digits_agreed.to_string(),
            r.tolerance_digits.to_string(),
            r.pass.to_string(),
            r.error.clone().unwrap_or_default(),
            r.elapsed_ms.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
