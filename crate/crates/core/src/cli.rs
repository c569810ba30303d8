//! `qprod` command-line front end.
//!
//! Exit codes: `0` success (all comparisons pass), `1` a verification
//! failed, `2` usage or argument error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::characters::enumerate_characters;
use crate::error::{Error, Result};
use crate::numtheory::{psi_by_definition, psi_reduced, IntPolynomial, RationalPolyFraction};
use crate::products::{eval_lhs, eval_rhs, parse_list, IdentityId, IdentitySpec, Params, Scalar};
use crate::qfunc::{gamma_classical, qgamma, qpochhammer, HPComplex, PochLength, Precision};
use crate::verify::{run_identity, run_suite, write_csv, SuiteConfig, SuiteOutput, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "qprod",
    version,
    about = "q-gamma products, Dirichlet characters and product identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Target decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Extra working digits.
    #[arg(long, global = true, default_value_t = Precision::DEFAULT_GUARD)]
    guard: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalTarget {
    Qgamma,
    Qpoch,
    Gamma,
    ProductLhs,
    ProductRhs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single function or one side of an identity.
    Eval {
        #[arg(value_enum)]
        what: EvalTarget,
        /// Argument of q-gamma / gamma, or `a` in `(a; q)_n`.
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        identity: IdentityArgs,
    },
    /// List the Dirichlet characters of a modulus.
    Chars {
        /// Modulus k >= 1.
        #[arg(long)]
        modulus: u64,
        /// Show only this character.
        #[arg(long)]
        char_index: Option<usize>,
    },
    /// Simplify Ψ_n and compare with Φ_{rad n}^{μ(rad n)}.
    Psi {
        /// Index n >= 1.
        #[arg(long)]
        n: u64,
    },
    /// Verify one identity instance.
    Verify {
        #[command(flatten)]
        identity: IdentityArgs,
        /// Required agreeing digits [default: 40; COR2 4, THM4 5, PROTOTYPE 6].
        #[arg(long)]
        tolerance: Option<i64>,
    },
    /// Run a verification suite (the built-in one unless `--config` is given).
    Suite {
        /// JSON suite configuration.
        #[arg(long)]
        config: Option<std::path::PathBuf>,
    },
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Identity id, e.g. thm5, cor6, ex1b, jackson2.
    #[arg(long)]
    id: Option<String>,
    /// Character modulus.
    #[arg(long)]
    modulus: Option<u64>,
    /// Index into the character enumeration of `--modulus` [default: 1].
    #[arg(long)]
    char_index: Option<usize>,
    /// Base q in (0, 1); also accepts e^-pi, e^-2pi, ....
    #[arg(long)]
    q: Option<String>,
    /// Complex shift, e.g. 0.5 or 0.25+0.25i.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Integer parameter (THM3 order, finite Pochhammer length).
    #[arg(long)]
    n: Option<u64>,
    /// Comma-separated list, e.g. 1/2,1/3+1/4i.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// Comma-separated list with the same length as `--alphas`.
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
    /// Residue blocks for THM4.
    #[arg(long)]
    blocks: Option<u64>,
    /// Factors for COR2 and PROTOTYPE.
    #[arg(long)]
    terms: Option<u64>,
}

impl IdentityArgs {
    fn spec(&self, prec: Precision) -> Result<IdentitySpec> {
        let id: IdentityId = self
            .id
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--id is required".into()))?
            .parse()?;
        let character = match (self.modulus, self.char_index) {
            (Some(k), idx) => {
                let chars = enumerate_characters(k)?;
                let i = idx.unwrap_or(1);
                let chi = chars.get(i).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "modulus {k} has {} characters, index {i} out of range",
                        chars.len()
                    ))
                })?;
                Some(chi.reference())
            }
            (None, Some(_)) => return Err(Error::InvalidArgument("--char-index needs --modulus".into())),
            (None, None) => None,
        };
        let params = Params {
            alphas: self.alphas.as_deref().map(parse_list).transpose()?.unwrap_or_default(),
            betas: self.betas.as_deref().map(parse_list).transpose()?.unwrap_or_default(),
            n: self.n,
            character,
            q: self.q.as_deref().map(Scalar::parse).transpose()?,
            z: self.z.as_deref().map(Scalar::parse).transpose()?,
            terms: self.terms,
            blocks: self.blocks,
        };
        let spec = IdentitySpec::new(id, params, prec);
        spec.validate()?;
        Ok(spec)
    }
}

/// Outcome of a command before it is written out.
struct Output {
    text: String,
    code: i32,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "{} {} digits_agreed={} tolerance={}",
        verdict, r.identity, r.digits_agreed, r.tolerance_digits
    );
    let _ = writeln!(s, "  params: {}", serde_json::to_string(&r.params).unwrap_or_default());
    if let (Some(l), Some(rr)) = (&r.lhs, &r.rhs) {
        let _ = writeln!(s, "  lhs: {l}");
        let _ = writeln!(s, "  rhs: {rr}");
        let _ = writeln!(s, "  rel_diff: {}", r.rel_diff.as_deref().unwrap_or("-"));
    }
    if let Some(e) = r.error_estimate {
        let _ = writeln!(s, "  error_estimate: {e:.3e}");
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "  error: {e}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn reports_out(reports: Vec<VerificationReport>, format: Format, single: bool) -> Result<Output> {
    let out = SuiteOutput::new(reports);
    let code = if out.all_passed() { 0 } else { 1 };
    let text = match format {
        Format::Json if single => to_json(&out.reports[0])?,
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&out.reports, &mut buf)?;
            String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))?
        }
        Format::Text => {
            let mut s: String = out.reports.iter().map(report_text).collect();
            if !single {
                let _ = writeln!(
                    s,
                    "total {} passed {} failed {}",
                    out.summary.total, out.summary.passed, out.summary.failed
                );
            }
            s
        }
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct EvalJson<'a> {
    what: &'a str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_estimate: Option<f64>,
}

fn eval_cmd(what: EvalTarget, x: Option<&str>, args: &IdentityArgs, prec: Precision, format: Format) -> Result<Output> {
    let need_x = || -> Result<HPComplex> {
        Ok(Scalar::parse(x.ok_or_else(|| Error::InvalidArgument("--x is required".into()))?)?.to_complex(prec))
    };
    let need_q = || {
        Scalar::parse(
            args.q
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--q is required".into()))?,
        )?
        .to_qparam(prec)
    };
    let (name, value, est) = match what {
        EvalTarget::Qgamma => ("qgamma", qgamma(&need_x()?, &need_q()?, prec)?, None),
        EvalTarget::Qpoch => {
            let len = args.n.map_or(PochLength::Infinite, PochLength::Finite);
            ("qpoch", qpochhammer(&need_x()?, &need_q()?, len, prec)?, None)
        }
        EvalTarget::Gamma => ("gamma", gamma_classical(&need_x()?, prec)?, None),
        EvalTarget::ProductLhs => {
            let e = eval_lhs(&args.spec(prec)?)?;
            ("product-lhs", e.value, e.error_estimate)
        }
        EvalTarget::ProductRhs => {
            let e = eval_rhs(&args.spec(prec)?)?;
            ("product-rhs", e.value, e.error_estimate)
        }
    };
    let value = value.to_decimal_string(prec.digits);
    let text = match format {
        Format::Json => to_json(&EvalJson {
            what: name,
            value,
            error_estimate: est,
        })?,
        Format::Csv => format!("what,value\n{name},{value}\n"),
        Format::Text => format!("{value}\n"),
    };
    Ok(Output { text, code: 0 })
}

fn chars_cmd(modulus: u64, index: Option<usize>, format: Format) -> Result<Output> {
    let all = enumerate_characters(modulus)?;
    let chosen: Vec<(usize, _)> = match index {
        Some(i) => vec![(
            i,
            all.get(i)
                .ok_or_else(|| Error::InvalidArgument(format!("index {i} out of range")))?,
        )],
        None => all.iter().enumerate().collect(),
    };
    let text = match format {
        Format::Json => to_json(&chosen.iter().map(|(_, c)| *c).collect::<Vec<_>>())?,
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "  " };
            let mut s = [
                "index",
                "exponents",
                "order",
                "conductor",
                "primitive",
                "principal",
                "values",
            ]
            .join(sep);
            s.push('\n');
            for (i, c) in &chosen {
                let (f, prim) = c.conductor();
                let values: Vec<String> = c
                    .value_table()
                    .iter()
                    .map(|v| v.map_or_else(|| "0".to_string(), |r| r.to_string()))
                    .collect();
                let exps: Vec<String> = c.exponents().iter().map(u64::to_string).collect();
                let row = [
                    i.to_string(),
                    exps.join(" "),
                    c.order().to_string(),
                    f.to_string(),
                    prim.to_string(),
                    c.is_principal().to_string(),
                    values.join(" "),
                ];
                s.push_str(&row.join(sep));
                s.push('\n');
            }
            s
        }
    };
    Ok(Output { text, code: 0 })
}

#[derive(Serialize)]
struct PsiJson {
    n: u64,
    by_definition: RationalPolyFraction,
    reduced_base: IntPolynomial,
    reduced_exponent: i8,
    agree: bool,
}

fn psi_cmd(n: u64, format: Format) -> Result<Output> {
    let def = psi_by_definition(n)?;
    let red = psi_reduced(n)?;
    let agree = red.to_fraction() == def;
    let text = match format {
        Format::Json => to_json(&PsiJson {
            n,
            by_definition: def,
            reduced_base: red.base,
            reduced_exponent: red.exponent,
            agree,
        })?,
        Format::Csv => format!(
            "n,psi,base,exponent,agree\n{n},\"{def}\",\"{}\",{},{agree}\n",
            red.base, red.exponent
        ),
        Format::Text => format!(
            "psi_{n}(x) = {def}\nreduced: ({})^{}\nagree: {agree}\n",
            red.base, red.exponent
        ),
    };
    Ok(Output {
        text,
        code: if agree { 0 } else { 1 },
    })
}

fn dispatch(cli: Cli) -> Result<Output> {
    let prec = Precision::with_guard(cli.digits, cli.guard)?;
    match &cli.command {
        Command::Eval { what, x, identity } => eval_cmd(*what, x.as_deref(), identity, prec, cli.format),
        Command::Chars { modulus, char_index } => chars_cmd(*modulus, *char_index, cli.format),
        Command::Psi { n } => psi_cmd(*n, cli.format),
        Command::Verify { identity, tolerance } => {
            let spec = identity.spec(prec)?;
            let tol = tolerance.unwrap_or_else(|| spec.id.default_tolerance());
            reports_out(vec![run_identity(&spec, tol)], cli.format, true)
        }
        Command::Suite { config } => {
            let cfg = match config {
                Some(path) => serde_json::from_str::<SuiteConfig>(&std::fs::read_to_string(path)?)?,
                None => SuiteConfig::standard(),
            };
            reports_out(run_suite(&cfg)?, cli.format, false)
        }
    }
}

/// Parse `argv` (including the program name), run one subcommand and
/// return the process exit code.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    let msg = e.to_string();
                    eprintln!(
                        "error: {}",
                        msg.lines()
                            .next()
                            .unwrap_or("invalid arguments")
                            .trim_start_matches("error: ")
                    );
                    2
                }
            };
        }
    };
    let out_path = cli.out.clone();
    match dispatch(cli) {
        Ok(out) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::CharacterRef;

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(parse_and_dispatch(["qprod", "chars", "--modulus", "4", "--bogus"]), 2);
    }

    #[test]
    fn unknown_identity_is_usage_error() {
        assert_eq!(parse_and_dispatch(["qprod", "verify", "--id", "thm9"]), 2);
    }

    #[test]
    fn malformed_number_is_usage_error() {
        assert_eq!(parse_and_dispatch(["qprod", "eval", "gamma", "--x", "1..2"]), 2);
    }

    #[test]
    fn character_ref_from_index() {
        let args = IdentityArgs {
            id: Some("thm5".into()),
            modulus: Some(5),
            char_index: Some(2),
            q: Some("0.3".into()),
            z: Some("0.5".into()),
            n: None,
            alphas: None,
            betas: None,
            blocks: None,
            terms: None,
        };
        let spec = args.spec(Precision::default()).unwrap();
        assert_eq!(
            spec.params.character,
            Some(CharacterRef {
                modulus: 5,
                exponents: vec![2]
            })
        );
    }
}
