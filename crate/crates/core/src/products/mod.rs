//! Left- and right-hand side evaluators for every product identity.
//!
//! Each identity is named by an [`IdentityId`] and parameterized by
//! [`Params`]. The two sides are computed by separate routines: left sides
//! multiply the defining infinite product directly, right sides go through
//! `Γ_q`, `Γ`, Euler's function or a closed form.

mod eval;
mod scalar;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use eval::{
    chi_product_lhs, cor2_lhs, cor2_rhs, cor6_rhs, prototype_lhs, prototype_rhs, psi_product, thm1_lhs, thm1_rhs,
    thm3_coprime_lhs, thm3_coprime_rhs, thm3_full_lhs, thm3_full_rhs, thm4_lhs, thm4_rhs, thm5_rhs, Evaluation,
};
pub use scalar::{parse_list, Scalar};

use crate::characters::{CharacterRef, DirichletCharacter};
use crate::error::{Error, Result};
use crate::qfunc::{
    example_closed_form, jackson_value, qgamma_scaled, ExampleId, HPComplex, JacksonId, Precision, QParam,
};

/// Names of the identities the verifier knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "THM1")]
    Thm1,
    #[serde(rename = "COR2")]
    Cor2,
    #[serde(rename = "THM3_FULL")]
    Thm3Full,
    #[serde(rename = "THM3_COPRIME")]
    Thm3Coprime,
    #[serde(rename = "THM4")]
    Thm4,
    #[serde(rename = "THM5")]
    Thm5,
    #[serde(rename = "COR6")]
    Cor6,
    #[serde(rename = "PROTOTYPE")]
    Prototype,
    #[serde(rename = "EX1A")]
    Ex1a,
    #[serde(rename = "EX1B")]
    Ex1b,
    #[serde(rename = "EX2A")]
    Ex2a,
    #[serde(rename = "EX2B")]
    Ex2b,
    #[serde(rename = "JACKSON1")]
    Jackson1,
    #[serde(rename = "JACKSON2")]
    Jackson2,
    #[serde(rename = "JACKSON3")]
    Jackson3,
    #[serde(rename = "JACKSON4")]
    Jackson4,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        Self::Thm1,
        Self::Cor2,
        Self::Thm3Full,
        Self::Thm3Coprime,
        Self::Thm4,
        Self::Thm5,
        Self::Cor6,
        Self::Prototype,
        Self::Ex1a,
        Self::Ex1b,
        Self::Ex2a,
        Self::Ex2b,
        Self::Jackson1,
        Self::Jackson2,
        Self::Jackson3,
        Self::Jackson4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Thm1 => "THM1",
            Self::Cor2 => "COR2",
            Self::Thm3Full => "THM3_FULL",
            Self::Thm3Coprime => "THM3_COPRIME",
            Self::Thm4 => "THM4",
            Self::Thm5 => "THM5",
            Self::Cor6 => "COR6",
            Self::Prototype => "PROTOTYPE",
            Self::Ex1a => "EX1A",
            Self::Ex1b => "EX1B",
            Self::Ex2a => "EX2A",
            Self::Ex2b => "EX2B",
            Self::Jackson1 => "JACKSON1",
            Self::Jackson2 => "JACKSON2",
            Self::Jackson3 => "JACKSON3",
            Self::Jackson4 => "JACKSON4",
        }
    }

    /// Agreement required by default: truncation-limited identities get
    /// looser targets than the geometrically convergent ones.
    pub fn default_tolerance(self) -> i64 {
        match self {
            Self::Cor2 => 4,
            Self::Thm4 => 5,
            Self::Prototype => 6,
            _ => 40,
        }
    }

    fn example(self) -> Option<(ExampleId, u32, i64)> {
        match self {
            Self::Ex1a => Some((ExampleId::Ex1a, 1, 1)),
            Self::Ex1b => Some((ExampleId::Ex1b, 1, -1)),
            Self::Ex2a => Some((ExampleId::Ex2a, 2, 1)),
            Self::Ex2b => Some((ExampleId::Ex2b, 2, -1)),
            _ => None,
        }
    }

    fn jackson(self) -> Option<JacksonId> {
        match self {
            Self::Jackson1 => Some(JacksonId::JQtr4pi),
            Self::Jackson2 => Some(JacksonId::JHalf4pi),
            Self::Jackson3 => Some(JacksonId::JHalf8pi),
            Self::Jackson4 => Some(JacksonId::JQtr8pi),
            _ => None,
        }
    }

    /// Whether both sides converge geometrically (as opposed to `O(1/N)`).
    pub fn is_geometric(self) -> bool {
        !matches!(self, Self::Cor2 | Self::Thm4 | Self::Prototype)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|id| id.name() == up)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity id '{s}'")))
    }
}

/// Parameters of one identity instance. Unused fields are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphas: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub betas: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Scalar>,
    /// Truncation length for `COR2` and `PROTOTYPE`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<u64>,
    /// Number of residue blocks for `THM4`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<u64>,
}

/// One identity plus its parameters and working precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: IdentityId,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub precision: Precision,
}

pub const DEFAULT_COR2_TERMS: u64 = 100_000;
pub const DEFAULT_PROTOTYPE_TERMS: u64 = 1_000_000;
pub const DEFAULT_THM4_BLOCKS: u64 = 1_000_000;

fn mod4_character() -> DirichletCharacter {
    DirichletCharacter::from_exponents(4, &[1]).expect("mod 4 character")
}

fn sum_exact(xs: &[Scalar]) -> Option<(BigRational, BigRational)> {
    xs.iter()
        .try_fold((BigRational::zero(), BigRational::zero()), |(r, i), s| {
            s.exact().map(|(a, b)| (r + a, i + b))
        })
}

impl IdentitySpec {
    pub fn new(id: IdentityId, params: Params, precision: Precision) -> Self {
        Self { id, params, precision }
    }

    /// A spec with no parameters (for the example and special-value ids).
    pub fn bare(id: IdentityId, precision: Precision) -> Self {
        Self::new(id, Params::default(), precision)
    }

    /// Whether `∑α = ∑β` holds exactly, or `None` if a parameter is not exact.
    pub fn sums_match(&self) -> Option<bool> {
        let a = sum_exact(&self.params.alphas)?;
        let b = sum_exact(&self.params.betas)?;
        Some(a == b)
    }

    fn q(&self) -> Result<QParam> {
        self.params
            .q
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs q", self.id)))?
            .to_qparam(self.precision)
    }

    fn z(&self) -> Result<HPComplex> {
        Ok(self
            .params
            .z
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs z", self.id)))?
            .to_complex(self.precision))
    }

    fn n(&self) -> Result<u64> {
        match self.params.n {
            Some(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidArgument(format!("{} needs a positive n", self.id))),
        }
    }

    /// The character, required non-principal with modulus above 1.
    pub fn character(&self) -> Result<DirichletCharacter> {
        let r = self
            .params
            .character
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs a character", self.id)))?;
        let chi = r.resolve()?;
        if chi.modulus() < 2 || chi.is_principal() {
            return Err(Error::InvalidArgument(format!(
                "{} needs a non-principal character with modulus > 1",
                self.id
            )));
        }
        Ok(chi)
    }

    fn lists(&self) -> Result<(Vec<HPComplex>, Vec<HPComplex>)> {
        let p = &self.params;
        if p.alphas.len() != p.betas.len() || p.alphas.is_empty() {
            return Err(Error::InvalidArgument(
                "alphas and betas must be non-empty and of equal length".into(),
            ));
        }
        if p.alphas.iter().chain(&p.betas).any(|s| s.exact().is_none()) {
            return Err(Error::InvalidArgument(
                "alphas and betas must be rational or complex rational".into(),
            ));
        }
        let conv = |xs: &[Scalar]| xs.iter().map(|s| s.to_complex(self.precision)).collect();
        Ok((conv(&p.alphas), conv(&p.betas)))
    }

    /// Check the parameter invariants of the identity.
    pub fn validate(&self) -> Result<()> {
        use IdentityId::*;
        match self.id {
            Thm1 => {
                self.lists()?;
                if self
                    .params
                    .alphas
                    .iter()
                    .chain(&self.params.betas)
                    .any(|s| s.exact().is_some_and(|(r, i)| r.is_zero() && i.is_zero()))
                {
                    return Err(Error::InvalidArgument("alphas and betas must be nonzero".into()));
                }
                self.q()?;
            }
            Cor2 => {
                self.lists()?;
                if self
                    .params
                    .alphas
                    .iter()
                    .chain(&self.params.betas)
                    .any(Scalar::is_nonpositive_integer)
                {
                    return Err(Error::InvalidArgument(
                        "entries must not be non-positive integers".into(),
                    ));
                }
                if self.sums_match() != Some(true) {
                    return Err(Error::InvalidArgument(
                        "the product only converges when sum(alpha) = sum(beta)".into(),
                    ));
                }
            }
            Thm3Full => {
                self.n()?;
                self.q()?;
            }
            Thm3Coprime => {
                if self.n()? < 2 {
                    return Err(Error::InvalidArgument("THM3_COPRIME needs n >= 2".into()));
                }
                self.q()?;
            }
            Thm4 => {
                self.character()?;
                self.z()?;
            }
            Thm5 | Cor6 => {
                self.character()?;
                self.q()?;
                self.z()?;
            }
            Prototype | Ex1a | Ex1b | Ex2a | Ex2b | Jackson1 | Jackson2 | Jackson3 | Jackson4 => {}
        }
        Ok(())
    }

    fn character_values(&self) -> Result<Vec<HPComplex>> {
        let chi = self.character()?;
        Ok(values_of(&chi, self.precision))
    }
}

/// `χ(r)` for `r` in `0..k` as working-precision complex numbers.
pub fn values_of(chi: &DirichletCharacter, prec: Precision) -> Vec<HPComplex> {
    (0..chi.modulus()).map(|r| chi.value_complex(r as i64, prec)).collect()
}

/// Left side at the default truncation.
pub fn eval_lhs(spec: &IdentitySpec) -> Result<Evaluation> {
    eval_lhs_scaled(spec, 1)
}

/// Left side with every geometric truncation point multiplied by `scale`.
/// Identities truncated at a fixed length (`COR2`, `THM4`, `PROTOTYPE`)
/// scale that length instead.
pub fn eval_lhs_scaled(spec: &IdentitySpec, scale: u64) -> Result<Evaluation> {
    use IdentityId::*;
    spec.validate()?;
    let prec = spec.precision;
    let scale = scale.max(1);
    match spec.id {
        Thm1 => {
            let (a, b) = spec.lists()?;
            thm1_lhs(&a, &b, &spec.q()?, prec, scale)
        }
        Cor2 => {
            let (a, b) = spec.lists()?;
            cor2_lhs(&a, &b, spec.params.terms.unwrap_or(DEFAULT_COR2_TERMS) * scale, prec)
        }
        Thm3Full => thm3_full_lhs(spec.n()?, &spec.q()?, prec, scale),
        Thm3Coprime => thm3_coprime_lhs(spec.n()?, &spec.q()?, prec, scale),
        Thm4 => thm4_lhs(
            &spec.character_values()?,
            &spec.z()?,
            spec.params.blocks.unwrap_or(DEFAULT_THM4_BLOCKS) * scale,
            prec,
        ),
        Thm5 | Cor6 => chi_product_lhs(&spec.character_values()?, &spec.q()?, &spec.z()?, prec, scale),
        Prototype => prototype_lhs(spec.params.terms.unwrap_or(DEFAULT_PROTOTYPE_TERMS) * scale, prec),
        Ex1a | Ex1b | Ex2a | Ex2b => {
            let (_, k, z) = spec.id.example().expect("example id");
            let q = Scalar::exp_neg_pi(k).to_qparam(prec)?;
            let values = values_of(&mod4_character(), prec);
            chi_product_lhs(&values, &q, &HPComplex::from_i64(z, prec), prec, scale)
        }
        Jackson1 | Jackson2 | Jackson3 | Jackson4 => {
            let j = spec.id.jackson().expect("jackson id");
            let q = Scalar::exp_neg_pi(j.pi_multiple()).to_qparam(prec)?;
            let value = match j {
                JacksonId::JHalf4pi | JacksonId::JHalf8pi => {
                    qgamma_scaled(&HPComplex::from_ratio(1, 2, prec), &q, prec, scale)?
                }
                JacksonId::JQtr4pi | JacksonId::JQtr8pi => {
                    &qgamma_scaled(&HPComplex::from_ratio(1, 4, prec), &q, prec, scale)?
                        * &qgamma_scaled(&HPComplex::from_ratio(3, 4, prec), &q, prec, scale)?
                }
            };
            Ok(Evaluation {
                value,
                error_estimate: None,
                terms: None,
            })
        }
    }
}

/// Right side: gamma products, Euler-function forms or closed forms.
pub fn eval_rhs(spec: &IdentitySpec) -> Result<Evaluation> {
    use IdentityId::*;
    spec.validate()?;
    let prec = spec.precision;
    let closed = |v: crate::qfunc::HPReal| Evaluation {
        value: HPComplex::from_real(v),
        error_estimate: None,
        terms: None,
    };
    match spec.id {
        Thm1 => {
            let (a, b) = spec.lists()?;
            thm1_rhs(&a, &b, &spec.q()?, prec)
        }
        Cor2 => {
            let (a, b) = spec.lists()?;
            cor2_rhs(&a, &b, prec)
        }
        Thm3Full => thm3_full_rhs(spec.n()?, &spec.q()?, prec),
        Thm3Coprime => thm3_coprime_rhs(spec.n()?, &spec.q()?, prec),
        Thm4 => thm4_rhs(&spec.character_values()?, &spec.z()?, prec),
        Thm5 => thm5_rhs(&spec.character_values()?, &spec.q()?, &spec.z()?, prec),
        Cor6 => cor6_rhs(&spec.character_values()?, &spec.q()?, &spec.z()?, prec),
        Prototype => prototype_rhs(prec),
        Ex1a | Ex1b | Ex2a | Ex2b => {
            let (e, _, _) = spec.id.example().expect("example id");
            Ok(closed(example_closed_form(e, prec)?))
        }
        Jackson1 | Jackson2 | Jackson3 | Jackson4 => {
            Ok(closed(jackson_value(spec.id.jackson().expect("jackson id"), prec)?))
        }
    }
}
