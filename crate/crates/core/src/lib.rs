//! q-gamma products at rational arguments, Dirichlet characters, and the
//! modified cyclotomic rational functions `Ψ_n(x) = ∏_{d|n} (1 - x^d)^{μ(d)}`.
//!
//! The crate evaluates both sides of a family of product identities through
//! independent code paths and compares them at a configurable decimal
//! precision:
//!
//! - [`numtheory`]: exact multiplicative functions, integer polynomials,
//!   cyclotomic polynomials and `Ψ_n`.
//! - [`characters`]: Dirichlet characters with exact root-of-unity values.
//! - [`qfunc`]: working-precision arithmetic, q-Pochhammer symbols, the
//!   q-gamma function, the classical gamma function and closed-form
//!   special values.
//! - [`products`]: left- and right-hand side evaluators for each identity.
//! - [`verify`]: comparison engine, identity registry and suite runner.
//! - [`cli`]: the `qprod` command-line front end (feature `cli`).

pub mod characters;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod numtheory;
pub mod products;
pub mod qfunc;
pub mod verify;

pub use error::{Error, Result};
pub use qfunc::hp::{HPComplex, HPReal, Precision};
