//! Numeric kernel: working-precision arithmetic, q-Pochhammer symbols,
//! the q-gamma function, the classical gamma function and the closed-form
//! special values used by the example identities.
//!
//! Truncation of every infinite product targets `10^-(digits+guard)`; results
//! are trusted to about `digits - 5` decimal digits. Nothing here is
//! interval-certified.

mod gamma;
pub mod hp;
mod pochhammer;
mod special;

pub use gamma::{bernoulli_even, gamma_classical, ln_gamma_stirling};
pub use hp::{HPComplex, HPReal, Precision};
pub(crate) use pochhammer::qgamma_scaled;
pub use pochhammer::{euler_function, geometric_tail_start, qgamma, qpochhammer, PochLength, QParam};
pub use special::{example_closed_form, jackson_value, von_mangoldt_value, ExampleId, JacksonId};
