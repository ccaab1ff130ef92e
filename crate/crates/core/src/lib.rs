//! Thermodynamics of an ideal Bose gas confined in a one-dimensional
//! power-law trap `U(x) = U0 (|x|/L)^eta`.
//!
//! The density of states carries the `2/eta` prefactor from the symmetric
//! phase-space integral, which multiplies the critical temperature by
//! `(eta/2)^(2 eta/(2+eta))` relative to the value obtained without it.
//! Condensation occurs only for `eta < 2`.
//!
//! Modules, bottom up:
//!
//! * [`specfun`]: Γ, ζ, polylogarithm and the Bose-Einstein integral `g1`
//! * [`quadrature`]: tanh-sinh / exp-sinh integration
//! * [`trap`]: trap parameters, shape factor, density of states
//! * [`thermo`]: excited population, `T_c`, chemical potential, condensate fraction
//! * [`oracle`]: discrete WKB spectrum and brute-force occupation sums
//! * [`sweep`]: `T_c(eta)` curves, peak search, oracle reports

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod oracle;
pub mod output;
pub mod quadrature;
pub mod specfun;
pub mod sweep;
pub mod thermo;
pub mod trap;

pub use error::{Error, Result};
pub use trap::{GasSpec, Trap1D};
