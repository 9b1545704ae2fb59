//! Numerics for signed fundamental solutions of space-fractional heat-type
//! equations (Riesz, Feller and weighted Weyl operators), the pseudo random
//! walks converging to them, and the associated special functions and
//! sojourn-time laws.

// NaN must fail range checks, hence `!(x > 0.0)`; quadrature nodes keep
// their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod dd;
pub mod error;
pub mod fracops;
pub mod invert;
pub mod model;
pub mod quad;
pub mod sojourn;
pub mod specfun;
pub mod symbols;
pub mod walks;

pub use error::{Error, Result};

/// Library version, as recorded in CLI output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use model::{ComplexSymbol, Family, GridSpec, ModelParams, Parity, SignedDensitySample, Spacing};
