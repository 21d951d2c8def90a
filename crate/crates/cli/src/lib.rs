//! Command-line entry points and the JSON HTTP service for `hessian-core`.

pub mod api;
pub mod commands;
pub mod error;

pub use error::{CliError, CliResult};

use hessian_core::padic::DEFAULT_PRECISION;
use hessian_core::{Error, Result};

/// Runs `f` at precision `n`, and once more at `2n` if 3-adic precision ran out.
pub fn with_precision_retry<T>(n: u32, f: impl Fn(u32) -> Result<T>) -> Result<T> {
    match f(n) {
        Err(Error::PrecisionExhausted(_)) => f(2 * n),
        other => other,
    }
}

/// [`with_precision_retry`] at the default working precision.
pub fn with_default_precision<T>(f: impl Fn(u32) -> Result<T>) -> Result<T> {
    with_precision_retry(DEFAULT_PRECISION, f)
}
