//! Coefficient rings: `Z[v, v^-1]` and its bar-fixed subring `Z[δ]`.

mod delta;
mod laurent;
mod scalar;

pub use delta::DeltaPolynomial;
pub(crate) use laurent::pow_mod;
pub use laurent::{quantum_int, LaurentPolynomial};
pub use scalar::Coefficient;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not bar-symmetric")]
    NotBarSymmetric(String),
    #[error("{0} is not an integer polynomial in δ")]
    NotInDeltaSubring(String),
}

/// JSON number for an arbitrary-precision integer.
pub(crate) fn json_integer<C: Coefficient>(c: &C) -> serde_json::Number {
    c.to_decimal()
        .parse()
        .expect("decimal integer is a valid JSON number")
}
