//! Exact-arithmetic workbench for cellular categories.
//!
//! The crate provides
//! - coefficient rings `Z[v, v^-1]` and `Z[δ]` ([`ring`]), generic over the integer type,
//! - fraction-free linear algebra over any exact domain ([`linalg`]),
//! - the Temperley–Lieb diagram category with its through-strand cell datum ([`tl`]),
//! - a verifier for the cell axioms C-1/C-2/C-3 and the derived structure
//!   (Gram forms, cell modules, ideals, the functors `ρ(n; π)`) ([`cellular`]),
//! - the quantum group `U_q(sl2)` acting on `V^{⊗n}`, its bar involution, canonical basis,
//!   dual canonical invariants and the resulting cell datum ([`sl2`]).
//!
//! All concrete code downstream of [`ring`] works with the arbitrary-precision aliases
//! [`LaurentPoly`] and [`DeltaPoly`].

pub mod cellular;
pub mod linalg;
pub mod ring;
pub mod sl2;
pub mod tl;

use num_bigint::BigInt;

pub use ring::{Coefficient, RingError};

/// `Z[v, v^-1]` with arbitrary-precision coefficients.
pub type LaurentPoly = ring::LaurentPolynomial<BigInt>;
/// `Z[δ]` with arbitrary-precision coefficients.
pub type DeltaPoly = ring::DeltaPolynomial<BigInt>;
/// `Z[v, v^-1]` over machine integers, for quick experiments.
pub type LaurentPoly64 = ring::LaurentPolynomial<i64>;
/// `Z[δ]` over machine integers.
pub type DeltaPoly64 = ring::DeltaPolynomial<i64>;
/// Dense matrix over `Z[v, v^-1]`.
pub type LaurentMatrix = linalg::Matrix<LaurentPoly>;
/// Dense matrix over `Z[δ]`.
pub type DeltaMatrix = linalg::Matrix<DeltaPoly>;

/// Cell labels (elements of Λ) are non-negative integers throughout: through-strand counts
/// for Temperley–Lieb and dominant `sl2` weights for the quantum group.
pub type Label = usize;
