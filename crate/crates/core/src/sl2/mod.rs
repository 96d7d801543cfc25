//! The quantum group `U_q(sl2)` acting on tensor powers of its two-dimensional module `V`.
//!
//! Conventions are fixed once (see [`Conventions`]): the coproduct
//! `Δ(E) = E ⊗ 1 + K^-1 ⊗ E`, `Δ(F) = F ⊗ K + 1 ⊗ F`, `Δ(K) = K ⊗ K`; the quasi-R-matrix
//! `Θ = 1 + c·F ⊗ E` with `c` solved from equivariance; canonical basis coefficients in
//! `v·Z[v]`; and the bracketing rule in which a `1` followed later by a `0` cancels.
//! Tests re-derive the last two choices as the only ones compatible with the rest.

mod canonical;
mod datum;
mod hom;
mod invariants;
mod psi;
mod tensor;

use serde::Serialize;
use thiserror::Error;

pub use canonical::{
    bracket, canonical_basis, canonical_basis_by_tensoring, canonical_basis_with, hi_of, lo_of, partition_label, BasedModuleData, BracketLabel,
    Bracketing, CanonicalElement, Half,
};
pub use datum::{build_sl2_cell_datum, CountingCheck, Sl2CellDatum};
pub use hom::{bend, hom_space_basis, Sl2Map};
pub use invariants::{
    coinvariants, compare_bases, cup_basis, cup_invariant, diagram_to_invariant, dual_canonical_invariants, invariant_dimension,
    invariants_basis, is_invariant, BasisComparison, Coinvariants, MatchedPair, NormalizationAttempt,
};
pub use psi::{quasi_r_coefficient, BarInvolution};
pub use tensor::{act_e, act_f, act_k, TensorVector, WeightString, MAX_LENGTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("invalid weight string {0:?}")]
    InvalidString(String),
    #[error("triangularity violated at {string}: {detail}")]
    Triangularity { string: String, detail: String },
    #[error("convention error: {0}")]
    Convention(String),
    #[error("labelling failure: {0}")]
    Labelling(String),
    #[error("{0} is not a cup diagram 0 -> n")]
    NotCupDiagram(String),
    #[error("tensor length {0} is odd")]
    OddLength(usize),
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
}

/// The convention choices, emitted alongside every sl2 output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub coproduct: &'static str,
    pub quasi_r_matrix: String,
    pub half_lattice: Half,
    pub bracketing: Bracketing,
    pub cup_normalization: String,
    pub star: &'static str,
    pub cell_order: &'static str,
}

impl Conventions {
    pub fn with(half: Half, bracketing: Bracketing) -> Self {
        let c = quasi_r_coefficient().map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
        let cup = cup_invariant().map(|w| format!("{w:?}")).unwrap_or_else(|e| e.to_string());
        Self {
            coproduct: "D(E) = E(x)1 + K^-1(x)E, D(F) = F(x)K + 1(x)F, D(K) = K(x)K",
            quasi_r_matrix: format!("1 + ({c}) F(x)E"),
            half_lattice: half,
            bracketing,
            cup_normalization: cup,
            star: "reverse strings, transpose, bar coefficients",
            cell_order: "increasing highest weight",
        }
    }

    pub fn fixed() -> Self {
        Self::with(Half::Positive, Bracketing::OneThenZero)
    }
}
