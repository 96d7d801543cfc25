//! Cell data on linear categories and an exhaustive verifier for them.
//!
//! A [`CellDatum`] supplies objects, a poset Λ of labels, index sets `K(n, λ)`, the cell map
//! `C` and an anti-involution `*`, together with coordinates of morphisms in some ambient
//! basis of each Hom space. The [`Verifier`] builds the C-image in every Hom space, checks
//! the axioms C-1 (basis), C-2 (`C(S,T)* = C(T,S)`) and C-3 (left composition is triangular
//! modulo lower cells, with structure constants independent of `T`), and derives Gram forms,
//! cell modules, ideals and the functors `ρ(n; π)`.
//!
//! Composition is always "first, then next": `compose(f, g)` with `f: n -> m`, `g: m -> p`.

mod axioms;
mod basis;
mod forms;
mod functor;
mod ideal;
mod order;
mod poset;
mod report;
mod toy;
mod wrappers;

use std::fmt::{Debug, Display};

use serde::Serialize;

use crate::linalg::Domain;
use crate::{DeltaPoly, Label, LaurentPoly};

pub use basis::{BasisEntry, ExpandError, HomBasis, Verifier};
pub use forms::{gram_determinant, CellModule, GramForm};
pub use functor::{verify_cellular_functor, FunctorReport};
pub use ideal::{IdealSpan, NaturalityReport, RhoFunctor, RhoMap, RhoModule};
pub use order::InferredOrder;
pub use poset::{Poset, PosetError};
pub use report::{AxiomReport, Failure, RTable, Status};
pub use toy::{SplitDatum, TrivialDatum};
pub use wrappers::{IdentityStar, Restriction, WithPoset};

/// The ring of structure constants: a subring of `Z[v, v^-1]` into which expansion
/// coefficients are retracted.
pub trait BaseRing: Domain + Display + Serialize {
    const NAME: &'static str;

    /// The element equal to `x`, or `None` when `x` lies outside the subring.
    fn from_laurent(x: &LaurentPoly) -> Option<Self>;
}

impl BaseRing for DeltaPoly {
    const NAME: &'static str = "Z[δ]";

    fn from_laurent(x: &LaurentPoly) -> Option<Self> {
        DeltaPoly::retract(x).ok()
    }
}

impl BaseRing for LaurentPoly {
    const NAME: &'static str = "Z[v, v^-1]";

    fn from_laurent(x: &LaurentPoly) -> Option<Self> {
        Some(x.clone())
    }
}

/// The data `(Λ, K, C, *)` over a finite family of objects, in verifiable form.
pub trait CellDatum {
    /// Elements of the sets `K(n, λ)`.
    type Index: Clone + Eq + Ord + Debug + Serialize;
    /// Morphisms of the host category.
    type Morphism: Clone + PartialEq + Debug;
    /// Ring in which expansion coefficients and structure constants must lie.
    type Scalar: BaseRing;

    fn name(&self) -> String;

    fn objects(&self) -> Vec<usize>;

    fn poset(&self) -> &Poset;

    /// `K(n, λ)`, possibly empty.
    fn cells(&self, n: usize, label: Label) -> Vec<Self::Index>;

    /// `C^λ(S, T): n -> m` for `S ∈ K(n, λ)`, `T ∈ K(m, λ)`.
    fn cell_morphism(&self, label: Label, s: &Self::Index, t: &Self::Index) -> Self::Morphism;

    /// `first` then `then`.
    fn compose(&self, first: &Self::Morphism, then: &Self::Morphism) -> Self::Morphism;

    fn star(&self, f: &Self::Morphism) -> Self::Morphism;

    /// Dimension of `Hom(n, m)` in the host category.
    fn ambient_dimension(&self, n: usize, m: usize) -> usize;

    /// Coordinates of `f: n -> m` in a fixed spanning set of `Hom(n, m)`. The vectors of the
    /// C-image must have full rank in these coordinates exactly when C-1 holds.
    fn coordinates(&self, f: &Self::Morphism, n: usize, m: usize) -> Vec<LaurentPoly>;
}
