use num_traits::{One, Zero};

use super::{CellDatum, Poset};
use crate::{DeltaPoly, Label, LaurentPoly};

/// The one-object algebra `Z[δ]` with a single cell.
pub struct TrivialDatum {
    poset: Poset,
}

impl TrivialDatum {
    pub fn new() -> Self {
        Self {
            poset: Poset::chain(&[0]),
        }
    }
}

impl Default for TrivialDatum {
    fn default() -> Self {
        Self::new()
    }
}

impl CellDatum for TrivialDatum {
    type Index = ();
    type Morphism = DeltaPoly;
    type Scalar = DeltaPoly;

    fn name(&self) -> String {
        "trivial".into()
    }

    fn objects(&self) -> Vec<usize> {
        vec![0]
    }

    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn cells(&self, _n: usize, _label: Label) -> Vec<()> {
        vec![()]
    }

    fn cell_morphism(&self, _label: Label, _s: &(), _t: &()) -> DeltaPoly {
        DeltaPoly::one()
    }

    fn compose(&self, first: &DeltaPoly, then: &DeltaPoly) -> DeltaPoly {
        first * then
    }

    fn star(&self, f: &DeltaPoly) -> DeltaPoly {
        f.clone()
    }

    fn ambient_dimension(&self, _n: usize, _m: usize) -> usize {
        1
    }

    fn coordinates(&self, f: &DeltaPoly, _n: usize, _m: usize) -> Vec<LaurentPoly> {
        vec![f.embed()]
    }
}

/// The split semisimple algebra `Z[δ] × ... × Z[δ]` on one object, one cell per factor,
/// with the labels unordered.
pub struct SplitDatum {
    factors: usize,
    poset: Poset,
}

impl SplitDatum {
    pub fn new(factors: usize) -> Self {
        Self {
            factors,
            poset: Poset::antichain(0..factors),
        }
    }

    /// The primitive idempotent of factor `i`.
    pub fn idempotent(&self, i: usize) -> Vec<DeltaPoly> {
        (0..self.factors)
            .map(|j| if i == j { DeltaPoly::one() } else { DeltaPoly::zero() })
            .collect()
    }
}

impl CellDatum for SplitDatum {
    type Index = ();
    type Morphism = Vec<DeltaPoly>;
    type Scalar = DeltaPoly;

    fn name(&self) -> String {
        format!("split semisimple ({} factors)", self.factors)
    }

    fn objects(&self) -> Vec<usize> {
        vec![0]
    }

    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn cells(&self, _n: usize, _label: Label) -> Vec<()> {
        vec![()]
    }

    fn cell_morphism(&self, label: Label, _s: &(), _t: &()) -> Vec<DeltaPoly> {
        self.idempotent(label)
    }

    fn compose(&self, first: &Vec<DeltaPoly>, then: &Vec<DeltaPoly>) -> Vec<DeltaPoly> {
        first.iter().zip(then).map(|(a, b)| a * b).collect()
    }

    fn star(&self, f: &Vec<DeltaPoly>) -> Vec<DeltaPoly> {
        f.clone()
    }

    fn ambient_dimension(&self, _n: usize, _m: usize) -> usize {
        self.factors
    }

    fn coordinates(&self, f: &Vec<DeltaPoly>, _n: usize, _m: usize) -> Vec<LaurentPoly> {
        f.iter().map(DeltaPoly::embed).collect()
    }
}
