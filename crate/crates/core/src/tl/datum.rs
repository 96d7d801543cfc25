use std::collections::HashMap;

use num_traits::Zero;

use crate::cellular::{CellDatum, Poset};
use crate::{DeltaPoly, Label, LaurentPoly};

use super::{enumerate_diagrams, half_diagrams, HalfDiagram, TLDiagram, TLMorphism};

/// The through-strand cell datum of the Temperley–Lieb category on objects `0..=max_n`:
/// `K(n, t)` is the set of half-diagrams `n -> t` and `C(S, T) = compose(S, star(T))`.
/// Labels are ordered by increasing through-strand count unless another order is supplied.
pub struct TlCellDatum {
    max_n: usize,
    poset: Poset,
    cells: HashMap<(usize, Label), Vec<HalfDiagram>>,
    diagrams: HashMap<(usize, usize), HashMap<TLDiagram, usize>>,
}

impl TlCellDatum {
    pub fn new(max_n: usize) -> Self {
        let order: Vec<Label> = (0..=max_n).collect();
        Self::with_poset(max_n, Poset::chain(&order))
    }

    /// The same datum with an arbitrary order on the labels `0..=max_n`.
    pub fn with_poset(max_n: usize, poset: Poset) -> Self {
        let mut cells = HashMap::new();
        let mut diagrams = HashMap::new();
        for n in 0..=max_n {
            for t in 0..=max_n {
                cells.insert((n, t), half_diagrams(n, t));
            }
            for m in 0..=max_n {
                let index = enumerate_diagrams(n, m)
                    .into_iter()
                    .enumerate()
                    .map(|(i, d)| (d, i))
                    .collect();
                diagrams.insert((n, m), index);
            }
        }
        Self {
            max_n,
            poset,
            cells,
            diagrams,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }
}

/// The TL cell datum on objects `0..=max_n` with the increasing through-strand order.
pub fn tl_cell_datum(max_n: usize) -> TlCellDatum {
    TlCellDatum::new(max_n)
}

impl CellDatum for TlCellDatum {
    type Index = HalfDiagram;
    type Morphism = TLMorphism;
    type Scalar = DeltaPoly;

    fn name(&self) -> String {
        format!("Temperley-Lieb (n <= {})", self.max_n)
    }

    fn objects(&self) -> Vec<usize> {
        (0..=self.max_n).collect()
    }

    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn cells(&self, n: usize, label: Label) -> Vec<HalfDiagram> {
        self.cells.get(&(n, label)).cloned().unwrap_or_default()
    }

    fn cell_morphism(&self, _label: Label, s: &HalfDiagram, t: &HalfDiagram) -> TLMorphism {
        let (d, loops) = s
            .diagram()
            .compose(&t.diagram().star())
            .expect("half-diagrams with the same label compose");
        debug_assert_eq!(loops, 0);
        TLMorphism::from_diagram(d)
    }

    fn compose(&self, first: &TLMorphism, then: &TLMorphism) -> TLMorphism {
        first.compose(then).expect("composable morphisms")
    }

    fn star(&self, f: &TLMorphism) -> TLMorphism {
        f.star()
    }

    fn ambient_dimension(&self, n: usize, m: usize) -> usize {
        self.diagrams.get(&(n, m)).map_or(0, HashMap::len)
    }

    fn coordinates(&self, f: &TLMorphism, n: usize, m: usize) -> Vec<LaurentPoly> {
        let index = &self.diagrams[&(n, m)];
        let mut out = vec![LaurentPoly::zero(); index.len()];
        for (d, c) in f.terms() {
            out[index[d]] = c.embed();
        }
        out
    }
}
