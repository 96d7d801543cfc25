use super::{CellDatum, Poset};
use crate::{Label, LaurentPoly};

macro_rules! forward {
    () => {
        type Index = D::Index;
        type Morphism = D::Morphism;
        type Scalar = D::Scalar;

        fn cells(&self, n: usize, label: Label) -> Vec<D::Index> {
            self.inner.cells(n, label)
        }

        fn cell_morphism(&self, label: Label, s: &D::Index, t: &D::Index) -> D::Morphism {
            self.inner.cell_morphism(label, s, t)
        }

        fn compose(&self, first: &D::Morphism, then: &D::Morphism) -> D::Morphism {
            self.inner.compose(first, then)
        }

        fn ambient_dimension(&self, n: usize, m: usize) -> usize {
            self.inner.ambient_dimension(n, m)
        }

        fn coordinates(&self, f: &D::Morphism, n: usize, m: usize) -> Vec<LaurentPoly> {
            self.inner.coordinates(f, n, m)
        }
    };
}

/// A datum with its order on Λ replaced.
pub struct WithPoset<'a, D> {
    inner: &'a D,
    poset: Poset,
}

impl<'a, D: CellDatum> WithPoset<'a, D> {
    pub fn new(inner: &'a D, poset: Poset) -> Self {
        Self { inner, poset }
    }

    /// The same datum with every relation of its order reversed.
    pub fn reversed(inner: &'a D) -> Self {
        let poset = inner.poset().reversed();
        Self { inner, poset }
    }
}

impl<D: CellDatum> CellDatum for WithPoset<'_, D> {
    forward!();

    fn name(&self) -> String {
        format!("{} (reordered)", self.inner.name())
    }

    fn objects(&self) -> Vec<usize> {
        self.inner.objects()
    }

    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn star(&self, f: &D::Morphism) -> D::Morphism {
        self.inner.star(f)
    }
}

/// A datum whose anti-involution is replaced by the identity map.
pub struct IdentityStar<'a, D> {
    inner: &'a D,
}

impl<'a, D: CellDatum> IdentityStar<'a, D> {
    pub fn new(inner: &'a D) -> Self {
        Self { inner }
    }
}

impl<D: CellDatum> CellDatum for IdentityStar<'_, D> {
    forward!();

    fn name(&self) -> String {
        format!("{} (identity star)", self.inner.name())
    }

    fn objects(&self) -> Vec<usize> {
        self.inner.objects()
    }

    fn poset(&self) -> &Poset {
        self.inner.poset()
    }

    fn star(&self, f: &D::Morphism) -> D::Morphism {
        f.clone()
    }
}

/// A datum restricted to a subset of its objects. With a single object this is a cell
/// datum for the endomorphism algebra of that object.
pub struct Restriction<'a, D> {
    inner: &'a D,
    objects: Vec<usize>,
}

impl<'a, D: CellDatum> Restriction<'a, D> {
    pub fn new(inner: &'a D, objects: Vec<usize>) -> Self {
        Self { inner, objects }
    }
}

impl<D: CellDatum> CellDatum for Restriction<'_, D> {
    forward!();

    fn name(&self) -> String {
        format!("{} restricted to {:?}", self.inner.name(), self.objects)
    }

    fn objects(&self) -> Vec<usize> {
        self.objects.clone()
    }

    fn poset(&self) -> &Poset {
        self.inner.poset()
    }

    fn star(&self, f: &D::Morphism) -> D::Morphism {
        self.inner.star(f)
    }
}
