use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{TLDiagram, TlError};
use crate::DeltaPoly;

/// A `Z[δ]`-linear combination of diagrams `n -> m`.
#[derive(Clone, PartialEq, Eq)]
pub struct TLMorphism {
    n: usize,
    m: usize,
    terms: BTreeMap<TLDiagram, DeltaPoly>,
}

impl TLMorphism {
    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: TLDiagram) -> Self {
        Self::from_term(d, DeltaPoly::one())
    }

    pub fn from_term(d: TLDiagram, coeff: DeltaPoly) -> Self {
        let mut out = Self::zero(d.source(), d.target());
        out.add_term(d, coeff);
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(n))
    }

    /// The generator `e_i` in `End(n)`.
    pub fn generator_e(n: usize, i: usize) -> Result<Self, TlError> {
        TLDiagram::generator(n, i).map(Self::from_diagram)
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &DeltaPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> DeltaPoly {
        self.terms.get(d).cloned().unwrap_or_else(DeltaPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, d: TLDiagram, coeff: DeltaPoly) {
        assert_eq!((d.source(), d.target()), (self.n, self.m), "diagram shape mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlError> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(TlError::ObjectMismatch {
                target: self.m,
                next_source: other.m,
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &DeltaPoly) -> Self {
        let mut out = Self::zero(self.n, self.m);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x * c);
        }
        out
    }

    /// `self` first, then `next`; each closed loop contributes a factor `δ`.
    pub fn compose(&self, next: &Self) -> Result<Self, TlError> {
        if self.m != next.n {
            return Err(TlError::ObjectMismatch {
                target: self.m,
                next_source: next.n,
            });
        }
        let mut out = Self::zero(self.n, next.m);
        for (d, a) in &self.terms {
            for (e, b) in &next.terms {
                let (de, loops) = d.compose(e)?;
                out.add_term(de, &(a * b) * &DeltaPoly::delta_pow(loops));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n + other.n, self.m + other.m);
        for (d, a) in &self.terms {
            for (e, b) in &other.terms {
                out.add_term(d.tensor(e), a * b);
            }
        }
        out
    }

    /// Reflection of every diagram, coefficients unchanged.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.m, self.n);
        for (d, c) in &self.terms {
            out.add_term(d.star(), c.clone());
        }
        out
    }
}

impl fmt::Debug for TLMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{}]", self.n, self.m)?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            write!(f, "{sep}({c}){d:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    diagram: TLDiagram,
    coeff: DeltaPoly,
}

#[derive(Serialize, Deserialize)]
struct RawMorphism {
    n: usize,
    m: usize,
    terms: Vec<RawTerm>,
}

/// Terms are emitted in lexicographic order of their diagram encodings.
impl Serialize for TLMorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut terms: Vec<(String, RawTerm)> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let key = serde_json::to_string(d).expect("diagram encodes");
                (
                    key,
                    RawTerm {
                        diagram: d.clone(),
                        coeff: c.clone(),
                    },
                )
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        RawMorphism {
            n: self.n,
            m: self.m,
            terms: terms.into_iter().map(|(_, t)| t).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TLMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawMorphism::deserialize(deserializer)?;
        let mut out = TLMorphism::zero(raw.n, raw.m);
        for t in raw.terms {
            if (t.diagram.source(), t.diagram.target()) != (raw.n, raw.m) {
                return Err(serde::de::Error::custom(format!(
                    "term diagram {} does not match {} -> {}",
                    t.diagram, raw.n, raw.m
                )));
            }
            out.add_term(t.diagram, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::enumerate_diagrams;

    #[test]
    fn composition_examples() {
        let e1 = TLMorphism::generator_e(2, 1).unwrap();
        assert_eq!(e1.compose(&e1).unwrap(), e1.scale(&DeltaPoly::delta()));
        for d in enumerate_diagrams(2, 4) {
            let f = TLMorphism::from_diagram(d);
            assert_eq!(TLMorphism::identity(2).compose(&f).unwrap(), f);
            assert_eq!(f.compose(&TLMorphism::identity(4)).unwrap(), f);
        }
        let cup = TLMorphism::from_diagram(TLDiagram::new(0, 2, [(1, 2)]).unwrap());
        let cap = cup.star();
        assert_eq!(
            cup.compose(&cap).unwrap(),
            TLMorphism::identity(0).scale(&DeltaPoly::delta())
        );
        assert!(e1.compose(&cup).is_err());
    }

    #[test]
    fn star_examples() {
        let e1 = TLMorphism::generator_e(2, 1).unwrap();
        assert_eq!(e1.star(), e1);
        let cup = TLMorphism::from_diagram(TLDiagram::new(0, 2, [(1, 2)]).unwrap());
        assert_eq!(cup.star(), TLMorphism::from_diagram(TLDiagram::new(2, 0, [(1, 2)]).unwrap()));
        let f = cup.tensor(&TLMorphism::identity(1)).scale(&DeltaPoly::from_i64s(&[2, -1]));
        assert_eq!(f.star().star(), f);
    }

    #[test]
    fn tensor_unit() {
        let d = TLMorphism::generator_e(3, 1).unwrap();
        assert_eq!(TLMorphism::identity(0).tensor(&d), d);
        assert_eq!(
            TLMorphism::identity(1).tensor(&TLMorphism::identity(1)),
            TLMorphism::identity(2)
        );
    }

    #[test]
    fn json_sorted_terms() {
        let e1 = TLMorphism::generator_e(2, 1).unwrap();
        let f = e1.scale(&DeltaPoly::delta()).add(&TLMorphism::identity(2)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"m":2,"terms":[{"diagram":{"n":2,"m":2,"pairs":[[1,2],[3,4]]},"coeff":[0,1]},{"diagram":{"n":2,"m":2,"pairs":[[1,4],[2,3]]},"coeff":[1]}]}"#
        );
        let back: TLMorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
