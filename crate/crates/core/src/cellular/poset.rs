use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation mentions {0}, which is not an element")]
    UnknownElement(Label),
    #[error("antisymmetry fails: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(Label, Label),
    #[error("{0:?} is not downward closed ({1} is below a member but missing)")]
    NotAnIdeal(Vec<Label>, Label),
}

/// A finite partial order on cell labels. The full reflexive-transitive closure is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Label>,
    leq: BTreeSet<(Label, Label)>,
}

impl Poset {
    /// Builds the order generated by `relations` (`(a, b)` meaning `a <= b`).
    pub fn new<I>(elements: impl IntoIterator<Item = Label>, relations: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let elements: Vec<Label> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut up: BTreeMap<Label, BTreeSet<Label>> =
            elements.iter().map(|&e| (e, BTreeSet::from([e]))).collect();
        for (a, b) in relations {
            for x in [a, b] {
                if !up.contains_key(&x) {
                    return Err(PosetError::UnknownElement(x));
                }
            }
            up.get_mut(&a).unwrap().insert(b);
        }
        // Warshall closure
        for &k in &elements {
            let above_k = up[&k].clone();
            for &i in &elements {
                if up[&i].contains(&k) {
                    up.get_mut(&i).unwrap().extend(above_k.iter().copied());
                }
            }
        }
        let mut leq = BTreeSet::new();
        for (&a, ups) in &up {
            for &b in ups {
                if a != b && up[&b].contains(&a) {
                    return Err(PosetError::NotAntisymmetric(a.min(b), a.max(b)));
                }
                leq.insert((a, b));
            }
        }
        Ok(Self { elements, leq })
    }

    /// Total order following the given sequence, first element smallest.
    pub fn chain(order: &[Label]) -> Self {
        Self::new(order.iter().copied(), order.windows(2).map(|w| (w[0], w[1])))
            .expect("a chain of distinct labels is a poset")
    }

    pub fn antichain(elements: impl IntoIterator<Item = Label>) -> Self {
        Self::new(elements, std::iter::empty()).expect("antichain is a poset")
    }

    /// Elements in increasing numeric order (not the poset order).
    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn contains(&self, a: Label) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn leq(&self, a: Label, b: Label) -> bool {
        self.leq.contains(&(a, b))
    }

    pub fn lt(&self, a: Label, b: Label) -> bool {
        a != b && self.leq(a, b)
    }

    /// Strict relations `a < b`.
    pub fn strict_relations(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.leq.iter().copied().filter(|(a, b)| a != b)
    }

    /// The same set with every relation reversed.
    pub fn reversed(&self) -> Self {
        Self {
            elements: self.elements.clone(),
            leq: self.leq.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// Covering relations (the transitive reduction).
    pub fn covers(&self) -> Vec<(Label, Label)> {
        self.strict_relations()
            .filter(|&(a, b)| {
                !self
                    .elements
                    .iter()
                    .any(|&c| c != a && c != b && self.lt(a, c) && self.lt(c, b))
            })
            .collect()
    }

    /// `{μ : μ <= λ}`.
    pub fn down_set(&self, label: Label) -> BTreeSet<Label> {
        self.elements.iter().copied().filter(|&m| self.leq(m, label)).collect()
    }

    /// `{μ : μ < λ}`.
    pub fn strictly_below(&self, label: Label) -> BTreeSet<Label> {
        self.elements.iter().copied().filter(|&m| self.lt(m, label)).collect()
    }

    /// Downward closure of an arbitrary subset.
    pub fn down_closure(&self, set: &BTreeSet<Label>) -> BTreeSet<Label> {
        self.elements
            .iter()
            .copied()
            .filter(|&m| set.iter().any(|&x| self.leq(m, x)))
            .collect()
    }

    pub fn check_order_ideal(&self, set: &BTreeSet<Label>) -> Result<(), PosetError> {
        for &x in set {
            if !self.contains(x) {
                return Err(PosetError::UnknownElement(x));
            }
            for &m in &self.elements {
                if self.leq(m, x) && !set.contains(&m) {
                    return Err(PosetError::NotAnIdeal(set.iter().copied().collect(), m));
                }
            }
        }
        Ok(())
    }

    /// Every relation of `self` also holds in `other`.
    pub fn is_refined_by(&self, other: &Poset) -> bool {
        self.leq.iter().all(|&(a, b)| other.leq(a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct RawPoset {
    elements: Vec<Label>,
    covers: Vec<(Label, Label)>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawPoset {
            elements: self.elements.clone(),
            covers: self.covers(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPoset::deserialize(deserializer)?;
        Poset::new(raw.elements, raw.covers).map_err(serde::de::Error::custom)
    }
}
