use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::{CellDatum, ExpandError, Poset, Verifier};
use crate::Label;

/// Outcome of reading the cell order off the composition table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InferredOrder {
    /// `(λ, μ)`: some `a ∘ C^λ(S, T)` has a nonzero `μ`-component, `μ ≠ λ`.
    pub leakage: BTreeSet<(Label, Label)>,
    /// The order generated by `μ < λ` for every leakage edge, when acyclic.
    pub order: Option<Poset>,
    /// A directed cycle of leakage edges, when one exists.
    pub cycle: Option<Vec<Label>>,
}

impl InferredOrder {
    pub fn is_acyclic(&self) -> bool {
        self.order.is_some()
    }

    /// True when the inferred order relates every pair of labels.
    pub fn is_total(&self) -> bool {
        self.order.as_ref().is_some_and(|p| {
            let e = p.elements();
            e.iter().all(|&a| e.iter().all(|&b| p.leq(a, b) || p.leq(b, a)))
        })
    }
}

fn find_cycle(elements: &[Label], edges: &BTreeSet<(Label, Label)>) -> Option<Vec<Label>> {
    let mut succ: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for &(a, b) in edges {
        succ.entry(a).or_default().push(b);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: BTreeMap<Label, u8> = elements.iter().map(|&e| (e, 0)).collect();
    fn dfs(
        v: Label,
        succ: &BTreeMap<Label, Vec<Label>>,
        state: &mut BTreeMap<Label, u8>,
        stack: &mut Vec<Label>,
    ) -> Option<Vec<Label>> {
        state.insert(v, 1);
        stack.push(v);
        for &w in succ.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            match state.get(&w).copied().unwrap_or(0) {
                1 => {
                    let start = stack.iter().position(|&x| x == w).expect("on stack");
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                0 => {
                    if let Some(c) = dfs(w, succ, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state.insert(v, 2);
        None
    }
    for &e in elements {
        if state[&e] == 0 {
            if let Some(c) = dfs(e, &succ, &mut state, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

impl<D: CellDatum> Verifier<'_, D> {
    /// Builds the leakage digraph from every product `a ∘ C^λ(S, T)` with `a` a basis
    /// morphism, over all triples of objects.
    pub fn infer_cell_order(&self) -> Result<InferredOrder, ExpandError> {
        let datum = self.datum();
        let objects = datum.objects();
        let mut leakage = BTreeSet::new();
        for &p in &objects {
            for &n in &objects {
                let left = self.hom_basis(p, n);
                for &m in &objects {
                    let right = self.hom_basis(n, m);
                    let target = self.hom_basis(p, m);
                    for a in &left.entries {
                        for c in &right.entries {
                            let coeffs = self.expand(&datum.compose(&a.morphism, &c.morphism), p, m)?;
                            for (entry, x) in target.entries.iter().zip(&coeffs) {
                                if entry.label != c.label && !x.is_zero() {
                                    leakage.insert((c.label, entry.label));
                                }
                            }
                        }
                    }
                }
            }
        }
        let elements = datum.poset().elements().to_vec();
        match Poset::new(elements.iter().copied(), leakage.iter().map(|&(l, m)| (m, l))) {
            Ok(order) => Ok(InferredOrder {
                leakage,
                order: Some(order),
                cycle: None,
            }),
            Err(_) => Ok(InferredOrder {
                cycle: find_cycle(&elements, &leakage),
                leakage,
                order: None,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_search() {
        let edges = BTreeSet::from([(0, 1), (1, 2), (2, 0), (3, 0)]);
        let c = find_cycle(&[0, 1, 2, 3], &edges).unwrap();
        assert_eq!(c.first(), c.last());
        assert_eq!(c.len(), 4);
        assert!(find_cycle(&[0, 1], &BTreeSet::from([(0, 1)])).is_none());
    }
}
