use serde::Serialize;

use super::TLMorphism;
use crate::DeltaPoly;

/// One checked instance of a defining relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub n: usize,
    pub relation: String,
    pub holds: bool,
}

/// Checks `e_i² = δ e_i`, `e_i e_{i±1} e_i = e_i` and `e_i e_j = e_j e_i` for `|i - j| >= 2`
/// in every `End(n)` with `n <= max_n`.
pub fn relation_suite(max_n: usize) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let e: Vec<TLMorphism> = (1..n).map(|i| TLMorphism::generator_e(n, i).expect("in range")).collect();
        let prod = |a: &TLMorphism, b: &TLMorphism| a.compose(b).expect("same object");
        for i in 1..n {
            let ei = &e[i - 1];
            out.push(RelationCheck {
                n,
                relation: format!("e{i}^2 = d e{i}"),
                holds: prod(ei, ei) == ei.scale(&DeltaPoly::delta()),
            });
            for j in 1..n {
                let ej = &e[j - 1];
                if i.abs_diff(j) == 1 {
                    out.push(RelationCheck {
                        n,
                        relation: format!("e{i} e{j} e{i} = e{i}"),
                        holds: &prod(&prod(ei, ej), ei) == ei,
                    });
                } else if i.abs_diff(j) >= 2 && i < j {
                    out.push(RelationCheck {
                        n,
                        relation: format!("e{i} e{j} = e{j} e{i}"),
                        holds: prod(ei, ej) == prod(ej, ei),
                    });
                }
            }
        }
    }
    out
}
