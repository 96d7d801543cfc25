use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::report::Status;
use super::{CellDatum, Verifier};
use crate::Label;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctorReport {
    pub status: Status,
    pub order_preserving: bool,
    pub checked: usize,
    pub witness: Option<Value>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

/// Checks that a functor between two cell data is cellular: `φ_poset` is order preserving
/// and, for every label `λ`, each cell `C^μ(S, T)` with `μ ≤ λ` is sent into the ideal of
/// `↓φ(λ)`. Objects whose image is not an object of the target datum are skipped.
pub fn verify_cellular_functor<D1, D2>(
    phi_obj: impl Fn(usize) -> usize,
    phi_mor: impl Fn(&D1::Morphism, usize, usize) -> D2::Morphism,
    phi_poset: impl Fn(Label) -> Label,
    source: &Verifier<'_, D1>,
    target: &Verifier<'_, D2>,
) -> FunctorReport
where
    D1: CellDatum,
    D2: CellDatum,
{
    let p1 = source.datum().poset();
    let p2 = target.datum().poset();
    let mut report = FunctorReport {
        status: Status::Pass,
        order_preserving: true,
        checked: 0,
        witness: None,
    };
    for &a in p1.elements() {
        for &b in p1.elements() {
            if p1.leq(a, b) && !p2.leq(phi_poset(a), phi_poset(b)) {
                report.status = Status::Fail;
                report.order_preserving = false;
                report.witness = Some(json!({ "reason": "poset map is not order preserving", "pair": [a, b] }));
                return report;
            }
        }
    }
    let objects2: BTreeSet<usize> = target.datum().objects().into_iter().collect();
    let objects: Vec<usize> = source
        .datum()
        .objects()
        .into_iter()
        .filter(|&n| objects2.contains(&phi_obj(n)))
        .collect();
    for &label in p1.elements() {
        let allowed = p2.down_set(phi_poset(label));
        for &n in &objects {
            for &m in &objects {
                let basis = source.hom_basis(n, m);
                let image_basis = target.hom_basis(phi_obj(n), phi_obj(m));
                for entry in basis.entries.iter().filter(|e| p1.leq(e.label, label)) {
                    report.checked += 1;
                    let image = phi_mor(&entry.morphism, n, m);
                    let coeffs = match target.expand(&image, phi_obj(n), phi_obj(m)) {
                        Ok(c) => c,
                        Err(e) => {
                            report.status = Status::Fail;
                            report.witness = Some(json!({
                                "reason": "image cannot be expanded",
                                "cell": entry.to_json(), "error": e.to_string(),
                            }));
                            return report;
                        }
                    };
                    for (t, c) in image_basis.entries.iter().zip(&coeffs) {
                        if !c.is_zero() && !allowed.contains(&t.label) {
                            report.status = Status::Fail;
                            report.witness = Some(json!({
                                "reason": "image leaves the ideal",
                                "ideal_of": label, "objects": [n, m],
                                "cell": entry.to_json(), "term": t.to_json(),
                                "coefficient": c.to_string(),
                            }));
                            return report;
                        }
                    }
                }
            }
        }
    }
    report
}
