use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::report::{serialize_matrix, Failure};
use super::{BaseRing, CellDatum, Verifier};
use crate::linalg::Matrix;
use crate::{DeltaPoly, Label};

/// The form `⟨T, U⟩` on `K(n, λ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramForm<R: BaseRing = DeltaPoly> {
    pub object: usize,
    pub label: Label,
    pub basis: Vec<Value>,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: Matrix<R>,
}

impl<R: BaseRing> GramForm<R> {
    pub fn determinant(&self) -> R {
        gram_determinant(self)
    }
}

pub fn gram_determinant<R: BaseRing>(g: &GramForm<R>) -> R {
    g.matrix.determinant()
}

/// The module with basis `K(n, λ)` on which `End(n)` acts through `r_a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellModule<R: BaseRing = DeltaPoly> {
    pub object: usize,
    pub label: Label,
    pub basis: Vec<Value>,
    pub action: Vec<CellAction<R>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellAction<R: BaseRing = DeltaPoly> {
    pub a: Value,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: Matrix<R>,
}

impl<D: CellDatum> Verifier<'_, D> {
    /// Extracts `⟨T, U⟩` from `C^λ(S, T) ∘ C^λ(U, V) ≡ ⟨T, U⟩ C^λ(S, V)` modulo lower
    /// cells, over every object `p ∋ S` and `m ∋ V`, and checks that it does not depend on
    /// `S` or `V`.
    pub fn bilinear_form(&self, n: usize, label: Label) -> Result<GramForm<D::Scalar>, Failure> {
        let datum = self.datum();
        let poset = datum.poset();
        let kn = datum.cells(n, label);
        let mut gram: Vec<Vec<Option<D::Scalar>>> = vec![vec![None; kn.len()]; kn.len()];
        for p in datum.objects() {
            let kp = datum.cells(p, label);
            if kp.is_empty() {
                continue;
            }
            for m in datum.objects() {
                let km = datum.cells(m, label);
                if km.is_empty() {
                    continue;
                }
                let target = self.hom_basis(p, m);
                for s in &kp {
                    for v in &km {
                        for (i, t) in kn.iter().enumerate() {
                            for (j, u) in kn.iter().enumerate() {
                                let prod = datum.compose(
                                    &datum.cell_morphism(label, s, t),
                                    &datum.cell_morphism(label, u, v),
                                );
                                let coeffs = self.expand(&prod, p, m).map_err(|e| {
                                    Failure::new(json!({
                                        "reason": "inherited C-1 failure",
                                        "hom": [p, m],
                                        "error": e.to_string(),
                                    }))
                                })?;
                                let mut value = D::Scalar::zero();
                                for (entry, c) in target.entries.iter().zip(coeffs) {
                                    if c.is_zero() {
                                        continue;
                                    }
                                    if entry.label == label && &entry.s == s && &entry.t == v {
                                        value = c;
                                    } else if entry.label == label || !poset.lt(entry.label, label) {
                                        return Err(Failure::new(json!({
                                            "reason": "product is not a multiple of C(S, V) modulo lower cells",
                                            "label": label, "s": s, "t": t, "u": u, "v": v,
                                            "term": entry.to_json(), "coefficient": c.to_string(),
                                        })));
                                    }
                                }
                                match &gram[i][j] {
                                    None => gram[i][j] = Some(value),
                                    Some(prev) if prev == &value => {}
                                    Some(prev) => {
                                        return Err(Failure::new(json!({
                                            "reason": "form depends on S or V",
                                            "label": label, "s": s, "t": t, "u": u, "v": v,
                                            "first": prev.to_string(), "found": value.to_string(),
                                        })))
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let rows: Vec<Vec<D::Scalar>> = gram
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.unwrap_or_else(D::Scalar::zero)).collect())
            .collect();
        let mut matrix = Matrix::zeros(kn.len(), kn.len());
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                matrix.set(i, j, x);
            }
        }
        Ok(GramForm {
            object: n,
            label,
            basis: kn.iter().map(|x| json!(x)).collect(),
            matrix,
        })
    }

    /// The cell module `K(n, λ)` with the action of every C-basis element of `End(n)`.
    /// Multiplicativity `r_{a∘b} = r_a · r_b` is checked for all basis pairs.
    pub fn cell_module(&self, n: usize, label: Label) -> Result<CellModule<D::Scalar>, Failure> {
        let datum = self.datum();
        let kn = datum.cells(n, label);
        let basis = self.hom_basis(n, n);
        let mut action = Vec::new();
        for a in &basis.entries {
            let matrix = self.extract_r(&a.morphism, n, n, n, label)?;
            action.push(CellAction { a: a.to_json(), matrix });
        }
        for (a, ra) in basis.entries.iter().zip(&action) {
            for (b, rb) in basis.entries.iter().zip(&action) {
                let ab = datum.compose(&a.morphism, &b.morphism);
                let rab = self.extract_r(&ab, n, n, n, label)?;
                if rab != ra.matrix.mul(&rb.matrix) {
                    return Err(Failure::new(json!({
                        "reason": "action is not multiplicative",
                        "label": label, "a": a.to_json(), "b": b.to_json(),
                    })));
                }
            }
        }
        Ok(CellModule {
            object: n,
            label,
            basis: kn.iter().map(|x| json!(x)).collect(),
            action,
        })
    }
}
