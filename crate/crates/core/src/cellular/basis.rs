use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use super::report::Failure;
use super::CellDatum;
use super::BaseRing;
use crate::linalg::{LinalgError, Matrix, SpanSolver};
use crate::{Label, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("the C-image in Hom({n}, {m}) is not a basis: {reason}")]
    NotABasis { n: usize, m: usize, reason: String },
    #[error("morphism is not in the span of the C-image")]
    NotInSpan,
    #[error("expansion coefficient {index} is not integral")]
    NotIntegral { index: usize },
    #[error("expansion coefficient {index} = {value} does not lie in {ring}")]
    NotInBaseRing { index: usize, value: String, ring: &'static str },
}

/// One C-image morphism `C^λ(S, T)`.
#[derive(Debug, Clone)]
pub struct BasisEntry<D: CellDatum> {
    pub label: Label,
    pub s: D::Index,
    pub t: D::Index,
    pub morphism: D::Morphism,
}

impl<D: CellDatum> BasisEntry<D> {
    pub fn to_json(&self) -> Value {
        json!({ "label": self.label, "s": self.s, "t": self.t })
    }
}

/// The C-image in `Hom(n, m)`, ordered by label, then `S`, then `T`.
pub struct HomBasis<D: CellDatum> {
    pub source: usize,
    pub target: usize,
    pub entries: Vec<BasisEntry<D>>,
    pub ambient_dimension: usize,
    pub rank: usize,
    solver: Result<SpanSolver<LaurentPoly>, String>,
}

impl<D: CellDatum> HomBasis<D> {
    fn build(datum: &D, n: usize, m: usize) -> Self {
        let mut entries = Vec::new();
        for &label in datum.poset().elements() {
            let ks = datum.cells(n, label);
            let kt = datum.cells(m, label);
            for s in &ks {
                for t in &kt {
                    entries.push(BasisEntry {
                        label,
                        s: s.clone(),
                        t: t.clone(),
                        morphism: datum.cell_morphism(label, s, t),
                    });
                }
            }
        }
        let ambient_dimension = datum.ambient_dimension(n, m);
        let coords: Vec<Vec<LaurentPoly>> = entries
            .iter()
            .map(|e| datum.coordinates(&e.morphism, n, m))
            .collect();
        let len = coords.first().map_or(0, Vec::len);
        let (solver, rank) = match SpanSolver::new(coords, len) {
            Ok(s) => {
                let r = s.dimension();
                (Ok(s), r)
            }
            Err(LinalgError::Dependent { rank, count }) => {
                (Err(format!("rank {rank} of {count} C-image vectors")), rank)
            }
            Err(e) => (Err(e.to_string()), 0),
        };
        Self {
            source: n,
            target: m,
            entries,
            ambient_dimension,
            rank,
            solver,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The C-1 condition: cardinality = dimension = rank.
    pub fn is_basis(&self) -> bool {
        self.solver.is_ok() && self.len() == self.ambient_dimension && self.rank == self.len()
    }

    pub fn position(&self, label: Label, s: &D::Index, t: &D::Index) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.label == label && &e.s == s && &e.t == t)
    }
}

/// Exhaustive checker for one cell datum. Hom bases are built lazily and cached.
pub struct Verifier<'d, D: CellDatum> {
    datum: &'d D,
    bases: RefCell<BasisCache<D>>,
}

type BasisCache<D> = BTreeMap<(usize, usize), Rc<HomBasis<D>>>;

impl<'d, D: CellDatum> Verifier<'d, D> {
    pub fn new(datum: &'d D) -> Self {
        Self {
            datum,
            bases: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn datum(&self) -> &'d D {
        self.datum
    }

    pub fn hom_basis(&self, n: usize, m: usize) -> Rc<HomBasis<D>> {
        if let Some(b) = self.bases.borrow().get(&(n, m)) {
            return Rc::clone(b);
        }
        let b = Rc::new(HomBasis::build(self.datum, n, m));
        self.bases.borrow_mut().insert((n, m), Rc::clone(&b));
        b
    }

    /// Coefficients of `f: n -> m` in the C-image basis, each checked to lie in the base ring.
    pub fn expand(&self, f: &D::Morphism, n: usize, m: usize) -> Result<Vec<D::Scalar>, ExpandError> {
        let basis = self.hom_basis(n, m);
        let solver = match &basis.solver {
            Ok(s) if basis.is_basis() => s,
            Ok(_) => {
                return Err(ExpandError::NotABasis {
                    n,
                    m,
                    reason: format!(
                        "{} C-image vectors for a space of dimension {}",
                        basis.len(),
                        basis.ambient_dimension
                    ),
                })
            }
            Err(reason) => {
                return Err(ExpandError::NotABasis {
                    n,
                    m,
                    reason: reason.clone(),
                })
            }
        };
        let coords = self.datum.coordinates(f, n, m);
        let sol = solver.solve(&coords).map_err(|e| match e {
            LinalgError::NotIntegral { index } => ExpandError::NotIntegral { index },
            _ => ExpandError::NotInSpan,
        })?;
        sol.iter()
            .enumerate()
            .map(|(index, c)| {
                D::Scalar::from_laurent(c).ok_or_else(|| ExpandError::NotInBaseRing {
                    index,
                    value: c.to_string(),
                    ring: D::Scalar::NAME,
                })
            })
            .collect()
    }

    /// The matrix `r_f(S', S)` for an arbitrary `f: p -> n` at label `λ`, read off from
    /// `f ∘ C^λ(S, T)` in `Hom(p, m)` for every `T ∈ K(m, λ)`. Rows are indexed by
    /// `K(p, λ)`, columns by `K(n, λ)`.
    ///
    /// Fails when some product has a term whose label is neither `λ` nor below `λ`, when
    /// the `λ`-terms involve a second index other than `T`, or when the extracted constants
    /// depend on `T`.
    pub fn extract_r(
        &self,
        f: &D::Morphism,
        p: usize,
        n: usize,
        m: usize,
        label: Label,
    ) -> Result<Matrix<D::Scalar>, Failure> {
        let datum = self.datum;
        let poset = datum.poset();
        let kp = datum.cells(p, label);
        let kn = datum.cells(n, label);
        let km = datum.cells(m, label);
        let target = self.hom_basis(p, m);
        let mut r = Matrix::<D::Scalar>::zeros(kp.len(), kn.len());
        for (col, s) in kn.iter().enumerate() {
            for (ti, t) in km.iter().enumerate() {
                let prod = datum.compose(f, &datum.cell_morphism(label, s, t));
                let coeffs = self.expand(&prod, p, m).map_err(|e| {
                    Failure::new(json!({
                        "reason": "inherited C-1 failure",
                        "label": label, "s": s, "t": t,
                        "error": e.to_string(),
                    }))
                })?;
                let mut column = vec![D::Scalar::zero(); kp.len()];
                for (entry, c) in target.entries.iter().zip(&coeffs) {
                    if entry.label == label {
                        if &entry.t == t {
                            let row = kp.iter().position(|x| x == &entry.s).expect("index in K(p, λ)");
                            column[row] = c.clone();
                        } else if !c.is_zero() {
                            return Err(Failure::new(json!({
                                "reason": "λ-term with second index other than T",
                                "label": label, "s": s, "t": t,
                                "term": entry.to_json(), "coefficient": c.to_string(),
                            })));
                        }
                    } else if !c.is_zero() && !poset.lt(entry.label, label) {
                        return Err(Failure::new(json!({
                            "reason": "term with label not below λ",
                            "label": label, "s": s, "t": t,
                            "term": entry.to_json(), "coefficient": c.to_string(),
                        })));
                    }
                }
                for (row, c) in column.into_iter().enumerate() {
                    if ti == 0 {
                        r.set(row, col, c);
                    } else if r.get(row, col) != &c {
                        return Err(Failure::new(json!({
                            "reason": "structure constant depends on T",
                            "label": label, "s": s, "t": t,
                            "s_prime": kp[row],
                            "first": r.get(row, col).to_string(), "found": c.to_string(),
                        })));
                    }
                }
            }
        }
        Ok(r)
    }
}
