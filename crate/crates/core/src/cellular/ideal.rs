use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::report::{serialize_matrix, Failure};
use super::{BaseRing, CellDatum, PosetError, Verifier};
use crate::linalg::{Domain, Matrix};
use crate::{DeltaPoly, Label};

/// The span of `{C^μ(S, T) : μ ∈ π}` inside `Hom(n, m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealSpan {
    pub source: usize,
    pub target: usize,
    pub ideal: Vec<Label>,
    /// Positions in the C-image basis of `Hom(n, m)`.
    pub members: Vec<usize>,
    pub basis: Vec<Value>,
    pub dimension: usize,
    /// Closed under composition with every basis morphism on either side.
    pub two_sided: bool,
    pub witness: Option<Value>,
}

/// `Hom_{A(π)}(n, m)` as a left `End(n)`-module (acting by pre-composition with `a: n -> n`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoModule<R: BaseRing = DeltaPoly> {
    pub object: usize,
    pub members: Vec<usize>,
    pub action: Vec<RhoMap<R>>,
}

/// The matrix of a map between ideal spans, columns indexed by the source span.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoMap<R: BaseRing = DeltaPoly> {
    pub morphism: Value,
    pub source: usize,
    pub target: usize,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: Matrix<R>,
}

/// The functor `ρ(n; π): m ↦ Hom_{A(π)}(n, m)` on the objects of the datum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoFunctor<R: BaseRing = DeltaPoly> {
    pub object: usize,
    pub ideal: Vec<Label>,
    pub modules: BTreeMap<usize, RhoModule<R>>,
    /// One map per C-basis morphism `g: m -> m'`.
    pub maps: Vec<RhoMap<R>>,
    pub equivariant: bool,
    pub functorial: bool,
    pub witness: Option<Value>,
    #[serde(skip)]
    offsets: BTreeMap<(usize, usize), usize>,
}

impl<R: BaseRing> RhoFunctor<R> {
    pub fn passed(&self) -> bool {
        self.equivariant && self.functorial && self.witness.is_none()
    }

    fn map_for(&self, source: usize, target: usize, index: usize) -> &RhoMap<R> {
        &self.maps[self.offsets[&(source, target)] + index]
    }
}

/// Commutation of the inclusion squares for `π ⊆ π'`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalityReport {
    pub object: usize,
    pub smaller: Vec<Label>,
    pub larger: Vec<Label>,
    pub squares: usize,
    pub commute: bool,
    pub witness: Option<Value>,
}

fn selection<R: BaseRing>(small: &[usize], large: &[usize]) -> Option<Matrix<R>> {
    let mut m = Matrix::zeros(large.len(), small.len());
    for (j, x) in small.iter().enumerate() {
        let i = large.iter().position(|y| y == x)?;
        m.set(i, j, R::one());
    }
    Some(m)
}

impl<D: CellDatum> Verifier<'_, D> {
    fn check_ideal(&self, ideal: &BTreeSet<Label>) -> Result<(), PosetError> {
        self.datum().poset().check_order_ideal(ideal)
    }

    fn members(&self, n: usize, m: usize, ideal: &BTreeSet<Label>) -> Vec<usize> {
        let basis = self.hom_basis(n, m);
        (0..basis.len()).filter(|&i| ideal.contains(&basis.entries[i].label)).collect()
    }

    /// Coordinates of `f` on the ideal members, or a failure if `f` leaves the ideal.
    fn restrict(&self, f: &D::Morphism, n: usize, m: usize, members: &[usize]) -> Result<Vec<D::Scalar>, Failure> {
        let coeffs = self
            .expand(f, n, m)
            .map_err(|e| Failure::new(json!({ "reason": "inherited C-1 failure", "error": e.to_string() })))?;
        let basis = self.hom_basis(n, m);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() && !members.contains(&i) {
                return Err(Failure::new(json!({
                    "reason": "composite leaves the ideal",
                    "term": basis.entries[i].to_json(),
                    "coefficient": c.to_string(),
                })));
            }
        }
        Ok(members.iter().map(|&i| coeffs[i].clone()).collect())
    }

    /// The span of the cells labelled in `π` inside `Hom(n, m)`, with an exact check that
    /// composing with every basis morphism on either side stays inside.
    pub fn ideal_span(&self, ideal: &BTreeSet<Label>, n: usize, m: usize) -> Result<IdealSpan, PosetError> {
        self.check_ideal(ideal)?;
        let datum = self.datum();
        let basis = self.hom_basis(n, m);
        let members = self.members(n, m, ideal);
        let mut witness = None;
        'outer: for &i in &members {
            let f = &basis.entries[i].morphism;
            for p in datum.objects() {
                let left = self.hom_basis(p, n);
                let inside = self.members(p, m, ideal);
                for a in &left.entries {
                    if let Err(e) = self.restrict(&datum.compose(&a.morphism, f), p, m, &inside) {
                        let mut w = e.witness;
                        w["left"] = a.to_json();
                        w["member"] = basis.entries[i].to_json();
                        witness = Some(w);
                        break 'outer;
                    }
                }
                let right = self.hom_basis(m, p);
                let inside = self.members(n, p, ideal);
                for b in &right.entries {
                    if let Err(e) = self.restrict(&datum.compose(f, &b.morphism), n, p, &inside) {
                        let mut w = e.witness;
                        w["right"] = b.to_json();
                        w["member"] = basis.entries[i].to_json();
                        witness = Some(w);
                        break 'outer;
                    }
                }
            }
        }
        Ok(IdealSpan {
            source: n,
            target: m,
            ideal: ideal.iter().copied().collect(),
            basis: members.iter().map(|&i| basis.entries[i].to_json()).collect(),
            dimension: members.len(),
            members,
            two_sided: witness.is_none(),
            witness,
        })
    }

    /// The functor `ρ(n; π)`. Module actions and the maps induced by every C-basis morphism
    /// between objects are computed exactly; equivariance is checked for every pair
    /// `(a, g)` and functoriality `ρ(g ∘ h) = ρ(h) ρ(g)` for every composable basis pair.
    pub fn rho_functor(&self, n: usize, ideal: &BTreeSet<Label>) -> Result<RhoFunctor<D::Scalar>, PosetError> {
        self.check_ideal(ideal)?;
        let datum = self.datum();
        let objects = datum.objects();
        let mut out = RhoFunctor {
            object: n,
            ideal: ideal.iter().copied().collect(),
            modules: BTreeMap::new(),
            maps: Vec::new(),
            equivariant: true,
            functorial: true,
            witness: None,
            offsets: BTreeMap::new(),
        };
        let fail = |out: &mut RhoFunctor<D::Scalar>, w: Value| {
            if out.witness.is_none() {
                out.witness = Some(w);
            }
        };
        let end = self.hom_basis(n, n);
        for &m in &objects {
            let members = self.members(n, m, ideal);
            let basis = self.hom_basis(n, m);
            let mut action = Vec::new();
            for a in &end.entries {
                let mut mat = Matrix::<D::Scalar>::zeros(members.len(), members.len());
                for (j, &i) in members.iter().enumerate() {
                    match self.restrict(&datum.compose(&a.morphism, &basis.entries[i].morphism), n, m, &members) {
                        Ok(col) => col.into_iter().enumerate().for_each(|(r, x)| mat.set(r, j, x)),
                        Err(e) => fail(&mut out, e.witness),
                    }
                }
                action.push(RhoMap {
                    morphism: a.to_json(),
                    source: m,
                    target: m,
                    matrix: mat,
                });
            }
            out.modules.insert(m, RhoModule { object: m, members, action });
        }
        for &m in &objects {
            for &m2 in &objects {
                let src = out.modules[&m].members.clone();
                let dst = out.modules[&m2].members.clone();
                let from = self.hom_basis(n, m);
                out.offsets.insert((m, m2), out.maps.len());
                for g in &self.hom_basis(m, m2).entries {
                    let mut mat = Matrix::<D::Scalar>::zeros(dst.len(), src.len());
                    for (j, &i) in src.iter().enumerate() {
                        match self.restrict(&datum.compose(&from.entries[i].morphism, &g.morphism), n, m2, &dst) {
                            Ok(col) => col.into_iter().enumerate().for_each(|(r, x)| mat.set(r, j, x)),
                            Err(e) => fail(&mut out, e.witness),
                        }
                    }
                    out.maps.push(RhoMap {
                        morphism: g.to_json(),
                        source: m,
                        target: m2,
                        matrix: mat,
                    });
                }
            }
        }
        // equivariance: ρ(g) act_m(a) = act_m'(a) ρ(g)
        let mut broken = None;
        'eq: for g in &out.maps {
            let (am, am2) = (&out.modules[&g.source].action, &out.modules[&g.target].action);
            for (x, y) in am.iter().zip(am2) {
                if g.matrix.mul(&x.matrix) != y.matrix.mul(&g.matrix) {
                    broken = Some(json!({ "reason": "not equivariant", "g": g.morphism, "a": x.morphism }));
                    break 'eq;
                }
            }
        }
        if let Some(w) = broken {
            out.equivariant = false;
            fail(&mut out, w);
        }
        // functoriality on composable basis pairs, with ρ(g ∘ h) obtained by linearity
        'pairs: for &m in &objects {
            for &m2 in &objects {
                for &m3 in &objects {
                    let gs = self.hom_basis(m, m2);
                    let hs = self.hom_basis(m2, m3);
                    for (gi, g) in gs.entries.iter().enumerate() {
                        for (hi, h) in hs.entries.iter().enumerate() {
                            let gh = datum.compose(&g.morphism, &h.morphism);
                            let coeffs = match self.expand(&gh, m, m3) {
                                Ok(c) => c,
                                Err(e) => {
                                    out.functorial = false;
                                    fail(&mut out, json!({ "reason": "inherited C-1 failure", "error": e.to_string() }));
                                    break 'pairs;
                                }
                            };
                            let size = (out.modules[&m3].members.len(), out.modules[&m].members.len());
                            let mut lhs = Matrix::<D::Scalar>::zeros(size.0, size.1);
                            for (k, c) in coeffs.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let mk = &out.map_for(m, m3, k).matrix;
                                for r in 0..size.0 {
                                    for s in 0..size.1 {
                                        let x = lhs.get(r, s).add_ref(&c.mul_ref(mk.get(r, s)));
                                        lhs.set(r, s, x);
                                    }
                                }
                            }
                            let rhs = out.map_for(m2, m3, hi).matrix.mul(&out.map_for(m, m2, gi).matrix);
                            if lhs != rhs {
                                out.functorial = false;
                                let w = json!({
                                    "reason": "not functorial",
                                    "g": g.to_json(), "h": h.to_json(), "objects": [m, m2, m3],
                                });
                                fail(&mut out, w);
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `ρ(n; π)(g)` for an arbitrary `g: m -> m'`, as a matrix on the ideal members.
    pub fn rho_map(
        &self,
        n: usize,
        ideal: &BTreeSet<Label>,
        g: &D::Morphism,
        m: usize,
        m2: usize,
    ) -> Result<RhoMap<D::Scalar>, Failure> {
        self.check_ideal(ideal)
            .map_err(|e| Failure::new(json!({ "reason": "not an order ideal", "error": e.to_string() })))?;
        let src = self.members(n, m, ideal);
        let dst = self.members(n, m2, ideal);
        let from = self.hom_basis(n, m);
        let mut matrix = Matrix::<D::Scalar>::zeros(dst.len(), src.len());
        for (j, &i) in src.iter().enumerate() {
            let col = self.restrict(&self.datum().compose(&from.entries[i].morphism, g), n, m2, &dst)?;
            col.into_iter().enumerate().for_each(|(r, x)| matrix.set(r, j, x));
        }
        Ok(RhoMap {
            morphism: json!(format!("{g:?}")),
            source: m,
            target: m2,
            matrix,
        })
    }

    /// For `π ⊆ π'` and each listed `g: m -> m'`, checks that the inclusion square between
    /// `ρ(n; π)(g)` and `ρ(n; π')(g)` commutes.
    pub fn rho_naturality_on(
        &self,
        n: usize,
        smaller: &BTreeSet<Label>,
        larger: &BTreeSet<Label>,
        morphisms: &[(D::Morphism, usize, usize)],
    ) -> Result<NaturalityReport, PosetError> {
        self.check_ideal(smaller)?;
        self.check_ideal(larger)?;
        let mut report = NaturalityReport {
            object: n,
            smaller: smaller.iter().copied().collect(),
            larger: larger.iter().copied().collect(),
            squares: 0,
            commute: true,
            witness: None,
        };
        for (g, m, m2) in morphisms {
            report.squares += 1;
            let inclusion = |k: usize| selection::<D::Scalar>(&self.members(n, k, smaller), &self.members(n, k, larger));
            let maps = (self.rho_map(n, smaller, g, *m, *m2), self.rho_map(n, larger, g, *m, *m2));
            let broken = match (maps, inclusion(*m), inclusion(*m2)) {
                ((Ok(small), Ok(large)), Some(i_src), Some(i_dst)) => {
                    (large.matrix.mul(&i_src) != i_dst.mul(&small.matrix)).then(|| json!({ "reason": "inclusion square does not commute" }))
                }
                ((Err(e), _) | (_, Err(e)), _, _) => Some(e.witness),
                _ => Some(json!({ "reason": "smaller ideal is not contained in the larger" })),
            };
            if let Some(mut w) = broken {
                w["g"] = json!(format!("{g:?}"));
                w["objects"] = json!([m, m2]);
                report.commute = false;
                report.witness = Some(w);
                break;
            }
        }
        Ok(report)
    }

    /// For `π ⊆ π'`, checks that the inclusions `ρ(n; π)(m) -> ρ(n; π')(m)` commute with the
    /// maps induced by every basis morphism and with the `End(n)` actions.
    pub fn rho_naturality(
        &self,
        n: usize,
        smaller: &BTreeSet<Label>,
        larger: &BTreeSet<Label>,
    ) -> Result<NaturalityReport, PosetError> {
        let f = self.rho_functor(n, smaller)?;
        let g = self.rho_functor(n, larger)?;
        let mut report = NaturalityReport {
            object: n,
            smaller: f.ideal.clone(),
            larger: g.ideal.clone(),
            squares: 0,
            commute: true,
            witness: None,
        };
        let inclusions: BTreeMap<usize, Option<Matrix<D::Scalar>>> = f
            .modules
            .iter()
            .map(|(&m, module)| (m, selection(&module.members, &g.modules[&m].members)))
            .collect();
        for (small, large) in f.maps.iter().zip(&g.maps) {
            report.squares += 1;
            let (Some(i_src), Some(i_dst)) = (&inclusions[&small.source], &inclusions[&small.target]) else {
                report.commute = false;
                report.witness = Some(json!({ "reason": "smaller ideal is not contained in the larger" }));
                return Ok(report);
            };
            if large.matrix.mul(i_src) != i_dst.mul(&small.matrix) {
                report.commute = false;
                report.witness = Some(json!({
                    "reason": "inclusion square does not commute",
                    "g": small.morphism, "objects": [small.source, small.target],
                }));
                return Ok(report);
            }
        }
        for (m, module) in &f.modules {
            let i = inclusions[m].as_ref().expect("checked above");
            for (x, y) in module.action.iter().zip(&g.modules[m].action) {
                report.squares += 1;
                if y.matrix.mul(i) != i.mul(&x.matrix) {
                    report.commute = false;
                    report.witness = Some(json!({
                        "reason": "inclusion is not End(n)-linear",
                        "a": x.morphism, "object": m,
                    }));
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }
}
