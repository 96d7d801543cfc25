use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::psi::{quasi_r_coefficient, BarInvolution};
use super::tensor::{act_f, TensorVector, WeightString};
use super::{Conventions, Sl2Error};
use crate::{Label, LaurentPoly};

/// Which half-lattice the off-diagonal coefficients of the canonical basis live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    /// `v·Z[v]`.
    Positive,
    /// `v^-1·Z[v^-1]`.
    Negative,
}

/// Which adjacent-after-cancellation letter pairs cancel in the bracketing rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bracketing {
    /// A `1` followed later by a `0`.
    OneThenZero,
    /// A `0` followed later by a `1`.
    ZeroThenOne,
}

/// The partition label of a string together with its hi/lo flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BracketLabel {
    pub lambda: Label,
    pub hi: bool,
    pub lo: bool,
}

/// Positions of the letters left after cancelling matched pairs.
fn uncancelled(s: &WeightString, orientation: Bracketing) -> Vec<usize> {
    let (opener, closer) = match orientation {
        Bracketing::OneThenZero => (1, 0),
        Bracketing::ZeroThenOne => (0, 1),
    };
    let mut stack = Vec::new();
    let mut free = Vec::new();
    for i in 0..s.len() {
        let b = s.bit(i);
        if b == closer && !stack.is_empty() {
            stack.pop();
        } else if b == opener {
            stack.push(i);
        } else {
            free.push(i);
        }
    }
    free.extend(stack);
    free.sort_unstable();
    free
}

pub fn bracket(s: &WeightString, orientation: Bracketing) -> BracketLabel {
    let free = uncancelled(s, orientation);
    BracketLabel {
        lambda: free.len(),
        hi: free.iter().all(|&i| s.bit(i) == 0),
        lo: free.iter().all(|&i| s.bit(i) == 1),
    }
}

/// The label of `s` under the fixed orientation (a `1` followed later by a `0` cancels).
pub fn partition_label(s: &WeightString) -> BracketLabel {
    bracket(s, Bracketing::OneThenZero)
}

/// The element of `B[λ]^{lo}` matching `s`: every uncancelled letter becomes `1`.
pub fn lo_of(s: &WeightString) -> WeightString {
    uncancelled(s, Bracketing::OneThenZero)
        .into_iter()
        .fold(*s, |acc, i| acc.with_bit(i, 1))
}

/// The element of `B[λ]^{hi}` matching `s`: every uncancelled letter becomes `0`.
pub fn hi_of(s: &WeightString) -> WeightString {
    uncancelled(s, Bracketing::OneThenZero)
        .into_iter()
        .fold(*s, |acc, i| acc.with_bit(i, 0))
}

/// One canonical basis element `b_a = x_a + Σ p_{t,a} x_t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalElement {
    pub leading: WeightString,
    #[serde(rename = "terms", serialize_with = "serialize_terms")]
    pub vector: TensorVector,
    pub lambda: Label,
    pub hi: bool,
    pub lo: bool,
}

fn serialize_terms<S: serde::Serializer>(v: &TensorVector, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(None)?;
    for (k, c) in v.terms() {
        map.serialize_entry(k, c)?;
    }
    map.end()
}

/// The canonical basis of `V^{⊗n}` with its partition.
#[derive(Debug, Clone)]
pub struct BasedModuleData {
    pub n: usize,
    /// Indexed by the code of the leading string.
    pub elements: Vec<CanonicalElement>,
    pub half: Half,
    pub bracketing: Bracketing,
}

/// Expansion of `x` in a unitriangular family (`vectors[code] = x_code + terms of smaller
/// key`), peeling off the largest-key term until nothing is left.
fn peel(vectors: &[&TensorVector], x: &TensorVector) -> TensorVector {
    let mut rest = x.clone();
    let mut out = TensorVector::zero(x.len());
    while let Some(t) = rest.support().max_by_key(|s| (s.key(), *s)) {
        let f = rest.coefficient(&t);
        rest.add_scaled(vectors[t.code() as usize], &-&f);
        out.add_term(t, f);
    }
    out
}

impl BasedModuleData {
    fn new(n: usize, vectors: Vec<TensorVector>, half: Half, bracketing: Bracketing) -> Self {
        let elements = vectors
            .into_iter()
            .enumerate()
            .map(|(code, vector)| {
                let leading = WeightString::new(n, code as u32);
                let label = bracket(&leading, bracketing);
                CanonicalElement {
                    leading,
                    vector,
                    lambda: label.lambda,
                    hi: label.hi,
                    lo: label.lo,
                }
            })
            .collect();
        Self {
            n,
            elements,
            half,
            bracketing,
        }
    }

    pub fn element(&self, s: &WeightString) -> &CanonicalElement {
        &self.elements[s.code() as usize]
    }

    fn vectors(&self) -> Vec<&TensorVector> {
        self.elements.iter().map(|e| &e.vector).collect()
    }

    /// Expansion of `x` in the canonical basis: the coefficient of `b_a` is stored at `a`.
    pub fn coordinates(&self, x: &TensorVector) -> TensorVector {
        peel(&self.vectors(), x)
    }

    /// The coordinate functional of `b_a` as a vector, via `⟨x_s, x_t⟩ = [s = t]`.
    ///
    /// Solves `⟨w, b_c⟩ = [c = a]` over the weight space of `a` in increasing key order; each
    /// equation introduces the single new unknown `w_c`.
    pub fn coordinate_functional(&self, a: &WeightString) -> TensorVector {
        let mut order = WeightString::of_weight(self.n, a.weight());
        order.sort_by_key(|s| (s.key(), *s));
        let mut w = TensorVector::zero(self.n);
        for c in order {
            let mut value = if c == *a { LaurentPoly::one() } else { LaurentPoly::zero() };
            for (s, p) in self.element(&c).vector.terms() {
                if *s != c {
                    value -= &(p * &w.coefficient(s));
                }
            }
            w.add_term(c, value);
        }
        w
    }

    /// Every element is fixed by `Ψ`.
    pub fn is_psi_fixed(&self, psi: &BarInvolution) -> bool {
        psi.len() == self.n && self.elements.iter().all(|e| psi.apply(&e.vector) == e.vector)
    }

    /// Every element is `x_a` plus terms of strictly smaller key with coefficients in the
    /// chosen half-lattice.
    pub fn is_unitriangular(&self) -> bool {
        self.elements.iter().all(|e| {
            e.vector.terms().all(|(t, p)| {
                if *t == e.leading {
                    p.is_one()
                } else {
                    t.key() < e.leading.key()
                        && t.weight() == e.leading.weight()
                        && match self.half {
                            Half::Positive => p.min_exponent().is_some_and(|k| k > 0),
                            Half::Negative => p.max_exponent().is_some_and(|k| k < 0),
                        }
                }
            })
        })
    }

    /// `|B[λ]|` for each label.
    pub fn partition_sizes(&self) -> BTreeMap<Label, usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry(e.lambda).or_insert(0) += 1;
        }
        out
    }

    /// `|B[λ]^{hi}|` for each label.
    pub fn hi_sizes(&self) -> BTreeMap<Label, usize> {
        let mut out = BTreeMap::new();
        for e in self.elements.iter().filter(|e| e.hi) {
            *out.entry(e.lambda).or_insert(0) += 1;
        }
        out
    }

    pub fn conventions(&self) -> Conventions {
        Conventions::with(self.half, self.bracketing)
    }
}

/// The canonical basis under the fixed conventions, by the triangular solve.
pub fn canonical_basis(n: usize) -> Result<BasedModuleData, Sl2Error> {
    let psi = BarInvolution::new(n)?;
    canonical_basis_with(&psi, Half::Positive, Bracketing::OneThenZero)
}

/// The canonical basis for an explicit choice of half-lattice and bracketing orientation.
///
/// Within each weight space the coefficients are found in decreasing key order: if
/// `b_a = Σ_u p_u x_u` is `Ψ`-fixed then `p_t - bar(p_t) = Σ_{u ≠ t} bar(p_u)·[x_t]Ψ(x_u)`,
/// whose right side only involves strings of larger key; `p_t` is its part in the chosen half.
/// Solving every such equation is exactly the condition `Ψ(b_a) = b_a`.
pub fn canonical_basis_with(
    psi: &BarInvolution,
    half: Half,
    bracketing: Bracketing,
) -> Result<BasedModuleData, Sl2Error> {
    psi.check_triangular()?;
    let n = psi.len();
    let mut vectors = Vec::with_capacity(1 << n);
    for a in WeightString::all(n) {
        let mut lower: Vec<WeightString> = WeightString::of_weight(n, a.weight())
            .into_iter()
            .filter(|t| t.key() < a.key())
            .collect();
        lower.sort_by(|x, y| y.key().cmp(&x.key()).then(x.cmp(y)));
        let mut p: BTreeMap<WeightString, LaurentPoly> = BTreeMap::from([(a, LaurentPoly::one())]);
        // obstruction[t] accumulates Σ_u bar(p_u)·[x_t]Ψ(x_u) over the coefficients fixed so far
        let mut obstruction: BTreeMap<WeightString, LaurentPoly> = BTreeMap::new();
        let push = |u: WeightString, pu: &LaurentPoly, obstruction: &mut BTreeMap<WeightString, LaurentPoly>| {
            let bar = pu.bar();
            for (t, r) in psi.image(u).terms() {
                if *t != u {
                    *obstruction.entry(*t).or_insert_with(LaurentPoly::zero) += &(r * &bar);
                }
            }
        };
        push(a, &LaurentPoly::one(), &mut obstruction);
        for t in lower {
            let q = obstruction.remove(&t).unwrap_or_else(LaurentPoly::zero);
            if !q.is_bar_antisymmetric() {
                return Err(Sl2Error::Triangularity {
                    string: a.to_string(),
                    detail: format!("obstruction {q} at x_{t} is not bar-antisymmetric"),
                });
            }
            let pt = match half {
                Half::Positive => q.positive_part(),
                Half::Negative => q.negative_part(),
            };
            if !pt.is_zero() {
                push(t, &pt, &mut obstruction);
                p.insert(t, pt);
            }
        }
        vectors.push(TensorVector::from_terms(n, p));
    }
    Ok(BasedModuleData::new(n, vectors, half, bracketing))
}

/// The same basis built one tensor factor at a time, for lengths where the triangular solve
/// is slow.
///
/// `Ψ(b ⊗ x_0) = b ⊗ x_0` and `Ψ(b ⊗ x_1) = b ⊗ x_1 + c·F(b) ⊗ x_0`. Writing
/// `F(b) = Σ f_{b'} b'` (with bar-invariant `f`), the element
/// `b ⊗ x_1 + Σ p_{b'} b' ⊗ x_0` is `Ψ`-fixed iff `p - bar(p) = c·f`, so `p` is the
/// `v·Z[v]` part of `c·f`. The result lies in `x_{a1} + v·L`, which pins it down uniquely.
pub fn canonical_basis_by_tensoring(n: usize) -> Result<BasedModuleData, Sl2Error> {
    let c = quasi_r_coefficient()?;
    let x0 = TensorVector::basis(WeightString::from_bits(&[0]));
    let x1 = TensorVector::basis(WeightString::from_bits(&[1]));
    let mut prev = vec![TensorVector::basis(WeightString::empty())];
    for len in 1..=n {
        let mut next = vec![TensorVector::zero(len); 1 << len];
        let refs: Vec<&TensorVector> = prev.iter().collect();
        for (code, b) in prev.iter().enumerate() {
            let a = WeightString::new(len - 1, code as u32);
            next[a.push(0).code() as usize] = b.tensor(&x0);
            let mut y = b.tensor(&x1);
            for (t, f) in peel(&refs, &act_f(b)).terms() {
                let cf = &c * f;
                if !cf.is_bar_antisymmetric() {
                    return Err(Sl2Error::Triangularity {
                        string: a.push(1).to_string(),
                        detail: format!("coordinate {f} of F(b_{a}) at b_{t} is not bar-invariant"),
                    });
                }
                y.add_scaled(&prev[t.code() as usize].tensor(&x0), &cf.positive_part());
            }
            next[a.push(1).code() as usize] = y;
        }
        prev = next;
    }
    Ok(BasedModuleData::new(n, prev, Half::Positive, Bracketing::OneThenZero))
}
