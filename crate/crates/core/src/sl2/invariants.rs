use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use super::canonical::BasedModuleData;
use super::tensor::{act_e, act_f, TensorVector, WeightString};
use super::Sl2Error;
use crate::tl::{enumerate_diagrams, Point, TLDiagram};
use crate::linalg::rank_mod_prime;
use crate::{LaurentMatrix, LaurentPoly};

fn coordinate_rows(vectors: &[TensorVector], space: &[WeightString]) -> LaurentMatrix {
    LaurentMatrix::from_rows(
        vectors
            .iter()
            .map(|x| space.iter().map(|s| x.coefficient(s)).collect())
            .collect(),
    )
}

/// `E(M_{-2})` and `F(M_2)` inside the weight-zero space `M_0` of `V^{⊗n}`.
fn boundary_images(n: usize) -> Vec<TensorVector> {
    let mut out: Vec<TensorVector> = WeightString::of_weight(n, -2)
        .into_iter()
        .map(|s| act_e(&TensorVector::basis(s)))
        .collect();
    out.extend(
        WeightString::of_weight(n, 2)
            .into_iter()
            .map(|s| act_f(&TensorVector::basis(s))),
    );
    out
}

/// The coinvariants `V^{⊗n} / (E·V^{⊗n} + F·V^{⊗n} + (K - 1)·V^{⊗n})`.
///
/// `K - 1` kills nothing but the weight-zero part, so the quotient is `M_0 / (E M_{-2} + F M_2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coinvariants {
    pub n: usize,
    pub weight_zero_dimension: usize,
    pub image_rank: usize,
    pub dimension: usize,
    /// Leading strings of `B[0]`.
    pub b0: Vec<WeightString>,
    /// The images of `B[0]` span the quotient and are independent there.
    pub b0_is_basis: bool,
    /// Every element of `E M_{-2} + F M_2` has zero `B[0]`-coordinates.
    pub image_avoids_b0: bool,
}

pub fn coinvariants(data: &BasedModuleData) -> Coinvariants {
    let n = data.n;
    let space = WeightString::of_weight(n, 0);
    let images = boundary_images(n);
    let image_rank = if images.is_empty() { 0 } else { coordinate_rows(&images, &space).rank() };
    let b0: Vec<WeightString> = data.elements.iter().filter(|e| e.lambda == 0).map(|e| e.leading).collect();
    let mut joint = images.clone();
    joint.extend(b0.iter().map(|a| data.element(a).vector.clone()));
    let joint_rank = if joint.is_empty() { 0 } else { coordinate_rows(&joint, &space).rank() };
    let dimension = space.len() - image_rank;
    let image_avoids_b0 = images.iter().all(|y| {
        let c = data.coordinates(y);
        b0.iter().all(|a| c.coefficient(a).is_zero())
    });
    Coinvariants {
        n,
        weight_zero_dimension: space.len(),
        image_rank,
        dimension,
        b0_is_basis: joint_rank == space.len() && b0.len() == dimension,
        b0,
        image_avoids_b0,
    }
}

/// A basis of the invariants: the joint kernel of `E`, `F` and `K - 1`, computed exactly on
/// the weight-zero space.
pub fn invariants_basis(n: usize) -> Vec<TensorVector> {
    let space = WeightString::of_weight(n, 0);
    if space.is_empty() {
        return Vec::new();
    }
    let up = WeightString::of_weight(n, 2);
    let down = WeightString::of_weight(n, -2);
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    let e_images: Vec<TensorVector> = space.iter().map(|s| act_e(&TensorVector::basis(*s))).collect();
    let f_images: Vec<TensorVector> = space.iter().map(|s| act_f(&TensorVector::basis(*s))).collect();
    for t in &up {
        rows.push(e_images.iter().map(|x| x.coefficient(t)).collect());
    }
    for t in &down {
        rows.push(f_images.iter().map(|x| x.coefficient(t)).collect());
    }
    let kernel = if rows.is_empty() {
        (0..space.len())
            .map(|i| (0..space.len()).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
            .collect()
    } else {
        LaurentMatrix::from_rows(rows).nullspace()
    };
    kernel
        .into_iter()
        .map(|k| TensorVector::from_terms(n, space.iter().copied().zip(k)))
        .collect()
}

const PRIME: u64 = 2_147_483_647;
const POINT: u64 = 2;

/// The dimension of the invariants of `V^{⊗n}`, given `known` invariants already shown to be
/// independent.
///
/// An invariant of weight zero is a vector of `M_0` killed by `E: M_0 -> M_2`, so the
/// dimension is at most `|M_0| - rank(E)`, and specializing `v` can only lower the rank. When
/// `known` meets the bound at `v = 2` modulo a prime the answer is certified; otherwise the
/// exact kernel is computed.
pub fn invariant_dimension(n: usize, known: usize) -> usize {
    let space = WeightString::of_weight(n, 0);
    let up = WeightString::of_weight(n, 2);
    let images: Vec<TensorVector> = space.iter().map(|s| act_e(&TensorVector::basis(*s))).collect();
    let rows: Vec<Vec<u64>> = up
        .iter()
        .map(|t| images.iter().map(|x| x.coefficient(t).evaluate_mod(POINT, PRIME)).collect())
        .collect();
    let bound = space.len() - rank_mod_prime(&rows, PRIME);
    if known == bound {
        known
    } else {
        invariants_basis(n).len()
    }
}

pub fn is_invariant(x: &TensorVector) -> bool {
    act_e(x).is_zero() && act_f(x).is_zero() && x.support().all(|s| s.weight() == 0)
}

/// The invariant of `V ⊗ V`, scaled to have coefficient 1 on the key-maximal string of its
/// support.
pub fn cup_invariant() -> Result<TensorVector, Sl2Error> {
    let basis = invariants_basis(2);
    let [w] = basis.as_slice() else {
        return Err(Sl2Error::Convention(format!("V ⊗ V has {} invariants", basis.len())));
    };
    let top = w
        .support()
        .max_by_key(|s| (s.key(), *s))
        .expect("nonzero invariant");
    let c = w.coefficient(&top);
    w.exact_div(&c)
        .ok_or_else(|| Sl2Error::Convention("cup invariant is not a multiple of a primitive vector".into()))
}

/// Coefficients `u(i, j)` of the cup invariant on the letter pair `(i, j)`.
pub(crate) fn cup_coefficients() -> Result<[[LaurentPoly; 2]; 2], Sl2Error> {
    let w = cup_invariant()?;
    let at = |s: &str| w.coefficient(&s.parse().expect("valid"));
    Ok([[at("00"), at("01")], [at("10"), at("11")]])
}

/// The invariant of `V^{⊗n}` given by a cup diagram `0 -> n`: each cup contributes the
/// normalized invariant of `V ⊗ V` on its two endpoints.
pub fn diagram_to_invariant(d: &TLDiagram) -> Result<TensorVector, Sl2Error> {
    if d.source() != 0 {
        return Err(Sl2Error::NotCupDiagram(d.to_string()));
    }
    let n = d.target();
    let u = cup_coefficients()?;
    let mut cups = Vec::new();
    for (p, q) in d.point_pairs() {
        match (p, q) {
            (Point::Top(i), Point::Top(j)) => cups.push((i.min(j), i.max(j))),
            _ => return Err(Sl2Error::NotCupDiagram(d.to_string())),
        }
    }
    let mut out = TensorVector::zero(n);
    for s in WeightString::all(n) {
        let mut c = LaurentPoly::one();
        for &(i, j) in &cups {
            c = &c * &u[s.bit(i) as usize][s.bit(j) as usize];
            if c.is_zero() {
                break;
            }
        }
        out.add_term(s, c);
    }
    Ok(out)
}

/// Cup-diagram invariants of `V^{⊗n}`, in diagram enumeration order.
pub fn cup_basis(n: usize) -> Result<Vec<(TLDiagram, TensorVector)>, Sl2Error> {
    if n % 2 == 1 {
        return Err(Sl2Error::OddLength(n));
    }
    enumerate_diagrams(0, n)
        .into_iter()
        .map(|d| diagram_to_invariant(&d).map(|w| (d, w)))
        .collect()
}

/// The basis of invariants dual to the images of `B[0]` in the coinvariants.
///
/// The coordinate functional of `b_a` (for `a ∈ B[0]`) vanishes on every `b` with `λ(b) > 0`,
/// hence on `E M + F M`; under the standard pairing it is a vector, which is checked to be
/// invariant. The pairing with `B[0]` is then the identity matrix, also checked.
pub fn dual_canonical_invariants(data: &BasedModuleData) -> Result<Vec<(WeightString, TensorVector)>, Sl2Error> {
    let n = data.n;
    if n % 2 == 1 {
        return Err(Sl2Error::OddLength(n));
    }
    let b0: Vec<WeightString> = data.elements.iter().filter(|e| e.lambda == 0).map(|e| e.leading).collect();
    let mut out = Vec::new();
    for a in &b0 {
        let w = data.coordinate_functional(a);
        if !is_invariant(&w) {
            return Err(Sl2Error::DegeneratePairing(json!({ "n": n, "element": a, "reason": "dual vector is not invariant" }).to_string()));
        }
        for b in &b0 {
            let pairing = data
                .element(b)
                .vector
                .terms()
                .fold(LaurentPoly::zero(), |acc, (s, c)| &acc + &(c * &w.coefficient(s)));
            let expected = if a == b { LaurentPoly::one() } else { LaurentPoly::zero() };
            if pairing != expected {
                return Err(Sl2Error::DegeneratePairing(
                    json!({ "n": n, "dual": a, "element": b, "pairing": pairing.to_string() }).to_string(),
                ));
            }
        }
        out.push((*a, w));
    }
    Ok(out)
}

/// A matched pair `dual canonical = unit · cup diagram`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair {
    pub canonical: WeightString,
    pub diagram: TLDiagram,
    pub sign: i8,
    pub exponent: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizationAttempt {
    /// `identity` compares the dual canonical vectors as computed; `bar` first applies the
    /// coefficient involution `v ↦ v^-1`.
    pub normalization: &'static str,
    pub matched: bool,
    pub pairs: Vec<MatchedPair>,
    pub unmatched: Vec<WeightString>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisComparison {
    pub n: usize,
    pub matched: bool,
    pub attempts: Vec<NormalizationAttempt>,
}

fn attempt(
    normalization: &'static str,
    duals: &[(WeightString, TensorVector)],
    cups: &[(TLDiagram, TensorVector)],
    transform: impl Fn(&TensorVector) -> TensorVector,
) -> NormalizationAttempt {
    let mut used = vec![false; cups.len()];
    let mut pairs = Vec::new();
    let mut unmatched = Vec::new();
    for (a, w) in duals {
        let w = transform(w);
        let hit = cups
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .find_map(|(i, (d, c))| w.unit_ratio(c).map(|u| (i, d, u)));
        match hit {
            Some((i, d, u)) => {
                used[i] = true;
                let (sign, exponent) = u.as_unit().expect("unit");
                pairs.push(MatchedPair {
                    canonical: *a,
                    diagram: d.clone(),
                    sign,
                    exponent,
                });
            }
            None => unmatched.push(*a),
        }
    }
    NormalizationAttempt {
        normalization,
        matched: unmatched.is_empty() && pairs.len() == cups.len(),
        pairs,
        unmatched,
    }
}

/// Looks for a bijection between the dual canonical invariants and the cup-diagram
/// invariants with every pair agreeing up to a unit `±v^k`. Both the computed normalization
/// and its image under `v ↦ v^-1` are tried and reported.
pub fn compare_bases(data: &BasedModuleData) -> Result<BasisComparison, Sl2Error> {
    let duals = dual_canonical_invariants(data)?;
    let cups = cup_basis(data.n)?;
    let attempts = vec![
        attempt("identity", &duals, &cups, TensorVector::clone),
        attempt("bar", &duals, &cups, TensorVector::bar_coefficients),
    ];
    Ok(BasisComparison {
        n: data.n,
        matched: attempts.iter().any(|a| a.matched),
        attempts,
    })
}
