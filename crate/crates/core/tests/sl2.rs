use std::collections::{BTreeMap, BTreeSet};

use cellcat::cellular::{CellDatum, Poset, Restriction, Verifier, WithPoset};
use cellcat::sl2::*;
use cellcat::tl::enumerate_diagrams;
use cellcat::LaurentPoly;
use num_traits::{One, Zero};

fn ws(s: &str) -> WeightString {
    s.parse().unwrap()
}

fn v(k: i32) -> LaurentPoly {
    LaurentPoly::v_pow(k)
}

fn catalan(k: usize) -> usize {
    let mut c = vec![1usize];
    for i in 1..=k {
        c.push((0..i).map(|j| c[j] * c[i - 1 - j]).sum());
    }
    c[k]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplicity of `V_λ` in `V^{⊗n}` from the weight multiset: `#wt(λ) - #wt(λ + 2)`.
fn multiplicity(n: usize, lambda: usize) -> usize {
    if lambda > n || (n - lambda) % 2 == 1 {
        return 0;
    }
    let ones = (n - lambda) / 2;
    binomial(n, ones) - if ones == 0 { 0 } else { binomial(n, ones - 1) }
}

#[test]
fn representation_relations() {
    let q = &v(1) - &v(-1);
    for n in 0..=6 {
        for s in WeightString::all(n) {
            let x = TensorVector::basis(s);
            assert_eq!(act_k(&act_e(&x), 1), act_e(&act_k(&x, 1)).scale(&v(2)), "KE at {s}");
            assert_eq!(act_k(&act_f(&x), 1), act_f(&act_k(&x, 1)).scale(&v(-2)), "KF at {s}");
            let commutator = act_e(&act_f(&x)).sub(&act_f(&act_e(&x)));
            let k = act_k(&x, 1).sub(&act_k(&x, -1));
            assert_eq!(Some(commutator), k.exact_div(&q), "[E,F] at {s}");
            assert_eq!(act_k(&act_k(&x, 1), -1), x);
        }
    }
}

#[test]
fn psi_is_a_semilinear_involution() {
    for n in 0..=6 {
        let psi = BarInvolution::new(n).unwrap();
        for s in WeightString::all(n) {
            let x = TensorVector::basis(s);
            assert_eq!(psi.apply(&psi.apply(&x)), x);
            let f = &v(3) + &LaurentPoly::from_i64(-2);
            assert_eq!(psi.apply(&x.scale(&f)), psi.apply(&x).scale(&f.bar()));
        }
    }
}

#[test]
fn canonical_basis_is_unitriangular_and_fixed() {
    for n in 0..=8 {
        let data = canonical_basis(n).unwrap();
        assert_eq!(data.elements.len(), 1 << n);
        assert!(data.is_unitriangular(), "n = {n}");
        assert!(data.is_psi_fixed(&BarInvolution::new(n).unwrap()), "n = {n}");
    }
}

fn lambda_of(data: &BasedModuleData) -> BTreeMap<WeightString, usize> {
    data.elements.iter().map(|e| (e.leading, e.lambda)).collect()
}

/// For every `b`, `E b` and `F b` only involve `b'` with `λ(b') >= λ(b)`.
fn filtration_holds(data: &BasedModuleData) -> bool {
    let lambda = lambda_of(data);
    data.elements.iter().all(|e| {
        [act_e(&e.vector), act_f(&e.vector), act_k(&e.vector, 1)]
            .iter()
            .all(|y| data.coordinates(y).support().all(|a| lambda[&a] >= e.lambda))
    })
}

#[test]
fn filtration_and_hi_characterization() {
    for n in 0..=6 {
        let data = canonical_basis(n).unwrap();
        assert!(filtration_holds(&data), "n = {n}");
        let lambda = lambda_of(&data);
        for e in data.elements.iter().filter(|e| e.hi) {
            let c = data.coordinates(&act_e(&e.vector));
            assert!(c.support().all(|a| lambda[&a] > e.lambda), "hi element {} at n = {n}", e.leading);
        }
        for e in data.elements.iter().filter(|e| e.lambda == 0) {
            assert!(e.hi && e.lo);
        }
    }
}

#[test]
fn conventions_are_forced() {
    let mut passing = Vec::new();
    for half in [Half::Positive, Half::Negative] {
        for bracketing in [Bracketing::OneThenZero, Bracketing::ZeroThenOne] {
            let ok = (0..=5).all(|n| {
                let psi = BarInvolution::new(n).unwrap();
                canonical_basis_with(&psi, half, bracketing).is_ok_and(|d| filtration_holds(&d))
            });
            if ok {
                passing.push((half, bracketing));
            }
        }
    }
    assert_eq!(passing, vec![(Half::Positive, Bracketing::OneThenZero)]);
    let c = Conventions::fixed();
    assert_eq!(c.half_lattice, Half::Positive);
    assert_eq!(quasi_r_coefficient().unwrap(), &v(1) - &v(-1));
}

#[test]
fn dimension_accounting_and_partition_sizes() {
    for n in 0..=8 {
        let data = canonical_basis(n).unwrap();
        let total: usize = data.hi_sizes().iter().map(|(l, k)| k * (l + 1)).sum();
        assert_eq!(total, 1 << n);
        for (l, k) in data.hi_sizes() {
            assert_eq!(k, multiplicity(n, l), "n = {n}, λ = {l}");
        }
    }
    let data = canonical_basis(4).unwrap();
    assert_eq!(data.partition_sizes(), BTreeMap::from([(0, 2), (2, 9), (4, 5)]));
    assert_eq!(data.hi_sizes(), BTreeMap::from([(0, 2), (2, 3), (4, 1)]));
    let b2 = canonical_basis(2).unwrap();
    assert_eq!(b2.partition_sizes(), BTreeMap::from([(0, 1), (2, 3)]));
    let b0 = canonical_basis(0).unwrap();
    assert_eq!(b0.elements.len(), 1);
    assert_eq!(b0.elements[0].lambda, 0);
}

#[test]
fn coinvariants_have_catalan_dimension() {
    for n in (0..=8).step_by(2) {
        let c = coinvariants(&canonical_basis(n).unwrap());
        assert_eq!(c.dimension, catalan(n / 2), "n = {n}");
        assert_eq!(c.b0.len(), catalan(n / 2));
        assert!(c.b0_is_basis && c.image_avoids_b0, "n = {n}");
    }
}

#[test]
fn invariants() {
    let cup = cup_invariant().unwrap();
    assert_eq!(cup, TensorVector::basis(ws("01")).add(&TensorVector::from_term(ws("10"), -v(-1))));
    assert!(is_invariant(&cup));
    for n in (0..=8).step_by(2) {
        assert_eq!(invariants_basis(n).len(), catalan(n / 2));
        for (_, w) in cup_basis(n).unwrap() {
            assert!(is_invariant(&w));
        }
    }
    assert!(matches!(cup_basis(3), Err(Sl2Error::OddLength(3))));
}

#[test]
fn dual_canonical_basis_matches_cups() {
    for (n, pairs) in [(2, 1), (4, 2), (6, 5)] {
        let report = compare_bases(&canonical_basis(n).unwrap()).unwrap();
        assert!(report.matched, "n = {n}");
        let identity = &report.attempts[0];
        assert_eq!(identity.normalization, "identity");
        assert!(identity.matched);
        assert_eq!(identity.pairs.len(), pairs);
    }
}

#[test]
fn tensoring_agrees_beyond_eight() {
    let solved = canonical_basis(10).unwrap();
    let built = canonical_basis_by_tensoring(10).unwrap();
    assert!(solved.elements == built.elements);
}

#[test]
fn hom_spaces_have_catalan_dimension() {
    let mut bases = BTreeMap::new();
    for total in (0..=12).step_by(2) {
        bases.insert(total, canonical_basis_by_tensoring(total).unwrap());
    }
    for total in (0..=12).step_by(2) {
        for a in 0..=total {
            let maps = hom_space_basis(&bases[&total], a, total - a).unwrap();
            assert_eq!(maps.len(), catalan(total / 2), "({a}, {})", total - a);
            assert_eq!(maps.len(), enumerate_diagrams(a, total - a).len());
        }
    }
}

#[test]
fn small_hom_spaces() {
    let maps = hom_space_basis(&canonical_basis(2).unwrap(), 1, 1).unwrap();
    let [(_, g)] = maps.as_slice() else { panic!("Hom(V, V) is one-dimensional") };
    let id = Sl2Map::identity(1);
    let ratio = g.entry(&ws("0"), &ws("0"));
    assert!(ratio.as_unit().is_some());
    assert_eq!(g, &id.scale(&ratio));
    assert_eq!(hom_space_basis(&canonical_basis(4).unwrap(), 2, 2).unwrap().len(), 2);
    let maps = hom_space_basis(&canonical_basis(0).unwrap(), 0, 0).unwrap();
    assert_eq!(maps.len(), 1);
    assert!(maps[0].1.entry(&WeightString::empty(), &WeightString::empty()).is_one());
}

#[test]
fn datum_passes_all_axioms() {
    let datum = build_sl2_cell_datum(4).unwrap();
    assert!(datum.counting_checks().iter().all(|c| c.holds));
    let c22 = datum.counting_checks().iter().find(|c| (c.n, c.m) == (2, 2)).unwrap();
    assert_eq!((c22.b0, c22.sum), (2, 2));
    assert_eq!(datum.cells(2, 0), vec![ws("10")]);
    assert_eq!(datum.cells(2, 2), vec![ws("00")]);
    let verifier = Verifier::new(&datum);
    for r in verifier.verify_all() {
        assert!(r.passed(), "{} at {:?}: {:?}", r.axiom, r.objects, r.witness);
    }
    let inferred = verifier.infer_cell_order().unwrap();
    assert!(inferred.is_acyclic());
    let order = inferred.order.unwrap();
    assert!(order.is_refined_by(datum.poset()));
    assert!(order.lt(0, 2) && order.lt(2, 4) && order.lt(1, 3));
}

#[test]
fn reversed_order_fails_c3() {
    let datum = build_sl2_cell_datum(2).unwrap();
    let reversed = WithPoset::reversed(&datum);
    let verifier = Verifier::new(&reversed);
    let failure = verifier.verify_all().into_iter().find(|r| !r.passed()).unwrap();
    assert_eq!(failure.axiom, "C-3");
    assert!(failure.witness.is_some());
    let parity = Poset::new(0..=2, [(0, 2)]).unwrap();
    let split = WithPoset::new(&datum, parity);
    assert!(Verifier::new(&split).verify_all().iter().all(|r| r.passed()));
}

#[test]
fn star_is_an_anti_involution() {
    let datum = build_sl2_cell_datum(3).unwrap();
    for n in 0..=3 {
        for m in 0..=3 {
            let maps: Vec<&Sl2Map> = datum.hom_maps(n, m).values().collect();
            for f in &maps {
                assert_eq!(f.star().star(), **f);
                assert!(f.is_equivariant());
                for p in 0..=3 {
                    for g in datum.hom_maps(m, p).values() {
                        assert_eq!(f.compose(g).star(), g.star().compose(&f.star()));
                    }
                }
            }
        }
    }
}

#[test]
fn bend_of_the_cup_is_the_identity_up_to_a_unit() {
    let g = bend(&cup_invariant().unwrap(), 1, 1).unwrap();
    let u = g.entry(&ws("0"), &ws("0"));
    assert!(u.as_unit().is_some());
    assert_eq!(g.entry(&ws("1"), &ws("1")), u);
    assert!(g.entry(&ws("0"), &ws("1")).is_zero());
}

#[test]
fn endomorphism_algebras_are_cellular() {
    let datum = build_sl2_cell_datum(4).unwrap();
    for n in 0..=4 {
        let one = Restriction::new(&datum, vec![n]);
        assert!(Verifier::new(&one).verify_all().iter().all(|r| r.passed()), "End({n})");
    }
}

/// `a' ≺ a` is the transitive closure of "`x_{a'}` occurs in `Ψ(x_a) - x_a`".
#[test]
fn supports_stay_below_in_the_psi_order() {
    for n in 0..=6 {
        let psi = BarInvolution::new(n).unwrap();
        let data = canonical_basis(n).unwrap();
        for e in &data.elements {
            let mut below = BTreeSet::from([e.leading]);
            let mut frontier = vec![e.leading];
            while let Some(u) = frontier.pop() {
                for t in psi.image(u).support() {
                    if below.insert(t) {
                        frontier.push(t);
                    }
                }
            }
            assert!(e.vector.support().all(|t| below.contains(&t)), "b_{}", e.leading);
        }
    }
}
