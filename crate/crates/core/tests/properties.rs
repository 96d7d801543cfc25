use cellcat::linalg::Matrix;
use cellcat::ring::quantum_int;
use cellcat::sl2::{BarInvolution, TensorVector, WeightString};
use cellcat::tl::{enumerate_diagrams, half_diagrams, TLDiagram, TLMorphism};
use cellcat::{DeltaPoly, LaurentMatrix, LaurentPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -20i64..=20), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn delta_poly() -> impl Strategy<Value = DeltaPoly> {
    prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| DeltaPoly::from_i64s(&c))
}

/// A random diagram `n -> m`, as an index into the enumeration.
fn diagram(n: usize, m: usize) -> impl Strategy<Value = TLDiagram> {
    let all = enumerate_diagrams(n, m);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// A random linear combination of up to three diagrams `n -> m`.
fn morphism(n: usize, m: usize) -> impl Strategy<Value = TLMorphism> {
    prop::collection::vec((diagram(n, m), delta_poly()), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(TLMorphism::zero(n, m), |acc, (d, c)| {
            acc.add(&TLMorphism::from_term(d, c)).unwrap()
        })
    })
}

/// Objects `(n, m, p, q)` with every consecutive pair of matching parity.
fn objects() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0usize..=5, 0usize..=5, 0usize..=5, 0usize..=5)
        .prop_filter("parity", |(n, m, p, q)| (n + m) % 2 == 0 && (m + p) % 2 == 0 && (p + q) % 2 == 0)
}

proptest! {
    #[test]
    fn bar_is_an_involutive_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn retract_inverts_embed(d in delta_poly()) {
        prop_assert_eq!(DeltaPoly::retract(&d.embed()).unwrap(), d);
    }

    #[test]
    fn symmetric_combinations_lie_in_the_delta_subring(c0 in -20i64..=20, cs in prop::collection::vec(-20i64..=20, 0..6)) {
        let mut terms = vec![(0, BigInt::from(c0))];
        for (k, c) in cs.iter().enumerate() {
            let e = k as i32 + 1;
            terms.push((e, BigInt::from(*c)));
            terms.push((-e, BigInt::from(*c)));
        }
        let a = LaurentPoly::from_terms(terms);
        prop_assert!(a.is_bar_symmetric());
        prop_assert_eq!(DeltaPoly::retract(&a).unwrap().embed(), a);
    }

    #[test]
    fn asymmetric_polynomials_do_not_retract(a in laurent()) {
        prop_assert_eq!(DeltaPoly::retract(&a).is_ok(), a.is_bar_symmetric());
    }

    #[test]
    fn compose_is_associative(
        (f, g, h) in objects().prop_flat_map(|(n, m, p, q)| (morphism(n, m), morphism(m, p), morphism(p, q))),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_an_anti_automorphism(
        (f, g) in objects().prop_flat_map(|(n, m, p, _)| (morphism(n, m), morphism(m, p))),
    ) {
        prop_assert_eq!(f.star().star(), f.clone());
        prop_assert_eq!(f.compose(&g).unwrap().star(), g.star().compose(&f.star()).unwrap());
    }

    #[test]
    fn interchange_law(
        (f, f2, g, g2) in (objects(), objects())
            .prop_filter("fits in six strands", |((n, m, p, _), (n2, m2, p2, _))| n + n2 <= 6 && m + m2 <= 6 && p + p2 <= 6)
            .prop_flat_map(|((n, m, p, _), (n2, m2, p2, _))| {
                (morphism(n, m), morphism(m, p), morphism(n2, m2), morphism(m2, p2))
            }),
    ) {
        let left = f.tensor(&g).compose(&f2.tensor(&g2)).unwrap();
        let right = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(laurent(), 3), 1..4)) {
        let m = LaurentMatrix::from_rows(rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for k in m.nullspace() {
            prop_assert!(m.mul_vec(&k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(prop::collection::vec(delta_poly(), 3), 3),
        b in prop::collection::vec(prop::collection::vec(delta_poly(), 3), 3),
    ) {
        let a = Matrix::from_rows(a);
        let b = Matrix::from_rows(b);
        prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
    }

    #[test]
    fn psi_squares_to_identity(
        n in 0usize..=6,
        terms in prop::collection::vec((any::<u32>(), laurent()), 0..5),
    ) {
        let psi = BarInvolution::new(n).unwrap();
        let mask = (1u32 << n) - 1;
        let x = TensorVector::from_terms(n, terms.into_iter().map(|(c, f)| (WeightString::new(n, c & mask), f)));
        prop_assert_eq!(psi.apply(&psi.apply(&x)), x);
    }
}

#[test]
fn quantum_integer_recurrence() {
    let delta = DeltaPoly::delta().embed();
    for m in 1..=20 {
        let next: LaurentPoly = quantum_int(m + 1);
        let expected = &(&delta * &quantum_int(m)) - &quantum_int(m - 1);
        assert_eq!(next, expected, "m = {m}");
    }
}

#[test]
fn factorization_is_a_bijection() {
    for n in 0..=6 {
        for m in 0..=6 {
            let all = enumerate_diagrams(n, m);
            let cells: usize = (0..=n.min(m))
                .map(|t| half_diagrams(n, t).len() * half_diagrams(m, t).len())
                .sum();
            assert_eq!(cells, all.len(), "({n}, {m})");
            for d in &all {
                let (s, t) = d.factor_through();
                let (glued, loops) = s.diagram().compose(&t.diagram().star()).unwrap();
                assert_eq!((&glued, loops), (d, 0));
            }
        }
    }
}

#[test]
fn identity_morphisms_are_units() {
    for n in 0..=4 {
        for d in enumerate_diagrams(n, n) {
            let f = TLMorphism::from_diagram(d);
            assert_eq!(TLMorphism::identity(n).compose(&f).unwrap(), f);
            assert_eq!(f.compose(&TLMorphism::identity(n)).unwrap(), f);
        }
    }
    assert!(LaurentPoly::one().bar().is_one());
}
