use std::collections::BTreeSet;

use cellcat::cellular::{
    verify_cellular_functor, CellDatum, IdentityStar, Restriction, SplitDatum, TrivialDatum, Verifier,
    WithPoset,
};
use cellcat::linalg::Matrix;
use cellcat::tl::{half_diagrams, tl_cell_datum, TLMorphism, TlCellDatum};
use cellcat::{DeltaMatrix, DeltaPoly};
use num_traits::One;

fn d(c: &[i64]) -> DeltaPoly {
    DeltaPoly::from_i64s(c)
}

fn delta_matrix(rows: Vec<Vec<DeltaPoly>>) -> DeltaMatrix {
    Matrix::from_rows(rows)
}

#[test]
fn c1_counts() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    let r = v.verify_c1(2, 2);
    assert!(r.passed());
    assert_eq!((r.cardinality, r.dimension, r.rank), (Some(2), Some(2), Some(2)));
    let r = v.verify_c1(4, 2);
    assert!(r.passed());
    assert_eq!(r.cardinality, Some(5));
    let r = v.verify_c1(1, 2);
    assert!(r.passed());
    assert_eq!(r.cardinality, Some(0));
}

#[test]
fn trivial_and_split_data_pass() {
    let t = TrivialDatum::new();
    assert!(Verifier::new(&t).verify_all().iter().all(|r| r.passed()));
    let s = SplitDatum::new(3);
    let v = Verifier::new(&s);
    assert!(v.verify_all().iter().all(|r| r.passed()));
    let inferred = v.infer_cell_order().unwrap();
    assert!(inferred.leakage.is_empty());
    assert!(inferred.is_acyclic());
}

#[test]
fn c2_reflection_and_identity_star() {
    let datum = tl_cell_datum(5);
    let v = Verifier::new(&datum);
    for n in 0..=5 {
        for m in 0..=5 {
            assert!(v.verify_c2(n, m).passed(), "C-2 at ({n},{m})");
        }
    }
    let bad = IdentityStar::new(&datum);
    let vb = Verifier::new(&bad);
    assert!(vb.verify_c2(2, 2).passed());
    let r = vb.verify_c2(3, 3);
    assert!(!r.passed());
    assert!(r.witness.is_some());
}

#[test]
fn c3_tables_and_reversed_order() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    for p in 0..=4 {
        for n in 0..=4 {
            for m in 0..=4 {
                assert!(v.verify_c3(p, n, m).passed(), "C-3 at ({p},{n},{m})");
            }
        }
    }
    let e1 = TLMorphism::generator_e(2, 1).unwrap();
    let r = v.extract_r(&e1, 2, 2, 2, 0).unwrap();
    assert_eq!(r, delta_matrix(vec![vec![DeltaPoly::delta()]]));
    for n in 0..=4 {
        for t in (n % 2..=n).step_by(2) {
            let r = v.extract_r(&TLMorphism::identity(n), n, n, n, t).unwrap();
            assert_eq!(r, DeltaMatrix::identity(half_diagrams(n, t).len()));
        }
    }

    let reversed = WithPoset::reversed(&datum);
    let vr = Verifier::new(&reversed);
    let failures: Vec<_> = (0..=3)
        .flat_map(|p| (0..=3).flat_map(move |n| (0..=3).map(move |m| (p, n, m))))
        .map(|(p, n, m)| vr.verify_c3(p, n, m))
        .filter(|r| !r.passed())
        .collect();
    assert!(!failures.is_empty());
    assert!(failures[0].witness.is_some());
}

#[test]
fn gram_forms() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    let g = v.bilinear_form(2, 0).unwrap();
    assert_eq!(g.matrix, delta_matrix(vec![vec![DeltaPoly::delta()]]));
    assert_eq!(g.determinant(), DeltaPoly::delta());
    let g = v.bilinear_form(3, 1).unwrap();
    assert_eq!(
        g.matrix,
        delta_matrix(vec![vec![d(&[0, 1]), d(&[1])], vec![d(&[1]), d(&[0, 1])]])
    );
    assert_eq!(g.determinant(), d(&[-1, 0, 1]));
    for n in 0..=4 {
        let g = v.bilinear_form(n, n).unwrap();
        assert_eq!(g.determinant(), DeltaPoly::one());
        for t in (n % 2..=n).step_by(2) {
            assert!(v.bilinear_form(n, t).unwrap().matrix.is_symmetric());
        }
    }
}

#[test]
fn cell_modules() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    let e1 = TLMorphism::generator_e(3, 1).unwrap();
    let module = v.cell_module(3, 1).unwrap();
    assert_eq!(module.basis.len(), 2);
    let r = v.extract_r(&e1, 3, 3, 3, 1).unwrap();
    assert_eq!(r.rank(), 1);
    let trace = r.get(0, 0) + r.get(1, 1);
    assert_eq!(trace, DeltaPoly::delta());
    let r = v.extract_r(&TLMorphism::generator_e(2, 1).unwrap(), 2, 2, 2, 2).unwrap();
    assert_eq!(r, DeltaMatrix::zeros(1, 1));
    for n in 0..=4 {
        for t in (n % 2..=n).step_by(2) {
            assert!(v.cell_module(n, t).is_ok(), "multiplicativity at ({n},{t})");
        }
    }
}

#[test]
fn ideals_and_rho() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    let zero = BTreeSet::from([0]);
    let span = v.ideal_span(&zero, 2, 2).unwrap();
    assert_eq!(span.dimension, 1);
    assert!(span.two_sided);
    assert_eq!(v.ideal_span(&BTreeSet::new(), 2, 2).unwrap().dimension, 0);
    let all: BTreeSet<usize> = (0..=4).collect();
    assert_eq!(v.ideal_span(&all, 3, 3).unwrap().dimension, 5);
    assert!(v.ideal_span(&BTreeSet::from([2]), 2, 2).is_err());

    let rho = v.rho_functor(2, &zero).unwrap();
    assert!(rho.passed());
    let module = &rho.modules[&2];
    assert_eq!(module.members.len(), 1);
    let e1_action = module
        .action
        .iter()
        .find(|a| a.morphism["label"] == 0)
        .unwrap();
    assert_eq!(e1_action.matrix, delta_matrix(vec![vec![DeltaPoly::delta()]]));

    let regular = v.rho_functor(3, &all).unwrap();
    assert_eq!(regular.modules[&3].members.len(), 5);
    let nat = v.rho_naturality(2, &zero, &all).unwrap();
    assert!(nat.commute);
}

#[test]
fn inferred_order_is_compatible() {
    let datum = tl_cell_datum(4);
    let v = Verifier::new(&datum);
    let inferred = v.infer_cell_order().unwrap();
    assert!(inferred.is_acyclic());
    assert!(inferred.leakage.iter().all(|&(from, to)| to < from));
    assert!(inferred.order.as_ref().unwrap().is_refined_by(datum.poset()));
}

#[test]
fn functors() {
    let small = tl_cell_datum(3);
    let big = tl_cell_datum(4);
    let vs = Verifier::new(&small);
    let vb = Verifier::new(&big);
    let r = verify_cellular_functor(|n| n, |f: &TLMorphism, _, _| f.clone(), |l| l, &vs, &vs);
    assert!(r.passed());
    let id1 = TLMorphism::identity(1);
    let r = verify_cellular_functor(|n| n + 1, |f: &TLMorphism, _, _| f.tensor(&id1), |l| l + 1, &vs, &vb);
    assert!(r.passed());
    let r = verify_cellular_functor(|n| n, |f: &TLMorphism, _, _| f.clone(), |_| 4, &vs, &vb);
    assert!(r.passed());
    let r = verify_cellular_functor(|n| n, |f: &TLMorphism, _, _| f.clone(), |l| 3 - l, &vs, &vb);
    assert!(!r.passed() && !r.order_preserving);
}

#[test]
fn endomorphism_algebras_are_cellular() {
    let datum = tl_cell_datum(4);
    for n in 0..=4 {
        let one = Restriction::new(&datum, vec![n]);
        assert!(Verifier::new(&one).verify_all().iter().all(|r| r.passed()), "End({n})");
    }
}

#[test]
fn cell_morphism_is_factorization_inverse() {
    let datum = TlCellDatum::new(4);
    for n in 0..=4 {
        for m in 0..=4 {
            for dgm in cellcat::tl::enumerate_diagrams(n, m) {
                let (s, t) = dgm.factor_through();
                let c = datum.cell_morphism(s.through(), &s, &t);
                assert_eq!(c, TLMorphism::from_diagram(dgm.clone()));
            }
        }
    }
}
