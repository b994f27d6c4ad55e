mod common;

use std::time::Instant;

use common::{close, pol, tube};
use num_traits::Zero;
use proptest::prelude::*;
use tubecalc::tube::{TubeAlgebra, TubeElement};
use tubecalc::{Cyclotomic, MpComplex, Scalar};

fn element<S: Scalar>(t: &TubeAlgebra<S>, coeffs: &[i64]) -> TubeElement<S> {
    TubeElement { coeffs: (0..t.dim()).map(|i| S::from_i64(coeffs[i % coeffs.len()])).collect() }
}

fn index<S: Scalar>(t: &TubeAlgebra<S>, a: &str, b: &str, x: &str) -> usize {
    let spec = t.spec();
    let (a, b, x) = (spec.label(a).unwrap(), spec.label(b).unwrap(), spec.label(x).unwrap());
    t.block(a, b, x).expect("nonzero block").0
}

fn block_sizes<S: Scalar>(t: &TubeAlgebra<S>) -> Vec<usize> {
    let spec = t.spec();
    let mut sizes = Vec::new();
    for &a in t.labels() {
        for &b in t.labels() {
            let n: usize = (0..spec.num_simples()).filter_map(|x| t.block(a, b, x)).map(|(_, d)| d).sum();
            if n > 0 {
                sizes.push(n);
            }
        }
    }
    sizes
}

#[test]
fn tube_algebra_dimensions() {
    for (name, want) in [("vecz2", 4), ("semion", 4), ("m2", 4)] {
        let start = Instant::now();
        let t = tube::<Cyclotomic>(name);
        assert_eq!(t.dim(), want, "{name}");
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }
    let start = Instant::now();
    let t = tube::<MpComplex>("fib");
    assert_eq!(t.dim(), 7);
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(block_sizes(&t), vec![2, 1, 1, 3]);
}

#[test]
fn matrix_fixture_has_one_element_per_grade_pair() {
    let t = tube::<Cyclotomic>("m2");
    assert_eq!(t.labels().len(), 2);
    assert_eq!(block_sizes(&t), vec![1, 1, 1, 1]);
}

#[test]
fn vecz2_welding_is_the_group_law_on_loops() {
    let t = tube::<Cyclotomic>("vecz2");
    let gg = t.basis_element(index(&t, "g", "g", "g"));
    let ge = t.basis_element(index(&t, "g", "g", "1"));
    assert_eq!(t.weld(&gg, &gg).unwrap(), ge);
}

#[test]
fn vecz2_twist_is_a_basis_element() {
    let t = tube::<Cyclotomic>("vecz2");
    let g = t.spec().label("g").unwrap();
    assert_eq!(t.twist(g).unwrap(), t.basis_element(index(&t, "g", "g", "g")));
}

#[test]
fn epsilon_of_local_units_is_the_dimension() {
    let t = tube::<MpComplex>("fib");
    for &a in t.labels() {
        let eps = t.epsilon(&t.local_unit(a).unwrap()).unwrap();
        assert!(close(eps.to_c64(), t.spec().qdim(a).to_c64(), 1e-30));
    }
}

#[test]
fn epsilon_vanishes_on_nontrivial_loops() {
    for t in [tube::<MpComplex>("fib"), tube::<MpComplex>("vecz2")] {
        let spec = t.spec();
        for (i, ix) in t.basis().iter().enumerate() {
            if !spec.is_unit(ix.x) {
                assert!(t.epsilon(&t.basis_element(i)).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn local_units_project_onto_their_grades() {
    let t = tube::<MpComplex>("fib");
    for (i, ix) in t.basis().iter().enumerate() {
        let f = t.basis_element(i);
        let left = t.weld(&t.local_unit(ix.a).unwrap(), &f).unwrap();
        let right = t.weld(&f, &t.local_unit(ix.b).unwrap()).unwrap();
        assert!(left.approx_eq(&f, &pol()));
        assert!(right.approx_eq(&f, &pol()));
        for &c in t.labels().iter().filter(|&&c| c != ix.a) {
            assert!(t.weld(&t.local_unit(c).unwrap(), &f).unwrap().is_negligible(&pol()));
        }
    }
}

#[test]
fn fibonacci_welding_is_associative_on_all_basis_triples() {
    let t = tube::<MpComplex>("fib");
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = t.weld(&t.basis_element(i), &t.basis_element(j)).unwrap();
            for k in 0..n {
                let lhs = t.weld(&ij, &t.basis_element(k)).unwrap();
                let jk = t.weld(&t.basis_element(j), &t.basis_element(k)).unwrap();
                let rhs = t.weld(&t.basis_element(i), &jk).unwrap();
                assert!(lhs.approx_eq(&rhs, &pol()), "({i}, {j}, {k})");
            }
        }
    }
}

#[test]
fn twists_are_invertible() {
    let t = tube::<MpComplex>("fib");
    for &a in t.labels() {
        let p = t.weld(&t.twist(a).unwrap(), &t.twist_inverse(a).unwrap()).unwrap();
        assert!(p.approx_eq(&t.local_unit(a).unwrap(), &pol()));
    }
}

#[test]
fn twist_of_the_unit_label_is_its_local_unit() {
    let t = tube::<MpComplex>("fib");
    let one = t.spec().label("1").unwrap();
    let tau = t.spec().label("tau").unwrap();
    assert!(t.twist(one).unwrap().approx_eq(&t.local_unit(one).unwrap(), &pol()));
    assert!(!t.twist(tau).unwrap().sub(&t.local_unit(tau).unwrap()).is_negligible(&pol()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn welding_is_associative_on_random_elements(
        a in prop::collection::vec(-3i64..=3, 1..8),
        b in prop::collection::vec(-3i64..=3, 1..8),
        c in prop::collection::vec(-3i64..=3, 1..8),
    ) {
        let t = tube::<MpComplex>("fib");
        let (f, g, h) = (element(&t, &a), element(&t, &b), element(&t, &c));
        let lhs = t.weld(&t.weld(&f, &g).unwrap(), &h).unwrap();
        let rhs = t.weld(&f, &t.weld(&g, &h).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, &pol()));
    }

    #[test]
    fn epsilon_is_symmetric(a in prop::collection::vec(-3i64..=3, 1..8), b in prop::collection::vec(-3i64..=3, 1..8)) {
        let t = tube::<MpComplex>("fib");
        let (f, g) = (element(&t, &a), element(&t, &b));
        let fg = t.epsilon(&t.weld(&f, &g).unwrap()).unwrap();
        let gf = t.epsilon(&t.weld(&g, &f).unwrap()).unwrap();
        prop_assert!(close(fg.to_c64(), gf.to_c64(), 1e-30));
    }

    #[test]
    fn sharp_reverses_products(a in prop::collection::vec(-3i64..=3, 1..8), b in prop::collection::vec(-3i64..=3, 1..8)) {
        let t = tube::<MpComplex>("fib");
        let (f, g) = (element(&t, &a), element(&t, &b));
        let lhs = t.sharp(&t.weld(&f, &g).unwrap()).unwrap();
        let rhs = t.weld(&t.sharp(&g).unwrap(), &t.sharp(&f).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, &pol()));
    }

    #[test]
    fn twists_are_central(coeffs in prop::collection::vec(-3i64..=3, 1..8), which in 0usize..3) {
        let t = tube::<MpComplex>(["fib", "vecz2", "semion"][which]);
        let f = element(&t, &coeffs);
        let mut lhs = t.zero();
        let mut rhs = t.zero();
        for &a in t.labels() {
            lhs = lhs.add(&t.weld(&t.twist(a).unwrap(), &f).unwrap());
            rhs = rhs.add(&t.weld(&f, &t.twist(a).unwrap()).unwrap());
        }
        prop_assert!(lhs.approx_eq(&rhs, &pol()));
    }

    #[test]
    fn exact_welding_is_associative(
        which in 0usize..3,
        a in prop::collection::vec(-3i64..=3, 1..5),
        b in prop::collection::vec(-3i64..=3, 1..5),
        c in prop::collection::vec(-3i64..=3, 1..5),
    ) {
        let t = tube::<Cyclotomic>(["vecz2", "semion", "m2"][which]);
        let (f, g, h) = (element(&t, &a), element(&t, &b), element(&t, &c));
        let lhs = t.weld(&t.weld(&f, &g).unwrap(), &h).unwrap();
        let rhs = t.weld(&f, &t.weld(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
