mod common;

use std::time::Instant;

use common::{close, pol, root_of_unity, simples, tube};
use num_complex::Complex64;
use proptest::prelude::*;
use tubecalc::monoidal::quantum_dimension;
use tubecalc::rep::{decompose, from_halfbraiding, hom, regular, trivial, HalfBraidingData};
use tubecalc::tube::TubeAlgebra;
use tubecalc::{Cyclotomic, MpComplex, Scalar};

fn dims<S: Scalar>(t: &TubeAlgebra<S>, seed: u64) -> Vec<usize> {
    decompose(t, &regular(t).unwrap(), seed).unwrap().iter().map(|s| s.rep.total_dim()).collect()
}

#[test]
fn regular_representation_grades() {
    let t = tube::<MpComplex>("fib");
    let r = regular(&t).unwrap();
    assert_eq!(r.total_dim(), 7);
    assert_eq!(r.dims(), &[3, 4]);
    assert!(r.module_law_residual(&t).unwrap() <= 1e-40);
    let z2 = tube::<Cyclotomic>("vecz2");
    assert_eq!(regular(&z2).unwrap().total_dim(), 4);
}

#[test]
fn regular_decompositions() {
    for (name, want) in [("vecz2", vec![1, 1, 1, 1]), ("m2", vec![2]), ("semion", vec![1, 1, 1, 1])] {
        let start = Instant::now();
        let t = tube::<Cyclotomic>(name);
        let got = dims(&t, 0);
        assert_eq!(got, want, "{name}");
        assert_eq!(got.iter().map(|d| d * d).sum::<usize>(), t.dim());
        assert!(start.elapsed().as_secs_f64() < 5.0);
    }
    let start = Instant::now();
    let t = tube::<MpComplex>("fib");
    let got = dims(&t, 0);
    assert_eq!(got, vec![1, 1, 1, 2]);
    assert_eq!(got.iter().map(|d| d * d).sum::<usize>(), 7);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn simple_multiplicities_in_the_regular_representation_equal_dimensions() {
    let t = tube::<MpComplex>("fib");
    for s in simples(&t) {
        assert_eq!(s.multiplicity, s.rep.total_dim());
    }
}

#[test]
fn toric_code_twists() {
    let t = tube::<Cyclotomic>("vecz2");
    let twists: Vec<Cyclotomic> = simples(&t).into_iter().map(|s| s.twist).collect();
    let want: Vec<Cyclotomic> = [1, 1, 1, -1].into_iter().map(Cyclotomic::from_i64).collect();
    assert_eq!(twists, want);
}

#[test]
fn fibonacci_twists_and_dimensions() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let twists: Vec<Complex64> = s.iter().map(|s| s.twist.to_c64()).collect();
    let want = [Complex64::new(1.0, 0.0), root_of_unity(5, 2), root_of_unity(5, 3), Complex64::new(1.0, 0.0)];
    for (got, want) in twists.iter().zip(want) {
        assert!(close(*got, want, 1e-15), "{twists:?}");
        assert!((got.norm() - 1.0).abs() < 1e-15);
    }
    let phi = common::phi();
    let qdims: Vec<f64> = s.iter().map(|s| quantum_dimension(&t, &s.rep).unwrap().to_c64().re).collect();
    for (got, want) in qdims.iter().zip([1.0, phi, phi, phi * phi]) {
        assert!((got - want).abs() < 1e-14, "{qdims:?}");
    }
}

#[test]
fn trivial_representation() {
    let z2 = tube::<Cyclotomic>("vecz2");
    let unit = trivial(&z2).unwrap();
    assert_eq!(unit.total_dim(), 1);
    assert_eq!(unit.module_law_residual(&z2).unwrap(), 0.0);

    let t = tube::<MpComplex>("fib");
    let unit = trivial(&t).unwrap();
    assert!(unit.module_law_residual(&t).unwrap() <= 1e-40);
    let s = simples(&t);
    assert_eq!(hom(&unit, &s[0].rep, &pol()).len(), 1);
    assert!(close(s[0].twist.to_c64(), Complex64::new(1.0, 0.0), 1e-30));
    for other in &s[1..] {
        assert!(hom(&unit, &other.rep, &pol()).is_empty());
    }
}

#[test]
fn schur_orthogonality_of_simples() {
    let t = tube::<Cyclotomic>("vecz2");
    let s = simples(&t);
    for (i, m) in s.iter().enumerate() {
        for (j, n) in s.iter().enumerate() {
            assert_eq!(hom(&m.rep, &n.rep, &pol()).len(), usize::from(i == j));
        }
    }
    let f = tube::<MpComplex>("fib");
    let r = regular(&f).unwrap();
    for m in simples(&f) {
        assert_eq!(hom(&r, &m.rep, &pol()).len(), m.rep.total_dim());
    }
}

#[test]
fn intertwiners_commute_with_the_action() {
    let t = tube::<MpComplex>("fib");
    let r = regular(&t).unwrap();
    let m = &simples(&t)[3].rep;
    for x in hom(&r, m, &pol()) {
        for i in 0..t.dim() {
            assert!(x.matmul(r.action(i)).distance(&m.action(i).matmul(&x)) <= 1e-40);
        }
    }
}

#[test]
fn half_braiding_with_negative_sign_is_the_fermion() {
    let t = tube::<Cyclotomic>("vecz2");
    let doc = br#"{"name": "f", "object": {"g": 1}, "sigma": [{"x": "g", "matrix": [["-1"]]}]}"#;
    let hb = HalfBraidingData::load(t.spec(), doc).unwrap();
    let e = from_halfbraiding(&t, &hb).unwrap();
    assert_eq!(e.module_law_residual(&t).unwrap(), 0.0);
    let s = simples(&t);
    let matches: Vec<usize> = (0..s.len()).filter(|&i| !hom(&e, &s[i].rep, &pol()).is_empty()).collect();
    assert_eq!(matches, vec![3]);
    assert_eq!(s[3].twist, Cyclotomic::from_i64(-1));
}

#[test]
fn four_sign_choices_reproduce_every_toric_code_simple() {
    let t = tube::<Cyclotomic>("vecz2");
    let s = simples(&t);
    let mut hit = vec![0; s.len()];
    for object in ["1", "g"] {
        for sign in ["1", "-1"] {
            let doc = format!(r#"{{"object": {{"{object}": 1}}, "sigma": [{{"x": "g", "matrix": [["{sign}"]]}}]}}"#);
            let e = from_halfbraiding(&t, &HalfBraidingData::load(t.spec(), doc.as_bytes()).unwrap()).unwrap();
            for (i, m) in s.iter().enumerate() {
                hit[i] += hom(&e, &m.rep, &pol()).len();
            }
        }
    }
    assert_eq!(hit, vec![1, 1, 1, 1]);
}

#[test]
fn inconsistent_half_braiding_breaks_the_module_law() {
    let t = tube::<Cyclotomic>("vecz2");
    let doc = br#"{"object": {"g": 1}, "sigma": [{"x": "g", "matrix": [["2"]]}]}"#;
    let hb = HalfBraidingData::load(t.spec(), doc).unwrap();
    let e = from_halfbraiding(&t, &hb).unwrap();
    assert!(e.module_law_residual(&t).unwrap() > 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn decomposition_is_seed_independent(seed in any::<u64>(), which in 0usize..3) {
        let t = tube::<Cyclotomic>(["vecz2", "semion", "m2"][which]);
        let a = decompose(&t, &regular(&t).unwrap(), seed).unwrap();
        let b = decompose(&t, &regular(&t).unwrap(), seed.wrapping_add(1)).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.rep.dims(), y.rep.dims());
            prop_assert_eq!(&x.twist, &y.twist);
            prop_assert_eq!(hom(&x.rep, &y.rep, &pol()).len(), 1);
        }
    }

    #[test]
    fn fibonacci_decomposition_is_seed_independent(seed in any::<u64>()) {
        let t = tube::<MpComplex>("fib");
        let a = decompose(&t, &regular(&t).unwrap(), seed).unwrap();
        prop_assert_eq!(a.iter().map(|s| s.rep.total_dim()).collect::<Vec<_>>(), vec![1, 1, 1, 2]);
        for s in &a {
            prop_assert!(s.rep.module_law_residual(&t).unwrap() <= 1e-40);
        }
    }

    #[test]
    fn same_seed_gives_identical_actions(seed in any::<u64>()) {
        let t = tube::<MpComplex>("fib");
        let a = decompose(&t, &regular(&t).unwrap(), seed).unwrap();
        let b = decompose(&t, &regular(&t).unwrap(), seed).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x.rep.actions() == y.rep.actions());
        }
    }
}
