mod common;

use common::{close, exact, fixture, float, phi, pol};
use num_complex::Complex64;
use proptest::prelude::*;
use tubecalc::category::CategorySpec;
use tubecalc::{Cyclotomic, Error, MpComplex, Scalar};

const FIXTURES: [&str; 4] = ["vecz2", "semion", "fib", "m2"];

fn c(z: f64) -> Complex64 {
    Complex64::new(z, 0.0)
}

#[test]
fn every_fixture_validates() {
    for name in FIXTURES {
        let report = float(name).validate(&pol());
        assert!(report.passed(), "{name}\n{report}");
    }
    for name in ["vecz2", "semion", "m2"] {
        let report = exact(name).validate(&pol());
        assert!(report.passed(), "{name}\n{report}");
        assert!(report.checks.iter().all(|c| c.max_residual == 0.0), "{name}\n{report}");
    }
}

#[test]
fn fibonacci_pentagon_residual_is_tiny() {
    let report = float("fib").validate(&pol());
    let pentagon = report.check("pentagon").expect("pentagon check");
    assert!(pentagon.max_residual <= 1e-20, "{report}");
}

#[test]
fn fibonacci_simples_and_dimension() {
    let spec = float("fib");
    assert_eq!(spec.num_simples(), 2);
    let tau = spec.label("tau").unwrap();
    assert!(close(spec.qdim(tau).to_c64(), c(phi()), 1e-15));
    assert_eq!(spec.dual(tau), tau);
    assert!(close(spec.global_dimension(0).to_c64(), c(1.0 + phi() * phi()), 1e-14));
}

#[test]
fn fibonacci_f_block_matches_the_standard_solution() {
    let spec = float("fib");
    let (one, tau) = (spec.label("1").unwrap(), spec.label("tau").unwrap());
    let f = |e, g| spec.f(tau, tau, tau, tau, (e, 0, 0), (g, 0, 0)).to_c64();
    let p = phi();
    assert!(close(f(one, one), c(1.0 / p), 1e-15));
    assert!(close(f(one, tau), c(1.0 / p.sqrt()), 1e-15));
    assert!(close(f(tau, one), c(1.0 / p.sqrt()), 1e-15));
    assert!(close(f(tau, tau), c(-1.0 / p), 1e-15));
}

#[test]
fn vecz2_nontrivial_simple_is_invertible() {
    let spec = exact("vecz2");
    let g = spec.label("g").unwrap();
    assert_eq!(*spec.qdim(g), Cyclotomic::from_i64(1));
    assert_eq!(spec.mult(g, g, spec.label("1").unwrap()), 1);
    assert_eq!(spec.mult(g, g, g), 0);
}

#[test]
fn semion_has_negative_dimension() {
    let spec = exact("semion");
    let g = spec.label("g").unwrap();
    assert_eq!(*spec.qdim(g), Cyclotomic::from_i64(-1));
}

#[test]
fn matrix_fixture_has_two_zero_cells() {
    let spec = exact("m2");
    assert_eq!(spec.zero_cells, 2);
    assert_eq!(spec.num_simples(), 4);
    let x = |n: &str| spec.label(n).unwrap();
    assert_eq!(spec.mult(x("x12"), x("x21"), x("x11")), 1);
    assert_eq!(spec.mult(x("x21"), x("x12"), x("x22")), 1);
    assert!(!spec.composable(x("x12"), x("x12")));
    assert_eq!(spec.dual(x("x12")), x("x21"));
    for (_, block) in spec.f_blocks() {
        assert!(block.matrix.row(0).iter().all(|v| *v == Cyclotomic::from_i64(1)));
    }
}

#[test]
fn corrupted_f_symbol_fails_the_pentagon() {
    let spec = CategorySpec::<MpComplex>::load_path(fixture("negative/fib_bad_f.json")).unwrap();
    let report = spec.validate(&pol());
    assert!(!report.passed());
    let pentagon = report.check("pentagon").unwrap();
    assert!(!pentagon.passed);
    assert!(pentagon.max_residual > 0.1, "{report}");
}

#[test]
fn exact_fibonacci_is_rejected() {
    let err = CategorySpec::<Cyclotomic>::load_path(fixture("fib.json")).unwrap_err();
    assert!(matches!(err, Error::Schema(_)), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let err = CategorySpec::<MpComplex>::load_path(fixture("does_not_exist.json")).unwrap_err();
    assert!(matches!(err, Error::Io(_)));
}

#[test]
fn unknown_fields_are_rejected() {
    let doc = br#"{"name": "x", "simples": [], "bogus": 1}"#;
    assert!(CategorySpec::<Cyclotomic>::load(doc).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn duality_is_an_involution_preserving_dimension(f in 0usize..4, a in 0usize..4) {
        let spec = float(FIXTURES[f]);
        let a = a % spec.num_simples();
        let abar = spec.dual(a);
        prop_assert_eq!(spec.dual(abar), a);
        prop_assert_eq!(spec.source(abar), spec.target(a));
        prop_assert!(close(spec.qdim(a).to_c64(), spec.qdim(abar).to_c64(), 1e-30));
    }

    #[test]
    fn fusion_multiplicities_satisfy_frobenius_reciprocity(f in 0usize..4, a in 0usize..4, b in 0usize..4, d in 0usize..4) {
        let spec = float(FIXTURES[f]);
        let n = spec.num_simples();
        let (a, b, d) = (a % n, b % n, d % n);
        prop_assert_eq!(spec.mult(a, b, d), spec.mult(spec.dual(a), d, b));
        prop_assert_eq!(spec.mult(a, b, d), spec.mult(d, spec.dual(b), a));
    }

    #[test]
    fn dimensions_are_multiplicative(f in 0usize..4, a in 0usize..4, b in 0usize..4) {
        let spec = float(FIXTURES[f]);
        let n = spec.num_simples();
        let (a, b) = (a % n, b % n);
        prop_assume!(spec.composable(a, b));
        let product = spec.qdim(a).to_c64() * spec.qdim(b).to_c64();
        let sum: Complex64 = spec.channels(a, b).iter().map(|&(c, m)| spec.qdim(c).to_c64() * m as f64).sum();
        prop_assert!(close(product, sum, 1e-12));
    }
}
