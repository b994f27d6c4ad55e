mod common;

use common::{fixture, simples, tube};
use proptest::prelude::*;
use tubecalc::center::{compare, CenterFixture};
use tubecalc::{Cyclotomic, MpComplex};

fn load(name: &str) -> CenterFixture {
    CenterFixture::load(fixture(name)).unwrap()
}

#[test]
fn toric_code_half_braidings_biject_onto_the_simples() {
    let t = tube::<Cyclotomic>("vecz2");
    let report = compare(&t, &simples(&t), &load("center_vecz2.json")).unwrap();
    assert!(report.bijective);
    assert!(report.passed(0.0), "{report}");
    for e in &report.entries {
        assert!(e.identified, "{}", e.name);
        assert_eq!(e.module_law_residual, 0.0);
    }
    let sum = report.entries.iter().find(|e| e.name == "e+f").unwrap();
    assert_eq!(sum.multiplicities, vec![0, 1, 0, 1]);
}

#[test]
fn psi_is_an_invertible_intertwiner_compatible_with_braidings() {
    let t = tube::<Cyclotomic>("vecz2");
    let report = compare(&t, &simples(&t), &load("center_vecz2.json")).unwrap();
    assert_eq!(report.pairs.len(), 25);
    for p in &report.pairs {
        assert!(p.psi_invertible, "({}, {})", p.left, p.right);
        assert_eq!(p.psi_intertwiner_residual, 0.0);
        assert_eq!(p.braiding_square_residual, 0.0);
    }
}

#[test]
fn fermion_squared_is_the_unit_object() {
    let t = tube::<Cyclotomic>("vecz2");
    let report = compare(&t, &simples(&t), &load("center_vecz2.json")).unwrap();
    let ff = report.pairs.iter().find(|p| p.left == "f" && p.right == "f").unwrap();
    assert_eq!(ff.product, vec![1, 0, 0, 0]);
    assert_eq!(ff.product_matches, vec!["1".to_string()]);
    let em = report.pairs.iter().find(|p| p.left == "e" && p.right == "m").unwrap();
    assert_eq!(em.product_matches, vec!["f".to_string()]);
}

#[test]
fn fibonacci_unit_half_braiding() {
    let t = tube::<MpComplex>("fib");
    let report = compare(&t, &simples(&t), &load("center_fib.json")).unwrap();
    assert!(report.passed(1e-40), "{report}");
    assert_eq!(report.entries[0].multiplicities, vec![1, 0, 0, 0]);
}

#[test]
fn corrupted_half_braiding_is_reported() {
    let t = tube::<Cyclotomic>("vecz2");
    let report = compare(&t, &simples(&t), &load("negative/center_vecz2_bad_sigma.json")).unwrap();
    assert!(!report.passed(1e-15));
    let bad = report.entries.iter().find(|e| !e.identified).expect("an unidentified entry");
    assert!(bad.module_law_residual > 0.1);
}

#[test]
fn fixture_paths_resolve_against_the_fixture_directory() {
    let path = fixture("negative/center_vecz2_bad_sigma.json");
    let spec = load("negative/center_vecz2_bad_sigma.json").spec_path(&path);
    assert_eq!(spec.canonicalize().unwrap(), fixture("vecz2.json").canonicalize().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sign_data_determine_the_simple(object in 0usize..2, negative in any::<bool>(), second in any::<bool>()) {
        let t = tube::<Cyclotomic>("vecz2");
        let s = simples(&t);
        let name = ["1", "g"][object];
        let sign = if negative { "-1" } else { "1" };
        let other = if second { "-1" } else { "1" };
        let doc = format!(
            r#"{{"spec": "vecz2.json", "entries": [
                {{"name": "x", "object": {{"{name}": 1}}, "sigma": [{{"x": "g", "matrix": [["{sign}"]]}}]}},
                {{"name": "y", "object": {{"1": 1}}, "sigma": [{{"x": "g", "matrix": [["{other}"]]}}]}}
            ]}}"#
        );
        let fixture: CenterFixture = serde_json::from_str(&doc).unwrap();
        let report = compare(&t, &s, &fixture).unwrap();
        prop_assert!(report.passed(0.0));
        let want = 2 * object + usize::from(negative);
        let mut expected = vec![0; 4];
        expected[want] = 1;
        prop_assert_eq!(&report.entries[0].multiplicities, &expected);
        let xy = report.pairs.iter().find(|p| p.left == "x" && p.right == "y").unwrap();
        let mut product = vec![0; 4];
        product[want ^ usize::from(second)] = 1;
        prop_assert_eq!(&xy.product, &product);
    }
}
