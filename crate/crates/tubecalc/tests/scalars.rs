use num_traits::{One, Zero};
use num_complex::Complex64;
use proptest::prelude::*;
use tubecalc::scalars::{eval, Expr};
use tubecalc::{AnyScalar, Backend, Cyclotomic, Error, MpComplex, Scalar, TolerancePolicy};

fn pol() -> TolerancePolicy {
    TolerancePolicy::default()
}

/// The golden ratio to 60 significant digits, computed independently.
const PHI_DIGITS: &str = "1.61803398874989484820458683436563811772030917980576286213544";

#[test]
fn parses_rational_literal() {
    let half = Cyclotomic::parse("1/2").unwrap();
    assert_eq!(half, Cyclotomic::from_ratio(1, 2));
    assert_eq!(half.fmt_full(), "1/2");
}

#[test]
fn golden_ratio_to_fifty_digits() {
    let phi = MpComplex::parse("(1+sqrt(5))/2").unwrap();
    let text = phi.fmt_full();
    let digits: String = text.chars().filter(char::is_ascii_digit).take(51).collect();
    let want: String = PHI_DIGITS.chars().filter(char::is_ascii_digit).take(51).collect();
    assert_eq!(digits, want, "{text}");
}

#[test]
fn exact_golden_ratio_satisfies_its_equation() {
    let phi = Cyclotomic::parse("(1+sqrt(5))/2").unwrap();
    assert_eq!(phi.clone() * phi.clone(), phi + Cyclotomic::from_i64(1));
}

#[test]
fn cyclo_one_zero_is_one() {
    assert_eq!(Cyclotomic::parse("cyclo(1,0)").unwrap(), Cyclotomic::from_i64(1));
    assert!(MpComplex::parse("cyclo(1,0)").unwrap().approx_eq(&MpComplex::from_i64(1), &pol()));
}

#[test]
fn approx_eq_examples() {
    let one = Cyclotomic::from_i64(1);
    assert!(one.approx_eq(&Cyclotomic::from_i64(1), &pol()));
    let s = Cyclotomic::parse("sqrt(2)*sqrt(2)").unwrap();
    assert!(s.approx_eq(&Cyclotomic::from_i64(2), &pol()));
    let sf = MpComplex::parse("sqrt(2)*sqrt(2)").unwrap();
    assert!(sf.approx_eq(&MpComplex::from_i64(2), &pol()));
    let phi = MpComplex::parse("(1+sqrt(5))/2").unwrap();
    let phi2 = phi.clone() * phi.clone();
    assert!(phi2.approx_eq(&(phi + MpComplex::from_i64(1)), &pol()));
}

#[test]
fn parse_errors() {
    assert!(matches!(Cyclotomic::parse("1/(2-2)"), Err(Error::DivisionByZero)));
    assert!(matches!(MpComplex::parse("1/(2-2)"), Err(Error::DivisionByZero)));
    assert!(matches!(Cyclotomic::parse("cyclo(0,0)"), Err(Error::BadCycloOrder(0))));
    assert!(matches!(Cyclotomic::parse("2 +"), Err(Error::Syntax { pos: 3, .. })));
    assert!(matches!(Cyclotomic::parse("sqrt(1+sqrt(5))"), Err(Error::NotExact(_))));
    assert!(MpComplex::parse("sqrt(1+sqrt(5))").is_ok());
}

#[test]
fn backend_mismatch_is_an_error() {
    let a = AnyScalar::parse("1/3", Backend::Exact).unwrap();
    let b = AnyScalar::parse("1/3", Backend::Float).unwrap();
    assert!(matches!(a.approx_eq(&b, &pol()), Err(Error::BackendMismatch(..))));
    assert!(a.try_add(&b).is_err());
    assert!(a.try_add(&a).is_ok());
}

#[test]
fn tolerance_policy_validation() {
    assert!(TolerancePolicy::new(-1.0, 0.0).is_err());
    assert!(TolerancePolicy::new(f64::NAN, 0.0).is_err());
    assert!(TolerancePolicy::new(0.0, 1e-10).is_ok());
}

#[test]
fn square_roots_of_integers() {
    for n in 1..60i64 {
        let r = Cyclotomic::parse(&format!("sqrt({n})")).unwrap();
        assert_eq!(r.clone() * r.clone(), Cyclotomic::from_i64(n), "sqrt({n})");
        let z = r.to_c64();
        assert!((z - Complex64::new((n as f64).sqrt(), 0.0)).norm() < 1e-9, "sqrt({n}) = {z}");
    }
}

#[test]
fn conj_of_roots_of_unity() {
    for n in 2..=24u64 {
        for k in 1..n as i64 {
            let a = Cyclotomic::cyclo(n, k).conj();
            assert_eq!(a, Cyclotomic::cyclo(n, n as i64 - k));
            let b = MpComplex::cyclo(n, k).conj();
            assert!(b.approx_eq(&MpComplex::cyclo(n, n as i64 - k), &pol()));
        }
    }
}

#[test]
fn exact_inverse() {
    let x = Cyclotomic::parse("1 + cyclo(5,1) - 3*cyclo(12,5)").unwrap();
    let inv = Cyclotomic::from_i64(1) / x.clone();
    assert_eq!(inv * x, Cyclotomic::from_i64(1));
}

#[test]
fn fmt_full_round_trips_exact_values() {
    for text in ["cyclo(5,2)", "sqrt(3)/7 - cyclo(8,3)", "-2/9", "0"] {
        let v = Cyclotomic::parse(text).unwrap();
        assert_eq!(Cyclotomic::parse(&v.fmt_full()).unwrap(), v, "{text}");
    }
}

#[test]
fn polynomial_roots() {
    // (x - 2)(x + 1)(x - 1/3)
    let coeffs = [2, -5, -4, 3];
    let exact: Vec<Cyclotomic> = coeffs.iter().map(|&c| Cyclotomic::from_i64(c)).collect();
    let mut r: Vec<String> = Cyclotomic::poly_roots(&exact).unwrap().iter().map(|r| r.fmt_full()).collect();
    r.sort();
    assert_eq!(r, vec!["-1", "1/3", "2"]);
    let float: Vec<MpComplex> = coeffs.iter().map(|&c| MpComplex::from_i64(c)).collect();
    let roots = MpComplex::poly_roots(&float).unwrap();
    for want in [MpComplex::from_i64(2), MpComplex::from_i64(-1), MpComplex::from_ratio(1, 3)] {
        assert!(roots.iter().any(|z| z.approx_eq(&want, &TolerancePolicy::uniform(1e-60).unwrap())));
    }
}

#[test]
fn quadratic_roots_use_exact_square_roots() {
    let i = Cyclotomic::cyclo(4, 1);
    let roots = Cyclotomic::poly_roots(&[Cyclotomic::one(), Cyclotomic::zero(), Cyclotomic::one()]).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&i) && roots.contains(&-i));
    // (x - 2)(x² - x - 1)
    let c: Vec<Cyclotomic> = [2, 1, -3, 1].iter().map(|&v| Cyclotomic::from_i64(v)).collect();
    let roots = Cyclotomic::poly_roots(&c).unwrap();
    let phi = Cyclotomic::parse("(1+sqrt(5))/2").unwrap();
    let psi = Cyclotomic::parse("(1-sqrt(5))/2").unwrap();
    assert_eq!(roots.len(), 3);
    for want in [Cyclotomic::from_i64(2), phi, psi] {
        assert!(roots.contains(&want), "missing {}", want.fmt_full());
    }
}

#[test]
fn cubic_without_rational_roots_is_not_solved_exactly() {
    let c: Vec<Cyclotomic> = [-2, 0, 0, 1].iter().map(|&v| Cyclotomic::from_i64(v)).collect();
    assert!(Cyclotomic::poly_roots(&c).is_none());
}

#[test]
fn rational_root_theorem_with_fractional_roots() {
    // (x - 1)(x + 2)(2x - 3)
    let c: Vec<Cyclotomic> = [6, -7, -1, 2].iter().map(|&v| Cyclotomic::from_i64(v)).collect();
    let mut r: Vec<String> = Cyclotomic::poly_roots(&c).unwrap().iter().map(|r| r.fmt_full()).collect();
    r.sort();
    assert_eq!(r, vec!["-2", "1", "3/2"]);
}

#[test]
fn roots_of_unity_reduce_to_their_conductor() {
    assert_eq!(Cyclotomic::cyclo(2, 1), -Cyclotomic::one());
    assert_eq!(Cyclotomic::cyclo(6, 1).conductor(), 3);
    assert_eq!(Cyclotomic::cyclo(12, 3), Cyclotomic::cyclo(4, 1));
}

#[test]
fn parse_error_reports_position() {
    match Expr::parse("1 + * 2") {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn parse_rejects_zero_divisors_and_bad_cyclo_orders() {
    assert!(matches!(Expr::parse("3/0"), Err(Error::DivisionByZero)));
    assert!(matches!(Expr::parse("cyclo(0,1)"), Err(Error::BadCycloOrder(0))));
    assert!(matches!(Expr::parse("cyclo(-3,1)"), Err(Error::BadCycloOrder(-3))));
}

#[test]
fn multiplication_binds_tighter_than_addition() {
    assert!(matches!(Expr::parse("1+2*3").unwrap(), Expr::Add(_, _)));
}

fn small_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (-9i64..10, 1i64..6).prop_map(|(p, q)| format!("({p}/{q})")),
        prop::sample::select(vec![1u64, 2, 3, 5, 6, 10]).prop_map(|m| format!("sqrt({m})")),
        (prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 10, 12]), 0i64..13)
            .prop_map(|(n, k)| format!("cyclo({n},{k})")),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner, prop_oneof![Just("+"), Just("-"), Just("*")])
            .prop_map(|(a, b, op)| format!("({a}{op}{b})"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent(text in small_expr()) {
        let v = Cyclotomic::parse(&text).unwrap();
        prop_assert_eq!(v.normalize(), v.clone());
        prop_assert_eq!(v.normalize().normalize(), v.normalize());
        let reparsed = Cyclotomic::parse(&v.fmt_full()).unwrap();
        prop_assert_eq!(reparsed, v);
    }

    #[test]
    fn exact_and_float_agree(text in small_expr()) {
        let e = eval::<Cyclotomic>(&Expr::parse(&text).unwrap()).unwrap().to_c64();
        let f = eval::<MpComplex>(&Expr::parse(&text).unwrap()).unwrap().to_c64();
        prop_assert!((e - f).norm() <= 1e-9 * (1.0 + e.norm()));
    }
}

fn field_axioms<S: Scalar>(draw: impl Fn(&mut u64) -> S, pol: &TolerancePolicy) {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for _ in 0..1000 {
        let (a, b, c) = (draw(&mut state), draw(&mut state), draw(&mut state));
        let l = (a.clone() * b.clone()) * c.clone();
        let r = a.clone() * (b.clone() * c.clone());
        assert!(l.approx_eq(&r, pol), "associativity");
        let l = (a.clone() + b.clone()) + c.clone();
        let r = a.clone() + (b.clone() + c.clone());
        assert!(l.approx_eq(&r, pol), "additive associativity");
        let l = a.clone() * (b.clone() + c.clone());
        let r = a.clone() * b.clone() + a.clone() * c.clone();
        assert!(l.approx_eq(&r, pol), "distributivity");
        if !b.is_exact_zero() {
            let q = (a.clone() / b.clone()) * b.clone();
            assert!(q.approx_eq(&a, pol), "division");
        }
    }
}

fn next(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

#[test]
fn field_axioms_float() {
    field_axioms(
        |s| {
            let (a, b, n) = ((next(s) % 19) as i64 - 9, (next(s) % 7 + 1) as i64, next(s) % 12 + 1);
            MpComplex::from_ratio(a, b) * MpComplex::cyclo(n, (next(s) % n) as i64)
                + MpComplex::parse(&format!("sqrt({})", next(s) % 10 + 1)).unwrap()
        },
        &TolerancePolicy::uniform(1e-60).unwrap(),
    );
}

#[test]
fn field_axioms_exact() {
    field_axioms(
        |s| {
            let (a, b) = ((next(s) % 19) as i64 - 9, (next(s) % 7 + 1) as i64);
            let n = [1u64, 3, 4, 5, 8][(next(s) % 5) as usize];
            Cyclotomic::from_ratio(a, b) * Cyclotomic::cyclo(n, (next(s) % n) as i64)
                + Cyclotomic::parse(&format!("sqrt({})", [1, 2, 3, 5][(next(s) % 4) as usize])).unwrap()
        },
        &TolerancePolicy::default(),
    );
}
