mod common;

use common::{close, pol, root_of_unity, simples, tube};
use num_complex::Complex64;
use proptest::prelude::*;
use tubecalc::linalg::Mat;
use tubecalc::monoidal::{
    associator, associator_inverse, braiding, dual, fusion_table, modular_data, multiplicities, tensor, tensor_maps,
    twist, ProductVector,
};
use tubecalc::rep::{hom, trivial};
use tubecalc::suite::{monoidal_suite, SuiteOptions};
use tubecalc::{Cyclotomic, MpComplex, Scalar};

fn half(n: i64) -> Cyclotomic {
    Cyclotomic::from_ratio(n, 2)
}

#[test]
fn unit_object_is_a_two_sided_unit() {
    for name in ["vecz2", "semion", "m2"] {
        let t = tube::<Cyclotomic>(name);
        let unit = trivial(&t).unwrap();
        for s in simples(&t) {
            for p in [tensor(&t, &unit, &s.rep).unwrap(), tensor(&t, &s.rep, &unit).unwrap()] {
                assert_eq!(p.dims(), s.rep.dims(), "{name}");
                assert_eq!(hom(&p.rep, &s.rep, &pol()).len(), 1, "{name}");
            }
        }
    }
}

#[test]
fn toric_code_fusion_is_the_klein_group() {
    let t = tube::<Cyclotomic>("vecz2");
    let s = simples(&t);
    let table = fusion_table(&t, &s).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(table.get(i, j, k), usize::from(i ^ j == k), "N_{i}{j}^{k}");
            }
        }
    }
    let em = tensor(&t, &s[1].rep, &s[2].rep).unwrap();
    assert_eq!(multiplicities(&t, &s, &em.rep), vec![0, 0, 0, 1]);
    assert_eq!(s[3].twist, Cyclotomic::from_i64(-1));
}

#[test]
fn fibonacci_center_fusion_is_a_product_of_fibonacci_rules() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let fib = |a: usize, b: usize, c: usize| -> usize {
        match (a, b) {
            (0, x) | (x, 0) => usize::from(x == c),
            _ => 1,
        }
    };
    let pairs = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let table = fusion_table(&t, &s).unwrap();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            for (k, &(e, f)) in pairs.iter().enumerate() {
                assert_eq!(table.get(i, j, k), fib(a, c, e) * fib(b, d, f), "N_{i}{j}^{k}");
            }
        }
    }
    let square = tensor(&t, &s[3].rep, &s[3].rep).unwrap();
    assert_eq!(multiplicities(&t, &s, &square.rep), vec![1, 1, 1, 1]);
}

#[test]
fn toric_code_modular_data_is_exact() {
    let t = tube::<Cyclotomic>("vecz2");
    let data = modular_data(&t, &simples(&t)).unwrap();
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    let want = Mat::from_rows(signs.iter().map(|r| r.iter().map(|&x| half(x)).collect()).collect());
    assert_eq!(data.s, want);
    let mut diag = Mat::identity(4);
    diag[(3, 3)] = Cyclotomic::from_i64(-1);
    assert_eq!(data.t, diag);
    assert_eq!(data.verlinde_residual(), 0.0);
    assert!(data.is_nondegenerate(&pol()));
}

#[test]
fn fibonacci_modular_data() {
    let t = tube::<MpComplex>("fib");
    let data = modular_data(&t, &simples(&t)).unwrap();
    let twists: Vec<Complex64> = (0..4).map(|i| data.t[(i, i)].to_c64()).collect();
    let want = [Complex64::new(1.0, 0.0), root_of_unity(5, 2), root_of_unity(5, 3), Complex64::new(1.0, 0.0)];
    for (got, want) in twists.iter().zip(want) {
        assert!(close(*got, want, 1e-15), "{twists:?}");
    }
    assert!(data.is_nondegenerate(&pol()));
    assert!(data.verlinde_residual() <= 1e-40);
    let unitary = data.s.matmul(&data.s.adjoint());
    assert!(unitary.distance(&Mat::identity(4)) <= 1e-40);
}

#[test]
fn semion_double_is_modular() {
    let t = tube::<Cyclotomic>("semion");
    let data = modular_data(&t, &simples(&t)).unwrap();
    assert!(data.is_nondegenerate(&pol()));
    assert_eq!(data.verlinde_residual(), 0.0);
    let dims: Vec<Cyclotomic> = [1, 1, -1, -1].into_iter().map(Cyclotomic::from_i64).collect();
    assert_eq!(data.dims, dims);
}

#[test]
fn duals_flip_grades() {
    for name in ["vecz2", "semion", "m2"] {
        let t = tube::<Cyclotomic>(name);
        let spec = t.spec();
        for s in simples(&t) {
            let d = dual(&t, &s.rep).unwrap();
            for &a in t.labels() {
                assert_eq!(d.dim_of(a), s.rep.dim_of(spec.dual(a)));
            }
            assert_eq!(d.module_law_residual(&t).unwrap(), 0.0);
        }
    }
}

#[test]
fn associator_inverts_on_fibonacci_triples() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let (m, n, l) = (&s[3].rep, &s[1].rep, &s[3].rep);
    let mn = tensor(&t, m, n).unwrap();
    let mn_l = tensor(&t, &mn.rep, l).unwrap();
    let nl = tensor(&t, n, l).unwrap();
    let m_nl = tensor(&t, m, &nl.rep).unwrap();
    let a = associator(&t, &mn, &mn_l, &nl, &m_nl).unwrap();
    let b = associator_inverse(&t, &mn, &mn_l, &nl, &m_nl).unwrap();
    assert!(a.matmul(&b).distance(&Mat::identity(a.rows())) <= 1e-40);
    assert!(b.matmul(&a).distance(&Mat::identity(a.rows())) <= 1e-40);
}

#[test]
fn ribbon_identity_on_a_fibonacci_pair() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let (m, n) = (&s[1].rep, &s[3].rep);
    let mn = tensor(&t, m, n).unwrap();
    let nm = tensor(&t, n, m).unwrap();
    let thetas = tensor_maps(&mn, &mn, &twist(&t, m).unwrap(), &twist(&t, n).unwrap()).unwrap();
    let lhs = thetas.matmul(&braiding(&t, &nm, &mn).unwrap()).matmul(&braiding(&t, &mn, &nm).unwrap());
    assert!(lhs.distance(&twist(&t, &mn.rep).unwrap()) <= 1e-40);
}

#[test]
fn braiding_is_an_intertwiner() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let mn = tensor(&t, &s[3].rep, &s[2].rep).unwrap();
    let nm = tensor(&t, &s[2].rep, &s[3].rep).unwrap();
    let b = braiding(&t, &mn, &nm).unwrap();
    for i in 0..t.dim() {
        assert!(b.matmul(mn.rep.action(i)).distance(&nm.rep.action(i).matmul(&b)) <= 1e-40);
    }
}

#[test]
fn product_representation_is_closed_under_the_action() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    for i in 0..s.len() {
        for j in 0..s.len() {
            let p = tensor(&t, &s[i].rep, &s[j].rep).unwrap();
            assert!(p.closure_residual <= 1e-40);
            assert!(p.rep.module_law_residual(&t).unwrap() <= 1e-40);
        }
    }
}

#[test]
fn canonical_form_differs_from_its_input_by_relations() {
    let t = tube::<MpComplex>("fib");
    let s = simples(&t);
    let p = tensor(&t, &s[3].rep, &s[3].rep).unwrap();
    for (g, q) in p.grades.iter().enumerate() {
        for (k, e) in q.span.iter().enumerate() {
            let calc = t.calculus();
            let word = tubecalc::monoidal::pants_word(calc, e.a, e.b, q.c, e.x);
            let v = ProductVector { m: e.m, n: e.n, pi: calc.basis_vector(&word, e.tree) };
            let coords = p.canonical_form(&v).unwrap();
            let mut diff = vec![MpComplex::from_i64(0); q.span.len()];
            diff[k] = MpComplex::from_i64(1);
            let offset = p.rep.range(g).start;
            for (f, c) in q.free.iter().zip(&coords[offset..offset + q.dim()]) {
                diff[*f] = diff[*f].clone() - c.clone();
            }
            assert!(p.in_relation_span(g, &diff, &pol()), "grade {g}, span entry {k}");
        }
    }
}

#[test]
fn monoidal_suite_passes_on_fibonacci() {
    let t = tube::<MpComplex>("fib");
    let opts = SuiteOptions { product_vectors: 4, naturality_draws: 1, ..Default::default() };
    let checks = monoidal_suite(&t, &simples(&t), &opts).unwrap();
    for c in &checks {
        assert!(c.passed, "{} {:e} {}", c.name, c.max_residual, c.worst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monoidal_axioms_hold_for_random_draws(seed in any::<u64>(), which in 0usize..3) {
        let t = tube::<Cyclotomic>(["vecz2", "semion", "m2"][which]);
        let opts = SuiteOptions { seed, product_vectors: 20, naturality_draws: 2, ..Default::default() };
        for c in monoidal_suite(&t, &simples(&t), &opts).unwrap() {
            prop_assert!(c.passed, "{} {:e} {}", c.name, c.max_residual, c.worst);
            prop_assert_eq!(c.max_residual, 0.0);
        }
    }
}
