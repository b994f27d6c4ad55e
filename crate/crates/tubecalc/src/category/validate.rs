//! Consistency checks for a category presentation.

use std::fmt;

use serde::Serialize;

use super::{CategorySpec, Label};
use crate::scalars::{Scalar, TolerancePolicy};

/// One named check with its worst residual.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub passed: bool,
    /// Where the worst residual occurred, if anywhere.
    pub worst: String,
}

/// All checks run by [`CategorySpec::validate`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{}: {} (max residual {:e})", c.name, verdict, c.max_residual)?;
            if !c.passed && !c.worst.is_empty() {
                write!(f, " at {}", c.worst)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Tracks the largest residual of one check.
pub(crate) struct Tracker<'p> {
    name: &'static str,
    pol: &'p TolerancePolicy,
    max: f64,
    passed: bool,
    worst: String,
}

impl<'p> Tracker<'p> {
    pub(crate) fn new(name: &'static str, pol: &'p TolerancePolicy) -> Self {
        Self { name, pol, max: 0.0, passed: true, worst: String::new() }
    }

    pub(crate) fn scalar<S: Scalar>(&mut self, residual: S, at: impl FnOnce() -> String) {
        let m = residual.modulus();
        let ok = residual.negligible(self.pol, 1.0);
        self.record(m, ok, at);
    }

    pub(crate) fn count(&mut self, violated: bool, at: impl FnOnce() -> String) {
        self.record(if violated { 1.0 } else { 0.0 }, !violated, at);
    }

    /// Records a distance between two quantities of magnitude `scale`;
    /// exact backends require it to vanish.
    pub(crate) fn distance<S: Scalar>(&mut self, diff: f64, scale: f64, at: impl FnOnce() -> String) {
        let ok = if S::EXACT { diff == 0.0 } else { diff <= self.pol.abs_tol + self.pol.rel_tol * scale };
        self.record(diff, ok, at);
    }

    pub(crate) fn record(&mut self, m: f64, ok: bool, at: impl FnOnce() -> String) {
        if m > self.max || (!ok && self.passed) {
            self.max = self.max.max(m);
            self.worst = at();
        }
        self.passed &= ok;
    }

    pub(crate) fn finish(self) -> CheckResult {
        CheckResult { name: self.name.into(), max_residual: self.max, passed: self.passed, worst: self.worst }
    }
}

pub(super) fn validate<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> ValidationReport {
    let checks = vec![
        pentagon(spec, pol),
        unit_laws(spec, pol),
        dimension_equation(spec, pol),
        dual_involution(spec, pol),
        sqrt_consistency(spec, pol),
        snake_identities(spec, pol),
        spherical_traces(spec, pol),
        frobenius_reciprocity(spec, pol),
    ];
    ValidationReport { checks }
}

fn labels<S: Scalar>(spec: &CategorySpec<S>) -> std::ops::Range<Label> {
    0..spec.num_simples()
}

/// Compares the two recouplings of `(((a b)_p c)_q d)_g` into `(a (b (c d)_r)_s)_g`.
fn pentagon<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("pentagon", pol);
    for a in labels(spec) {
        for b in labels(spec).filter(|&b| spec.composable(a, b)) {
            for c in labels(spec).filter(|&c| spec.composable(b, c)) {
                for d in labels(spec).filter(|&d| spec.composable(c, d)) {
                    for g in spec.simples_between(spec.source(a), spec.target(d)) {
                        pentagon_at(spec, &mut t, [a, b, c, d, g]);
                    }
                }
            }
        }
    }
    t.finish()
}

fn pentagon_at<S: Scalar>(spec: &CategorySpec<S>, t: &mut Tracker<'_>, [a, b, c, d, g]: [Label; 5]) {
    let mut lefts = Vec::new();
    for &(p, n1) in spec.channels(a, b) {
        for &(q, n2) in spec.channels(p, c) {
            for m1 in 0..n1 {
                for m2 in 0..n2 {
                    for m3 in 0..spec.mult(q, d, g) {
                        lefts.push((p, m1, q, m2, m3));
                    }
                }
            }
        }
    }
    let mut rights = Vec::new();
    for &(r, n1) in spec.channels(c, d) {
        for &(s, n2) in spec.channels(b, r) {
            for r1 in 0..n1 {
                for r2 in 0..n2 {
                    for r3 in 0..spec.mult(a, s, g) {
                        rights.push((r, r1, s, r2, r3));
                    }
                }
            }
        }
    }
    for &(p, m1, q, m2, m3) in &lefts {
        for &(r, r1, s, r2, r3) in &rights {
            let mut two = S::zero();
            for k in 0..spec.mult(p, r, g) {
                two = two
                    + spec.f(p, c, d, g, (q, m2, m3), (r, r1, k)) * spec.f(a, b, r, g, (p, m1, k), (s, r2, r3));
            }
            let mut three = S::zero();
            for &(u, nu) in spec.channels(b, c) {
                for l1 in 0..nu {
                    for l2 in 0..spec.mult(a, u, q) {
                        for l3 in 0..spec.mult(u, d, s) {
                            three = three
                                + spec.f(a, b, c, q, (p, m1, m2), (u, l1, l2))
                                    * spec.f(a, u, d, g, (q, l2, m3), (s, l3, r3))
                                    * spec.f(b, c, d, s, (u, l1, l3), (r, r1, r2));
                        }
                    }
                }
            }
            t.scalar(two - three, || {
                format!(
                    "({},{},{},{};{}) p={} q={} r={} s={}",
                    spec.name(a),
                    spec.name(b),
                    spec.name(c),
                    spec.name(d),
                    spec.name(g),
                    spec.name(p),
                    spec.name(q),
                    spec.name(r),
                    spec.name(s)
                )
            });
        }
    }
}

fn unit_laws<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("unit-law", pol);
    for i in 0..spec.zero_cells {
        let u = spec.unit(i);
        t.scalar(spec.qdim(u).clone() - S::one(), || format!("qdim of unit {}", spec.name(u)));
        t.scalar(spec.pivotal(u).clone() - S::one(), || format!("pivotal of unit {}", spec.name(u)));
        t.count(spec.dual(u) != u, || format!("unit {} is not self-dual", spec.name(u)));
        for b in labels(spec) {
            if spec.source(b) == i {
                t.count(spec.channels(u, b) != [(b, 1)], || format!("{} ⊗ {}", spec.name(u), spec.name(b)));
            }
            if spec.target(b) == i {
                t.count(spec.channels(b, u) != [(b, 1)], || format!("{} ⊗ {}", spec.name(b), spec.name(u)));
            }
        }
    }
    for (&(a, b, c, d), blk) in spec.f_blocks() {
        if spec.is_unit(a) || spec.is_unit(b) || spec.is_unit(c) {
            let id = crate::linalg::Mat::<S>::identity(blk.left.len());
            let permuted_identity = (0..blk.left.len()).all(|i| {
                (0..blk.right.len()).filter(|&j| !blk.matrix[(i, j)].is_exact_zero()).count() == 1
            });
            let dev = if permuted_identity { 0.0 } else { blk.matrix.distance(&id) };
            t.record(dev, permuted_identity, || {
                format!("F[{},{},{};{}]", spec.name(a), spec.name(b), spec.name(c), spec.name(d))
            });
        }
    }
    t.finish()
}

fn dimension_equation<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("dimension equation", pol);
    for a in labels(spec) {
        for b in labels(spec).filter(|&b| spec.composable(a, b)) {
            let lhs = spec.qdim(a).clone() * spec.qdim(b).clone();
            let rhs = spec
                .channels(a, b)
                .iter()
                .fold(S::zero(), |acc, &(c, m)| acc + S::from_i64(m as i64) * spec.qdim(c).clone());
            t.scalar(lhs - rhs, || format!("{} ⊗ {}", spec.name(a), spec.name(b)));
        }
    }
    t.finish()
}

fn dual_involution<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("dual involution", pol);
    for a in labels(spec) {
        let ad = spec.dual(a);
        t.count(spec.dual(ad) != a, || format!("dual of dual of {}", spec.name(a)));
        t.count(
            spec.source(ad) != spec.target(a) || spec.target(ad) != spec.source(a),
            || format!("0-cells of the dual of {}", spec.name(a)),
        );
        t.scalar(spec.qdim(ad).clone() - spec.qdim(a).clone(), || format!("d of dual {}", spec.name(a)));
        let unit = spec.unit(spec.source(a));
        for b in labels(spec).filter(|&b| spec.composable(a, b) && spec.target(b) == spec.source(a)) {
            let expected = usize::from(b == ad);
            t.count(spec.mult(a, b, unit) != expected, || {
                format!("N({},{};{})", spec.name(a), spec.name(b), spec.name(unit))
            });
        }
    }
    t.finish()
}

fn sqrt_consistency<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("sqrt consistency", pol);
    for a in labels(spec) {
        let r = spec.sqrt_qdim(a).clone();
        t.scalar(r.clone() * r - spec.qdim(a).clone(), || spec.name(a).to_string());
    }
    t.finish()
}

/// The two zig-zag values `d_a p_a F[a,ā,a;a]_{11}` and `d_a p_a F^{-1}[ā,a,ā;ā]_{11}`.
pub(crate) fn snakes<S: Scalar>(spec: &CategorySpec<S>, a: Label) -> (S, S) {
    let ad = spec.dual(a);
    let (us, ut) = (spec.unit(spec.source(a)), spec.unit(spec.target(a)));
    let dp = spec.qdim(a).clone() * spec.pivotal(a).clone();
    let first = dp.clone() * spec.f(a, ad, a, a, (us, 0, 0), (ut, 0, 0));
    let second = dp * spec.f_inv(ad, a, ad, ad, (us, 0, 0), (ut, 0, 0));
    (first, second)
}

fn snake_identities<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("snake identities", pol);
    for a in labels(spec) {
        let (first, second) = snakes(spec, a);
        t.scalar(first - S::one(), || format!("first zig-zag of {}", spec.name(a)));
        t.scalar(second - S::one(), || format!("second zig-zag of {}", spec.name(a)));
    }
    t.finish()
}

/// Left and right traces of `id_a` are `d_a p_ā` and `d_a p_a`.
fn spherical_traces<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("left trace = right trace", pol);
    for a in labels(spec) {
        let left = spec.qdim(a).clone() * spec.pivotal(spec.dual(a)).clone();
        let right = spec.qdim(a).clone() * spec.pivotal(a).clone();
        t.scalar(left - right, || spec.name(a).to_string());
    }
    t.finish()
}

fn frobenius_reciprocity<S: Scalar>(spec: &CategorySpec<S>, pol: &TolerancePolicy) -> CheckResult {
    let mut t = Tracker::new("frobenius reciprocity", pol);
    for a in labels(spec) {
        for b in labels(spec).filter(|&b| spec.composable(a, b)) {
            for c in spec.simples_between(spec.source(a), spec.target(b)) {
                let n = spec.mult(a, b, c);
                let (ad, bd, cd) = (spec.dual(a), spec.dual(b), spec.dual(c));
                t.count(n != spec.mult(b, cd, ad) || n != spec.mult(cd, a, bd), || {
                    format!("N({},{};{})", spec.name(a), spec.name(b), spec.name(c))
                });
            }
        }
    }
    t.finish()
}
