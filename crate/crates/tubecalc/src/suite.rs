//! Property suites for a category, its tube algebra and the monoidal
//! structure on its representations.
//!
//! Each property becomes one [`CheckResult`] holding the worst residual seen
//! over an exhaustive loop or a batch of seeded random draws.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::validate::Tracker;
use crate::center::{compare, CenterFixture};
use crate::category::{CategorySpec, CheckResult, Label};
use crate::error::Result;
use crate::homspace::{HomCalculus, HomVector};
use crate::linalg::Mat;
use crate::monoidal::{
    associator, associator_inverse, braiding, coevaluation, dual, evaluation, left_unitor, modular_data,
    right_unitor, tensor, tensor_maps, twist, Tensor,
};
use crate::rep::{decompose, hom, regular, trivial, Representation, SimpleModule};
use crate::scalars::Scalar;
use crate::tube::TubeAlgebra;

/// Sizes and seed of the randomized checks.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Random draws for each randomized Hom-space property.
    pub draws: usize,
    /// Random vectors for each coherence check.
    pub product_vectors: usize,
    /// Random intertwiner draws for each naturality check.
    pub naturality_draws: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { draws: 100, product_vectors: 20, naturality_draws: 3, seed: 0 }
    }
}

/// The checks of one module.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteSection {
    pub module: String,
    pub checks: Vec<CheckResult>,
}

/// The checks of every module.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub sections: Vec<SuiteSection>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn check(&self, module: &str, name: &str) -> Option<&CheckResult> {
        self.sections.iter().filter(|s| s.module == module).flat_map(|s| &s.checks).find(|c| c.name == name)
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, &CheckResult)> {
        self.sections.iter().flat_map(|s| s.checks.iter().map(move |c| (s.module.as_str(), c)))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (module, c) in self.checks() {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{module}/{}: {verdict} (max residual {:e})", c.name, c.max_residual)?;
            if !c.passed && !c.worst.is_empty() {
                write!(f, " at {}", c.worst)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs every suite against one tube algebra, comparing the simples with
/// each named center fixture.
pub fn run<S: Scalar>(
    t: &TubeAlgebra<S>,
    opts: &SuiteOptions,
    fixtures: &[(String, CenterFixture)],
) -> Result<SuiteReport> {
    let mut sections = vec![
        SuiteSection { module: "category".into(), checks: t.spec().validate(t.tolerance()).checks },
        SuiteSection { module: "homspace".into(), checks: homspace_suite(t.calculus(), opts)? },
        SuiteSection { module: "tube_algebra".into(), checks: tube_suite(t)? },
    ];
    let (checks, simples) = rep_suite(t, opts)?;
    sections.push(SuiteSection { module: "rep_theory".into(), checks });
    sections.push(SuiteSection { module: "monoidal".into(), checks: monoidal_suite(t, &simples, opts)? });
    if !fixtures.is_empty() {
        sections.push(SuiteSection { module: "center_compare".into(), checks: center_suite(t, &simples, fixtures)? });
    }
    Ok(SuiteReport { sections })
}

/// Compares each named center fixture with the simples.
pub fn center_suite<S: Scalar>(
    t: &TubeAlgebra<S>,
    simples: &[SimpleModule<S>],
    fixtures: &[(String, CenterFixture)],
) -> Result<Vec<CheckResult>> {
    let pol = t.tolerance();
    let mut out = Vec::new();
    for (name, fixture) in fixtures {
        let report = compare(t, simples, fixture)?;
        let mut laws = Tracker::new("module laws", pol);
        let mut identified = Tracker::new("identification", pol);
        for e in &report.entries {
            laws.distance::<S>(e.module_law_residual, 1.0, || format!("E({})", e.name));
            identified.count(!e.identified, || format!("E({})", e.name));
        }
        let mut psi = Tracker::new("psi intertwiner", pol);
        let mut square = Tracker::new("braiding square", pol);
        for p in &report.pairs {
            let at = || format!("({}, {})", p.left, p.right);
            psi.distance::<S>(p.psi_intertwiner_residual, 1.0, at);
            psi.count(!p.psi_invertible, at);
            square.distance::<S>(p.braiding_square_residual, 1.0, at);
        }
        for mut c in [laws.finish(), identified.finish(), psi.finish(), square.finish()] {
            c.name = format!("{name} {}", c.name);
            out.push(c);
        }
        let complete = fixture.expected.len() == fixture.entries.len()
            && fixture.expected.values().filter(|v| v.len() == 1).count() == simples.len();
        if complete {
            let mut bijection = Tracker::new("bijection", pol);
            bijection.count(!report.bijective, || "simple entries".into());
            let mut c = bijection.finish();
            c.name = format!("{name} {}", c.name);
            out.push(c);
        }
    }
    Ok(out)
}

/// Seeded source of labels and Hom-space vectors.
struct Sampler<'a, S: Scalar> {
    calc: &'a HomCalculus<S>,
    rng: ChaCha8Rng,
}

const MAX_ATTEMPTS: usize = 2000;

impl<'a, S: Scalar> Sampler<'a, S> {
    fn new(calc: &'a HomCalculus<S>, seed: u64) -> Self {
        Self { calc, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn coefficient(&mut self) -> S {
        S::from_i64(self.rng.gen_range(-3..=3))
    }

    /// A random nonzero vector of `H⟨word⟩`, if the space is nonzero.
    fn vector(&mut self, word: &[Label]) -> Option<HomVector<S>> {
        if self.calc.check_word(word).is_err() {
            return None;
        }
        let n = self.calc.basis(word).len();
        if n == 0 {
            return None;
        }
        let mut v = self.calc.zero(word);
        for c in v.coeffs.iter_mut() {
            *c = self.coefficient();
        }
        if v.coeffs.iter().all(S::is_exact_zero) {
            v.coeffs[self.rng.gen_range(0..n)] = S::one();
        }
        Some(v)
    }

    /// Draws `K` labels until every word produced by `words` has a nonzero
    /// Hom space, and returns the labels with one random vector per word.
    fn draw<const K: usize>(
        &mut self,
        words: impl Fn(&CategorySpec<S>, [Label; K]) -> Vec<Vec<Label>>,
    ) -> Option<([Label; K], Vec<HomVector<S>>)> {
        let n = self.calc.spec().num_simples();
        for _ in 0..MAX_ATTEMPTS {
            let labels: [Label; K] = std::array::from_fn(|_| self.rng.gen_range(0..n));
            let ws = words(self.calc.spec(), labels);
            if ws.iter().all(|w| self.calc.check_word(w).is_ok() && !self.calc.basis(w).is_empty()) {
                let vs = ws.iter().map(|w| self.vector(w).expect("nonzero space")).collect();
                return Some((labels, vs));
            }
        }
        None
    }
}

/// Sums a family of vectors into one vector per key.
fn collect<K: Ord, S: Scalar>(terms: impl IntoIterator<Item = (K, HomVector<S>)>) -> BTreeMap<K, HomVector<S>> {
    let mut out: BTreeMap<K, HomVector<S>> = BTreeMap::new();
    for (k, v) in terms {
        match out.get_mut(&k) {
            Some(acc) => acc.add_scaled(&S::one(), &v),
            None => {
                out.insert(k, v);
            }
        }
    }
    out
}

/// Distance and magnitude between two families, treating missing keys as zero.
fn family_distance<K: Ord, S: Scalar>(a: &BTreeMap<K, HomVector<S>>, b: &BTreeMap<K, HomVector<S>>) -> (f64, f64) {
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for (k, v) in a {
        scale = scale.max(v.max_modulus());
        diff = diff.max(match b.get(k) {
            Some(w) if w.word == v.word => v.sub(w).max_modulus(),
            Some(w) => v.max_modulus().max(w.max_modulus()),
            None => v.max_modulus(),
        });
    }
    for (k, w) in b {
        scale = scale.max(w.max_modulus());
        if !a.contains_key(k) {
            diff = diff.max(w.max_modulus());
        }
    }
    (diff, scale)
}

fn vector_distance<S: Scalar>(a: &HomVector<S>, b: &HomVector<S>) -> (f64, f64) {
    (a.sub(b).max_modulus(), a.max_modulus().max(b.max_modulus()))
}

/// All words of the given length over the labels.
fn words(labels: usize, len: usize) -> impl Iterator<Item = Vec<Label>> {
    let total = labels.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = k % labels;
            k /= labels;
        }
        w
    })
}

/// The Hom-space calculus: rotation, pairing, dual bases, composition and ⋆-resolution.
pub fn homspace_suite<S: Scalar>(calc: &HomCalculus<S>, opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let spec = calc.spec();
    let pol = calc.tolerance();
    let n = spec.num_simples();
    let d = |a: Label| spec.dual(a);
    let mut rotation = Tracker::new("rotation periodicity", pol);
    let mut delta = Tracker::new("dual basis delta", pol);
    let mut symmetry = Tracker::new("pairing symmetry", pol);
    let mut nondegenerate = Tracker::new("pairing nondegeneracy", pol);
    for len in 1..=4 {
        for w in words(n, len) {
            if calc.check_word(&w).is_err() || calc.basis(&w).is_empty() {
                continue;
            }
            let at = || format!("⟨{}⟩", spec.word_name(&w));
            let dim = calc.basis(&w).len();
            for i in 0..dim {
                let v = calc.basis_vector(&w, i);
                let (diff, scale) = vector_distance(&calc.rotate_by(&v, len), &v);
                rotation.distance::<S>(diff, scale, at);
            }
            match calc.dual_basis(&w) {
                Ok(db) => {
                    nondegenerate.count(false, at);
                    for (i, b) in db.basis.iter().enumerate() {
                        for (j, dj) in db.dual.iter().enumerate() {
                            let p = calc.pair(dj, b)?;
                            let target = if i == j { S::one() } else { S::zero() };
                            delta.scalar(p.clone() - target, at);
                            symmetry.scalar(calc.pair(b, dj)? - p, at);
                        }
                    }
                }
                Err(_) => nondegenerate.count(true, at),
            }
        }
    }

    let mut dominance = Tracker::new("dominance", pol);
    for a in 0..n {
        for b in (0..n).filter(|&b| spec.composable(a, b)) {
            let e = calc.unit(&[a, b])?;
            let mut acc = calc.zero(&e.word);
            for t in 0..n {
                let w = vec![a, b, d(t)];
                if calc.check_word(&w).is_err() || calc.basis(&w).is_empty() {
                    continue;
                }
                let db = calc.dual_basis(&w)?;
                for (alpha, alpha_bar) in db.basis.iter().zip(&db.dual) {
                    let x = calc.compose(&calc.rotate(alpha_bar), &calc.rotate_by(alpha, 2), 1)?;
                    acc.add_scaled(&spec.trace_dim(t), &x);
                }
            }
            let (diff, scale) = vector_distance(&acc, &e);
            dominance.distance::<S>(diff, scale, || format!("({}, {})", spec.name(a), spec.name(b)));
        }
    }

    let mut sampler = Sampler::new(calc, opts.seed);
    let mut pairing = Tracker::new("pairing lemma (i)", pol);
    let mut multiplicative = Tracker::new("pairing multiplicativity", pol);
    let mut base_change = Tracker::new("base change", pol);
    let mut composition = Tracker::new("bases composition", pol);
    let mut star1 = Tracker::new("star (i)", pol);
    let mut star2 = Tracker::new("star (ii)", pol);
    let mut star3 = Tracker::new("star (iii)", pol);
    let mut star4 = Tracker::new("star (iv)", pol);
    for _ in 0..opts.draws {
        // d_y · f ∘_y g = ⟨g, f⟩ e_y for f ∈ H⟨a y⟩, g ∈ H⟨ȳ ā⟩
        if let Some(([a, y], v)) = sampler.draw(|s, [a, y]| vec![vec![a, y], vec![s.dual(y), s.dual(a)]]) {
            let (f, g) = (&v[0], &v[1]);
            let lhs = calc.rotate(&calc.compose(&calc.rotate(f), &calc.rotate(g), 1)?).scale(&spec.trace_dim(y));
            let rhs = calc.unit(&[y])?.scale(&calc.pair(g, f)?);
            let (diff, scale) = vector_distance(&lhs, &rhs);
            pairing.distance::<S>(diff, scale, || spec.word_name(&[a, y]));
        }
        // ⟨f • g, h • k⟩ = ⟨f, k⟩ ⟨g, h⟩
        if let Some(([a, y, b], v)) = sampler.draw(|s, [a, y, b]| {
            vec![vec![a, y], vec![s.dual(y), b], vec![s.dual(b), y], vec![s.dual(y), s.dual(a)]]
        }) {
            let fg = calc.compose_scaled(&v[0], &v[1], 1)?;
            let hk = calc.compose_scaled(&v[2], &v[3], 1)?;
            let lhs = calc.pair(&fg, &hk)?;
            let rhs = calc.pair(&v[0], &v[3])? * calc.pair(&v[1], &v[2])?;
            multiplicative.scalar(lhs - rhs, || spec.word_name(&[a, y, b]));
        }
        // Σ_i ᾱ_i f ⊗ α^i = Σ_j β̄_j ⊗ f β^j with α, β dual bases of ⟨a x⟩, ⟨b̄ x⟩
        if let Some(([a, b, x], v)) = sampler.draw(|s, [a, b, x]| vec![vec![a, b], vec![a, x], vec![s.dual(b), x]]) {
            let f = &v[0];
            let (wa, wb) = (vec![a, x], vec![d(b), x]);
            let (w1, w2) = (vec![d(x), b], vec![a, x]);
            let (n1, n2) = (calc.basis(&w1).len(), calc.basis(&w2).len());
            let mut lhs = Mat::<S>::zeros(n1, n2);
            let mut rhs = Mat::<S>::zeros(n1, n2);
            let da = calc.dual_basis(&wa)?;
            for (alpha, alpha_bar) in da.basis.iter().zip(&da.dual) {
                let left = calc.rotate(&calc.compose(&calc.rotate(f), &calc.rotate(alpha_bar), 1)?);
                lhs = lhs.add(&outer(&left.coeffs, &alpha.coeffs));
            }
            let db = calc.dual_basis(&wb)?;
            for (beta, beta_bar) in db.basis.iter().zip(&db.dual) {
                let right = calc.compose(f, beta, 1)?;
                rhs = rhs.add(&outer(&beta_bar.coeffs, &right.coeffs));
            }
            base_change.distance::<S>(lhs.distance(&rhs), lhs.max_modulus().max(rhs.max_modulus()), || {
                spec.word_name(&[a, b, x])
            });
        }
        // α_t • β_t over all channels t is a dual basis pair of ⟨a b c⟩
        if let Some(([a, b, c], _)) = sampler.draw(|_, [a, b, c]| vec![vec![a, b, c]]) {
            bases_composition(calc, [a, b, c], &mut composition)?;
        }
        // ⋆_y(f ∘_z g) = ⋆_y(f) ∘_z g and likewise for •_z
        if let Some(([x, y, z, w], v)) =
            sampler.draw(|s, [x, y, z, w]| vec![vec![s.dual(y), x, y, z], vec![s.dual(z), w]])
        {
            let (f, g) = (&v[0], &v[1]);
            for scaled in [false, true] {
                let glue = |u: &HomVector<S>| {
                    if scaled {
                        calc.compose_scaled(u, g, 1)
                    } else {
                        calc.compose(u, g, 1)
                    }
                };
                let lhs = collect(calc.star(&glue(f)?, 2, 1, 0)?);
                let rhs = collect(
                    calc.star(f, 2, 1, 0)?.into_iter().map(|(t, u)| Ok((t, glue(&u)?))).collect::<Result<Vec<_>>>()?,
                );
                let (diff, scale) = family_distance(&lhs, &rhs);
                star1.distance::<S>(diff, scale, || spec.word_name(&[x, y, z, w]));
            }
        }
        // Σ_t ⋆_{xt}(⋆_{yz}(f)_t) = ⋆_{xyz}(f) = Σ_t ⋆_{tz}(⋆_{xy}(f)_t)
        if let Some(([a, x, y, z, b], v)) = sampler
            .draw(|s, [a, x, y, z, b]| vec![vec![a, x, y, z, b, s.dual(z), s.dual(y), s.dual(x)]])
        {
            let f = &v[0];
            let whole = collect(calc.star(f, 1, 3, 5)?);
            let mut first = Vec::new();
            for (_, u) in calc.star(f, 2, 2, 5)? {
                first.extend(calc.star(&u, 1, 2, 4)?);
            }
            let mut second = Vec::new();
            for (_, u) in calc.star(f, 1, 2, 6)? {
                second.extend(calc.star(&u, 1, 2, 4)?);
            }
            let at = || spec.word_name(&[a, x, y, z, b]);
            for family in [first, second] {
                let (diff, scale) = family_distance(&collect(family), &whole);
                star2.distance::<S>(diff, scale, at);
            }
        }
        // ⋆_z ⋆_y = ⋆_y ⋆_z, and both resolve ⋆_{yz}
        if let Some(([x, y, z, w], v)) =
            sampler.draw(|s, [x, y, z, w]| vec![vec![x, y, z, w, s.dual(z), s.dual(y)]])
        {
            let f = &v[0];
            let mut yz = Vec::new();
            for (s, u) in calc.star(f, 1, 1, 5)? {
                yz.extend(calc.star(&u, 2, 1, 4)?.into_iter().map(|(t, r)| ((s, t), r)));
            }
            let mut zy = Vec::new();
            for (t, u) in calc.star(f, 2, 1, 4)? {
                zy.extend(calc.star(&u, 1, 1, 5)?.into_iter().map(|(s, r)| ((s, t), r)));
            }
            let at = || spec.word_name(&[x, y, z, w]);
            let (diff, scale) = family_distance(&collect(yz.clone()), &collect(zy));
            star3.distance::<S>(diff, scale, at);
            let mut joint = Vec::new();
            for (_, r) in yz {
                joint.extend(calc.star(&r, 1, 2, 4)?);
            }
            let (diff, scale) = family_distance(&collect(joint), &collect(calc.star(f, 1, 2, 4)?));
            star3.distance::<S>(diff, scale, at);
        }
        // ⋆_x(f) = f for x simple
        if let Some(([a, x, b], v)) = sampler.draw(|s, [a, x, b]| vec![vec![a, x, s.dual(b), s.dual(x)]]) {
            let f = &v[0];
            let (diff, scale) = family_distance(&collect(calc.star(f, 1, 1, 3)?), &collect([(x, f.clone())]));
            star4.distance::<S>(diff, scale, || spec.word_name(&[a, x, b]));
        }
    }
    Ok(vec![
        rotation.finish(),
        delta.finish(),
        symmetry.finish(),
        nondegenerate.finish(),
        dominance.finish(),
        pairing.finish(),
        multiplicative.finish(),
        base_change.finish(),
        composition.finish(),
        star1.finish(),
        star2.finish(),
        star3.finish(),
        star4.finish(),
    ])
}

fn outer<S: Scalar>(u: &[S], v: &[S]) -> Mat<S> {
    Mat::from_rows(u.iter().map(|x| v.iter().map(|y| x.clone() * y.clone()).collect()).collect())
}

/// Pairs the composites `β̄ • ᾱ` against `α • β` for dual bases `α` of
/// `⟨a b t̄⟩` and `β` of `⟨t c⟩`, over all channels `t`.
fn bases_composition<S: Scalar>(calc: &HomCalculus<S>, [a, b, c]: [Label; 3], tr: &mut Tracker<'_>) -> Result<()> {
    let spec = calc.spec();
    let mut family = Vec::new();
    for t in 0..spec.num_simples() {
        let (wa, wb) = (vec![a, b, spec.dual(t)], vec![t, c]);
        if [&wa, &wb].iter().any(|w| calc.check_word(w).is_err() || calc.basis(w).is_empty()) {
            continue;
        }
        let (da, db) = (calc.dual_basis(&wa)?, calc.dual_basis(&wb)?);
        for (alpha, alpha_bar) in da.basis.iter().zip(&da.dual) {
            for (beta, beta_bar) in db.basis.iter().zip(&db.dual) {
                let up = calc.compose_scaled(alpha, beta, 1)?;
                let down = calc.compose_scaled(beta_bar, alpha_bar, 1)?;
                family.push((up, down));
            }
        }
    }
    let at = || spec.word_name(&[a, b, c]);
    tr.count(family.len() != calc.basis(&[a, b, c]).len(), at);
    for (i, (up, _)) in family.iter().enumerate() {
        for (j, (_, down)) in family.iter().enumerate() {
            let target = if i == j { S::one() } else { S::zero() };
            tr.scalar(calc.pair(down, up)? - target, at);
        }
    }
    Ok(())
}

/// The tube algebra: welding associativity, local units, `ε`, `#` and twist inverses.
pub fn tube_suite<S: Scalar>(t: &TubeAlgebra<S>) -> Result<Vec<CheckResult>> {
    let pol = t.tolerance();
    let n = t.dim();
    let e = |i: usize| t.basis_element(i);
    let mut products = vec![Vec::with_capacity(n); n];
    for (i, row) in products.iter_mut().enumerate() {
        for j in 0..n {
            row.push(t.weld(&e(i), &e(j))?);
        }
    }
    let mut assoc = Tracker::new("welding associativity", pol);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = t.weld(&products[i][j], &e(k))?;
                let rhs = t.weld(&e(i), &products[j][k])?;
                assoc.distance::<S>(lhs.sub(&rhs).max_modulus(), lhs.max_modulus().max(rhs.max_modulus()), || {
                    format!("({i}, {j}, {k})")
                });
            }
        }
    }
    let mut symmetric = Tracker::new("epsilon symmetry", pol);
    let mut gram = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let eij = t.epsilon(&products[i][j])?;
            symmetric.scalar(eij.clone() - t.epsilon(&products[j][i])?, || format!("({i}, {j})"));
            gram[(i, j)] = eij;
        }
    }
    let mut nondegenerate = Tracker::new("epsilon nondegeneracy", pol);
    nondegenerate.count(gram.inverse(pol).is_none(), || "Gram matrix of ε".into());

    let mut units = Tracker::new("local units", pol);
    let one = t.local_unit_set(t.labels())?;
    for i in 0..n {
        for side in [t.weld(&one, &e(i))?, t.weld(&e(i), &one)?] {
            units.distance::<S>(side.sub(&e(i)).max_modulus(), 1.0, || format!("basis element {i}"));
        }
    }
    let mut sharp = Tracker::new("involution", pol);
    for i in 0..n {
        let twice = t.sharp(&t.sharp(&e(i))?)?;
        sharp.distance::<S>(twice.sub(&e(i)).max_modulus(), 1.0, || format!("basis element {i}"));
        for j in 0..n {
            let lhs = t.sharp(&products[i][j])?;
            let rhs = t.weld(&t.sharp(&e(j))?, &t.sharp(&e(i))?)?;
            sharp.distance::<S>(lhs.sub(&rhs).max_modulus(), lhs.max_modulus().max(rhs.max_modulus()), || {
                format!("({i}, {j})")
            });
        }
    }
    let mut inverse = Tracker::new("twist inverse", pol);
    for &a in t.labels() {
        let (tau, inv, unit) = (t.twist(a)?, t.twist_inverse(a)?, t.local_unit(a)?);
        for p in [t.weld(&tau, &inv)?, t.weld(&inv, &tau)?] {
            inverse.distance::<S>(p.sub(&unit).max_modulus(), 1.0, || t.spec().name(a).to_string());
        }
    }
    Ok(vec![
        assoc.finish(),
        symmetric.finish(),
        nondegenerate.finish(),
        units.finish(),
        sharp.finish(),
        inverse.finish(),
    ])
}

/// Representations: module laws, the Wedderburn decomposition of the
/// regular representation and its determinism. Returns the simples in
/// canonical order for the monoidal suite.
pub fn rep_suite<S: Scalar>(
    t: &TubeAlgebra<S>,
    opts: &SuiteOptions,
) -> Result<(Vec<CheckResult>, Vec<SimpleModule<S>>)> {
    let pol = t.tolerance();
    let reg = regular(t)?;
    let unit = trivial(t)?;
    let mut laws = Tracker::new("module laws", pol);
    for (name, m) in [("regular", &reg), ("trivial", &unit)] {
        laws.distance::<S>(m.module_law_residual(t)?, 1.0, || name.into());
        laws.distance::<S>(m.locality_residual(t)?, 1.0, || format!("{name} local units"));
    }
    let simples = decompose(t, &reg, opts.seed)?;
    for (k, s) in simples.iter().enumerate() {
        laws.distance::<S>(s.rep.module_law_residual(t)?, 1.0, || format!("simple {k}"));
    }
    let mut wedderburn = Tracker::new("wedderburn", pol);
    let squares: usize = simples.iter().map(|s| s.rep.total_dim().pow(2)).sum();
    wedderburn.count(squares != t.dim(), || format!("Σ dim² = {squares}, dim Tube = {}", t.dim()));
    for (k, s) in simples.iter().enumerate() {
        wedderburn.count(s.multiplicity != s.rep.total_dim(), || format!("multiplicity of simple {k}"));
    }
    let mut determinism = Tracker::new("seed determinism", pol);
    let again = decompose(t, &reg, opts.seed)?;
    let same = again.len() == simples.len()
        && again.iter().zip(&simples).all(|(x, y)| {
            x.rep.dims() == y.rep.dims()
                && x.rep.actions().iter().zip(y.rep.actions()).all(|(p, q)| p.distance(q) == 0.0)
        });
    determinism.count(!same, || "repeated seed".into());
    let other = decompose(t, &reg, opts.seed.wrapping_add(1))?;
    let classes = other.len() == simples.len()
        && other.iter().zip(&simples).all(|(x, y)| {
            x.rep.dims() == y.rep.dims() && x.twist.approx_eq(&y.twist, pol) && !hom(&x.rep, &y.rep, pol).is_empty()
        });
    determinism.count(!classes, || "different seed".into());
    let mut trivial_first = Tracker::new("trivial first", pol);
    trivial_first.count(simples.first().map_or(true, |s| hom(&unit, &s.rep, pol).is_empty()), || {
        "first simple".into()
    });
    Ok((vec![laws.finish(), wedderburn.finish(), determinism.finish(), trivial_first.finish()], simples))
}

/// Residual of `lhs · v` against `rhs · v` on random vectors `v`.
fn on_vector<S: Scalar>(lhs: &Mat<S>, rhs: &Mat<S>, v: &[S]) -> (f64, f64) {
    let (a, b) = (lhs.apply(v), rhs.apply(v));
    let diff = a.iter().zip(&b).map(|(x, y)| (x.clone() - y.clone()).modulus()).fold(0.0, f64::max);
    let scale = a.iter().chain(&b).map(S::modulus).fold(0.0, f64::max);
    (diff, scale)
}

/// Builds and caches products of representations keyed by a description.
struct Products<'t, S: Scalar> {
    t: &'t TubeAlgebra<S>,
    cache: HashMap<String, Tensor<S>>,
}

impl<'t, S: Scalar> Products<'t, S> {
    fn new(t: &'t TubeAlgebra<S>) -> Self {
        Self { t, cache: HashMap::new() }
    }

    fn get(&mut self, key: String, m: &Representation<S>, n: &Representation<S>) -> Result<Tensor<S>> {
        if let Some(p) = self.cache.get(&key) {
            return Ok(p.clone());
        }
        let p = tensor(self.t, m, n)?;
        self.cache.insert(key, p.clone());
        Ok(p)
    }
}

/// The two sides of the pentagon on `((M N) L) K → M (N (L K))`.
fn pentagon<S: Scalar>(pr: &mut Products<'_, S>, r: [&Representation<S>; 4], k: [usize; 4]) -> Result<(Mat<S>, Mat<S>)> {
    let t = pr.t;
    let [m, n, l, q] = r;
    let [a, b, c, d] = k;
    let mn = pr.get(format!("({a}{b})"), m, n)?;
    let mn_l = pr.get(format!("(({a}{b}){c})"), &mn.rep, l)?;
    let mn_l_k = pr.get(format!("((({a}{b}){c}){d})"), &mn_l.rep, q)?;
    let lk = pr.get(format!("({c}{d})"), l, q)?;
    let mn_lk = pr.get(format!("(({a}{b})({c}{d}))"), &mn.rep, &lk.rep)?;
    let n_lk = pr.get(format!("({b}({c}{d}))"), n, &lk.rep)?;
    let m_n_lk = pr.get(format!("({a}({b}({c}{d})))"), m, &n_lk.rep)?;
    let nl = pr.get(format!("({b}{c})"), n, l)?;
    let m_nl = pr.get(format!("({a}({b}{c}))"), m, &nl.rep)?;
    let m_nl_k = pr.get(format!("(({a}({b}{c})){d})"), &m_nl.rep, q)?;
    let nl_k = pr.get(format!("(({b}{c}){d})"), &nl.rep, q)?;
    let m_nl_k2 = pr.get(format!("({a}(({b}{c}){d}))"), m, &nl_k.rep)?;
    let lhs = associator(t, &mn, &mn_lk, &n_lk, &m_n_lk)?.matmul(&associator(t, &mn_l, &mn_l_k, &lk, &mn_lk)?);
    let a1 = tensor_maps(&mn_l_k, &m_nl_k, &associator(t, &mn, &mn_l, &nl, &m_nl)?, &Mat::identity(q.total_dim()))?;
    let a2 = associator(t, &m_nl, &m_nl_k, &nl_k, &m_nl_k2)?;
    let a3 = tensor_maps(&m_nl_k2, &m_n_lk, &Mat::identity(m.total_dim()), &associator(t, &nl, &nl_k, &lk, &n_lk)?)?;
    Ok((lhs, a3.matmul(&a2).matmul(&a1)))
}

/// The two sides of the triangle on `M □ N → M □ (𝕀 □ N)`.
fn triangle<S: Scalar>(
    pr: &mut Products<'_, S>,
    unit: &Representation<S>,
    r: [&Representation<S>; 2],
    k: [usize; 2],
) -> Result<(Mat<S>, Mat<S>)> {
    let t = pr.t;
    let [m, n] = r;
    let [a, b] = k;
    let mn = pr.get(format!("({a}{b})"), m, n)?;
    let m_i = pr.get(format!("({a}I)"), m, unit)?;
    let m_i_n = pr.get(format!("(({a}I){b})"), &m_i.rep, n)?;
    let i_n = pr.get(format!("(I{b})"), unit, n)?;
    let m_in = pr.get(format!("({a}(I{b}))"), m, &i_n.rep)?;
    let rho = tensor_maps(&mn, &m_i_n, &right_unitor(t, &m_i)?, &Mat::identity(n.total_dim()))?;
    let lhs = associator(t, &m_i, &m_i_n, &i_n, &m_in)?.matmul(&rho);
    let rhs = tensor_maps(&mn, &m_in, &Mat::identity(m.total_dim()), &left_unitor(t, &i_n)?)?;
    Ok((lhs, rhs))
}

/// Both hexagons, as two pairs of sides.
fn hexagons<S: Scalar>(
    pr: &mut Products<'_, S>,
    r: [&Representation<S>; 3],
    k: [usize; 3],
) -> Result<[(Mat<S>, Mat<S>); 2]> {
    let t = pr.t;
    let [m, n, l] = r;
    let [a, b, c] = k;
    let mn = pr.get(format!("({a}{b})"), m, n)?;
    let mn_l = pr.get(format!("(({a}{b}){c})"), &mn.rep, l)?;
    let nl = pr.get(format!("({b}{c})"), n, l)?;
    let m_nl = pr.get(format!("({a}({b}{c}))"), m, &nl.rep)?;
    let nl_m = pr.get(format!("(({b}{c}){a})"), &nl.rep, m)?;
    let lm = pr.get(format!("({c}{a})"), l, m)?;
    let n_lm = pr.get(format!("({b}({c}{a}))"), n, &lm.rep)?;
    let nm = pr.get(format!("({b}{a})"), n, m)?;
    let nm_l = pr.get(format!("(({b}{a}){c})"), &nm.rep, l)?;
    let ml = pr.get(format!("({a}{c})"), m, l)?;
    let n_ml = pr.get(format!("({b}({a}{c}))"), n, &ml.rep)?;
    let id = |r: &Representation<S>| Mat::<S>::identity(r.total_dim());
    let first = (
        associator(t, &nl, &nl_m, &lm, &n_lm)?
            .matmul(&braiding(t, &m_nl, &nl_m)?)
            .matmul(&associator(t, &mn, &mn_l, &nl, &m_nl)?),
        tensor_maps(&n_ml, &n_lm, &id(n), &braiding(t, &ml, &lm)?)?
            .matmul(&associator(t, &nm, &nm_l, &ml, &n_ml)?)
            .matmul(&tensor_maps(&mn_l, &nm_l, &braiding(t, &mn, &nm)?, &id(l))?),
    );
    let l_mn = pr.get(format!("({c}({a}{b}))"), l, &mn.rep)?;
    let lm_n = pr.get(format!("(({c}{a}){b})"), &lm.rep, n)?;
    let ln = pr.get(format!("({c}{b})"), l, n)?;
    let m_ln = pr.get(format!("({a}({c}{b}))"), m, &ln.rep)?;
    let ml_n = pr.get(format!("(({a}{c}){b})"), &ml.rep, n)?;
    let second = (
        associator_inverse(t, &lm, &lm_n, &mn, &l_mn)?
            .matmul(&braiding(t, &mn_l, &l_mn)?)
            .matmul(&associator_inverse(t, &mn, &mn_l, &nl, &m_nl)?),
        tensor_maps(&ml_n, &lm_n, &braiding(t, &ml, &lm)?, &id(n))?
            .matmul(&associator_inverse(t, &ml, &ml_n, &ln, &m_ln)?)
            .matmul(&tensor_maps(&m_nl, &m_ln, &id(m), &braiding(t, &nl, &ln)?)?),
    );
    Ok([first, second])
}

/// The two snake composites on `M` and on `M̄`, each compared with the identity.
fn snakes<S: Scalar>(t: &TubeAlgebra<S>, unit: &Representation<S>, m: &Representation<S>) -> Result<[Mat<S>; 2]> {
    let md = dual(t, m)?;
    let m_md = tensor(t, m, &md)?;
    let md_m = tensor(t, &md, m)?;
    let (coev, ev) = (coevaluation(t, &m_md, unit)?, evaluation(t, &md_m, unit)?);
    let id = |r: &Representation<S>| Mat::<S>::identity(r.total_dim());
    let invert = |x: Mat<S>| {
        x.inverse(t.tolerance())
            .ok_or_else(|| crate::Error::Decomposition("a unitor is not invertible".into()))
    };

    let i_m = tensor(t, unit, m)?;
    let m_md_m = tensor(t, &m_md.rep, m)?;
    let m_mdm = tensor(t, m, &md_m.rep)?;
    let m_i = tensor(t, m, unit)?;
    let first = invert(right_unitor(t, &m_i)?)?
        .matmul(&tensor_maps(&m_mdm, &m_i, &id(m), &ev)?)
        .matmul(&associator(t, &m_md, &m_md_m, &md_m, &m_mdm)?)
        .matmul(&tensor_maps(&i_m, &m_md_m, &coev, &id(m))?)
        .matmul(&left_unitor(t, &i_m)?);

    let md_i = tensor(t, &md, unit)?;
    let md_mmd = tensor(t, &md, &m_md.rep)?;
    let mdm_md = tensor(t, &md_m.rep, &md)?;
    let i_md = tensor(t, unit, &md)?;
    let second = invert(left_unitor(t, &i_md)?)?
        .matmul(&tensor_maps(&mdm_md, &i_md, &ev, &id(&md))?)
        .matmul(&associator_inverse(t, &md_m, &mdm_md, &m_md, &md_mmd)?)
        .matmul(&tensor_maps(&md_i, &md_mmd, &id(&md), &coev)?)
        .matmul(&right_unitor(t, &md_i)?);
    Ok([first, second])
}

/// A random endomorphism of `m`.
fn random_endomorphism<S: Scalar>(
    sampler: &mut ChaCha8Rng,
    m: &Representation<S>,
    pol: &crate::scalars::TolerancePolicy,
) -> Mat<S> {
    hom(m, m, pol).iter().fold(Mat::zeros(m.total_dim(), m.total_dim()), |acc, x| {
        acc.add(&x.scale(&S::from_i64(sampler.gen_range(-3..=3))))
    })
}

/// The monoidal structure: quotient correctness, coherence, rigidity,
/// naturality and modular data, on products of the given simples.
pub fn monoidal_suite<S: Scalar>(
    t: &TubeAlgebra<S>,
    simples: &[SimpleModule<S>],
    opts: &SuiteOptions,
) -> Result<Vec<CheckResult>> {
    let pol = t.tolerance();
    let r = simples.len();
    let unit = trivial(t)?;
    let reps: Vec<&Representation<S>> = simples.iter().map(|s| &s.rep).collect();
    let data = modular_data(t, simples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pr = Products::new(t);

    let mut closure = Tracker::new("relation closure", pol);
    let mut coset = Tracker::new("canonical form coset", pol);
    let mut dims = Tracker::new("dimension triangle", pol);
    for i in 0..r {
        for j in 0..r {
            let p = pr.get(format!("({i}{j})"), reps[i], reps[j])?;
            let at = || format!("S{i} □ S{j}");
            closure.distance::<S>(p.closure_residual, 1.0, at);
            for (g, q) in p.grades.iter().enumerate() {
                let quotient = q.span.len() - q.relations.rows();
                let predicted: usize = (0..r).map(|k| data.fusion.get(i, j, k) * simples[k].rep.dims()[g]).sum();
                dims.count(quotient != q.dim() || q.dim() != p.dims()[g] || predicted != q.dim(), || {
                    format!("{} in grade {g}: span - relations {quotient}, quotient {}, fusion {predicted}", at(), q.dim())
                });
                if q.span.is_empty() {
                    continue;
                }
                let v: Vec<S> = (0..q.span.len()).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect();
                let image = q.projection.apply(&v);
                let mut lifted = vec![S::zero(); q.span.len()];
                for (f, c) in q.free.iter().zip(&image) {
                    lifted[*f] = c.clone();
                }
                let diff: Vec<S> = v.iter().zip(&lifted).map(|(a, b)| a.clone() - b.clone()).collect();
                let mut rows: Vec<Vec<S>> = (0..q.relations.rows()).map(|k| q.relations.row(k).to_vec()).collect();
                let base = rows.len();
                rows.push(diff);
                let rank = Mat::from_rows(rows).rank(pol);
                coset.count(rank != base, || format!("{} in grade {g}", at()));
                let round_trip = q.projection.apply(&lifted);
                let off = round_trip.iter().zip(&image).map(|(a, b)| (a.clone() - b.clone()).modulus()).fold(0.0, f64::max);
                coset.distance::<S>(off, 1.0, || format!("{} idempotence in grade {g}", at()));
            }
        }
    }

    let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..r);
    let random_vector = |rng: &mut ChaCha8Rng, n: usize| -> Vec<S> {
        (0..n).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect()
    };
    let mut pent = Tracker::new("pentagon", pol);
    let mut tri = Tracker::new("triangle", pol);
    let mut hex = Tracker::new("hexagons", pol);
    let mut ribbon = Tracker::new("ribbon", pol);
    let mut inverse = Tracker::new("associator inverse", pol);
    let mut pent_cache: HashMap<[usize; 4], (Mat<S>, Mat<S>)> = HashMap::new();
    let mut tri_cache: HashMap<[usize; 2], (Mat<S>, Mat<S>)> = HashMap::new();
    let mut hex_cache: HashMap<[usize; 3], [(Mat<S>, Mat<S>); 2]> = HashMap::new();
    let mut ribbon_cache: HashMap<[usize; 2], (Mat<S>, Mat<S>)> = HashMap::new();
    for _ in 0..opts.product_vectors {
        let k = [pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        if !pent_cache.contains_key(&k) {
            let sides = pentagon(&mut pr, [reps[k[0]], reps[k[1]], reps[k[2]], reps[k[3]]], k)?;
            pent_cache.insert(k, sides);
        }
        let (lhs, rhs) = &pent_cache[&k];
        let v = random_vector(&mut rng, lhs.cols());
        let (diff, scale) = on_vector(lhs, rhs, &v);
        pent.distance::<S>(diff, scale, || format!("{k:?}"));

        let k2 = [k[0], k[1]];
        if !tri_cache.contains_key(&k2) {
            let sides = triangle(&mut pr, &unit, [reps[k2[0]], reps[k2[1]]], k2)?;
            tri_cache.insert(k2, sides);
        }
        let (lhs, rhs) = &tri_cache[&k2];
        let v = random_vector(&mut rng, lhs.cols());
        let (diff, scale) = on_vector(lhs, rhs, &v);
        tri.distance::<S>(diff, scale, || format!("{k2:?}"));

        let k3 = [k[1], k[2], k[3]];
        if !hex_cache.contains_key(&k3) {
            let sides = hexagons(&mut pr, [reps[k3[0]], reps[k3[1]], reps[k3[2]]], k3)?;
            hex_cache.insert(k3, sides);
        }
        for (lhs, rhs) in &hex_cache[&k3] {
            let v = random_vector(&mut rng, lhs.cols());
            let (diff, scale) = on_vector(lhs, rhs, &v);
            hex.distance::<S>(diff, scale, || format!("{k3:?}"));
        }

        let k2 = [k[2], k[3]];
        if !ribbon_cache.contains_key(&k2) {
            let (m, n) = (reps[k2[0]], reps[k2[1]]);
            let mn = pr.get(format!("({}{})", k2[0], k2[1]), m, n)?;
            let nm = pr.get(format!("({}{})", k2[1], k2[0]), n, m)?;
            let thetas = tensor_maps(&mn, &mn, &twist(t, m)?, &twist(t, n)?)?;
            let lhs = thetas.matmul(&braiding(t, &nm, &mn)?).matmul(&braiding(t, &mn, &nm)?);
            ribbon_cache.insert(k2, (lhs, twist(t, &mn.rep)?));
        }
        let (lhs, rhs) = &ribbon_cache[&k2];
        let v = random_vector(&mut rng, lhs.cols());
        let (diff, scale) = on_vector(lhs, rhs, &v);
        ribbon.distance::<S>(diff, scale, || format!("{k2:?}"));

        let k3 = [k[0], k[2], k[1]];
        let mn = pr.get(format!("({}{})", k3[0], k3[1]), reps[k3[0]], reps[k3[1]])?;
        let mn_l = pr.get(format!("(({}{}){})", k3[0], k3[1], k3[2]), &mn.rep, reps[k3[2]])?;
        let nl = pr.get(format!("({}{})", k3[1], k3[2]), reps[k3[1]], reps[k3[2]])?;
        let m_nl = pr.get(format!("({}({}{}))", k3[0], k3[1], k3[2]), reps[k3[0]], &nl.rep)?;
        let round = associator_inverse(t, &mn, &mn_l, &nl, &m_nl)?.matmul(&associator(t, &mn, &mn_l, &nl, &m_nl)?);
        inverse.distance::<S>(round.distance(&Mat::identity(round.rows())), 1.0, || format!("{k3:?}"));
    }

    let mut snake = Tracker::new("snakes", pol);
    for (k, m) in reps.iter().enumerate() {
        for (side, s) in snakes(t, &unit, m)?.iter().enumerate() {
            snake.distance::<S>(s.distance(&Mat::identity(s.rows())), 1.0, || format!("simple {k}, snake {side}"));
        }
    }

    let mut natural = Tracker::new("naturality", pol);
    for draw in 0..opts.naturality_draws {
        let idx: [usize; 6] = std::array::from_fn(|_| pick(&mut rng));
        let sums: Vec<Representation<S>> =
            (0..3).map(|p| reps[idx[2 * p]].direct_sum(reps[idx[2 * p + 1]])).collect();
        let (m, n, l) = (&sums[0], &sums[1], &sums[2]);
        let (f, g, h) = (
            random_endomorphism(&mut rng, m, pol),
            random_endomorphism(&mut rng, n, pol),
            random_endomorphism(&mut rng, l, pol),
        );
        let at = || format!("draw {draw}, summands {idx:?}");
        let mn = tensor(t, m, n)?;
        let nm = tensor(t, n, m)?;
        let b = braiding(t, &mn, &nm)?;
        let lhs = b.matmul(&tensor_maps(&mn, &mn, &f, &g)?);
        let rhs = tensor_maps(&nm, &nm, &g, &f)?.matmul(&b);
        natural.distance::<S>(lhs.distance(&rhs), lhs.max_modulus(), at);
        let theta = twist(t, m)?;
        natural.distance::<S>(theta.matmul(&f).distance(&f.matmul(&theta)), 1.0, at);
        let mn_l = tensor(t, &mn.rep, l)?;
        let nl = tensor(t, n, l)?;
        let m_nl = tensor(t, m, &nl.rep)?;
        let a = associator(t, &mn, &mn_l, &nl, &m_nl)?;
        let lhs = a.matmul(&tensor_maps(&mn_l, &mn_l, &tensor_maps(&mn, &mn, &f, &g)?, &h)?);
        let rhs = tensor_maps(&m_nl, &m_nl, &f, &tensor_maps(&nl, &nl, &g, &h)?)?.matmul(&a);
        natural.distance::<S>(lhs.distance(&rhs), lhs.max_modulus(), at);
    }

    let mut modular = Tracker::new("modular data", pol);
    modular.distance::<S>(data.s.distance(&data.s.transpose()), 1.0, || "S symmetry".into());
    for j in 0..r {
        for k in 0..r {
            modular.count(data.fusion.get(0, j, k) != usize::from(j == k), || format!("unit row N_0{j}^{k}"));
            for i in 0..r {
                modular.count(data.fusion.get(i, j, k) != data.fusion.get(j, i, k), || {
                    format!("N_{i}{j}^{k} = N_{j}{i}^{k}")
                });
            }
        }
        let row = data.s[(0, j)].clone() - data.dims[j].clone() / data.normalization.clone();
        modular.scalar(row, || format!("S_0{j} = d_{j} / D"));
    }
    if data.is_nondegenerate(pol) {
        modular.distance::<S>(data.verlinde_residual(), 1.0, || "Verlinde".into());
    } else {
        modular.count(true, || "S is singular".into());
    }

    Ok(vec![
        closure.finish(),
        coset.finish(),
        dims.finish(),
        pent.finish(),
        tri.finish(),
        hex.finish(),
        ribbon.finish(),
        inverse.finish(),
        snake.finish(),
        natural.finish(),
        modular.finish(),
    ])
}
