//! The braided monoidal structure on representations of the tube algebra.
//!
//! The tensor product `M □ N` is graded by the diagonal simples. Its grade
//! `c` is the quotient of `⊕_{a,b} M_a ⊗ N_b ⊗ Π_{a,b;c}`, where
//! `Π_{a,b;c} = ⊕_x H⟨c̄ x̄ a b x⟩` is the space of pairs of pants, by the
//! relations that slide a tube acting on `M` or `N` into the pants.
//!
//! The spanning coordinates with a trivial loop label come last, so the
//! quotient basis consists of classes of elementary tensors whose pants
//! carry the trivial loop.

mod modular;
mod structure;

pub use modular::{fusion_table, modular_data, multiplicities, quantum_dimension, FusionTable, ModularData};
pub use structure::{
    associator, associator_inverse, braiding, coevaluation, dual, evaluation, left_unitor, right_unitor, tensor_maps,
    twist,
};

use std::collections::HashMap;

use crate::category::Label;
use crate::error::{Error, Result};
use crate::homspace::{HomCalculus, HomVector, Word};
use crate::linalg::Mat;
use crate::rep::Representation;
use crate::scalars::{Scalar, TolerancePolicy};
use crate::tube::TubeAlgebra;

/// An elementary tensor `m ⊗ n ⊗ π` with `m`, `n` indices into the
/// factors and `π ∈ H⟨c̄ x̄ a b x⟩`.
#[derive(Clone, Debug)]
pub struct ProductVector<S> {
    pub m: usize,
    pub n: usize,
    pub pi: HomVector<S>,
}

/// One spanning coordinate of `M_a ⊗ N_b ⊗ H⟨c̄ x̄ a b x⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpanEntry {
    pub a: Label,
    pub b: Label,
    pub x: Label,
    pub tree: usize,
    pub m: usize,
    pub n: usize,
}

/// The quotient presentation of one grade.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<S> {
    pub c: Label,
    pub span: Vec<SpanEntry>,
    /// Spanning coordinates whose classes form the quotient basis.
    pub free: Vec<usize>,
    /// Projection from spanning coordinates to quotient coordinates.
    pub projection: Mat<S>,
    /// A basis of the relation span, one row per relation.
    pub relations: Mat<S>,
    index: HashMap<(Label, Label, Label, usize, usize, usize), usize>,
}

impl<S: Scalar> QuotientPresentation<S> {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    fn position(&self, e: &SpanEntry) -> Option<usize> {
        self.index.get(&(e.a, e.b, e.x, e.tree, e.m, e.n)).copied()
    }
}

/// `M □ N` with its quotient presentation.
#[derive(Clone, Debug)]
pub struct Tensor<S: Scalar> {
    calc: std::sync::Arc<HomCalculus<S>>,
    pub left: Representation<S>,
    pub right: Representation<S>,
    pub grades: Vec<QuotientPresentation<S>>,
    pub rep: Representation<S>,
    /// Largest violation of relation closure under the tube action.
    pub closure_residual: f64,
}

/// The pants word `c̄ x̄ a b x`.
pub fn pants_word<S: Scalar>(calc: &HomCalculus<S>, a: Label, b: Label, c: Label, x: Label) -> Word {
    let spec = calc.spec();
    vec![spec.dual(c), spec.dual(x), a, b, x]
}

/// Loop labels `x` for which `H⟨c̄ x̄ a b x⟩` is composable.
fn loops<S: Scalar>(calc: &HomCalculus<S>, a: Label, b: Label, c: Label) -> Vec<Label> {
    (0..calc.spec().num_simples())
        .filter(|&x| calc.check_word(&pants_word(calc, a, b, c, x)).is_ok())
        .collect()
}

/// Glues a tube `f ∈ H⟨ā ū a' u⟩` on the hole `a` and a tube
/// `g ∈ H⟨b̄ ū b' u⟩` on the hole `b`, joined along their common loop `u`,
/// into `π ∈ H⟨c̄ x̄ a b x⟩`, and resolves the two loops into simples.
fn slide_pair<S: Scalar>(
    calc: &HomCalculus<S>,
    pi: &HomVector<S>,
    f: &HomVector<S>,
    g: &HomVector<S>,
) -> Result<Vec<(Label, HomVector<S>)>> {
    let joined = calc.rotate_by(&calc.compose(f, &calc.rotate(g), 1)?, 5);
    let v = calc.glue(pi, 2, 2, &joined)?;
    calc.star(&v, 5, 2, 1)
}

/// Tube basis elements `T_{a';a}` with target grade `a`, as Hom vectors with their loop label.
fn tubes_into<S: Scalar>(t: &TubeAlgebra<S>, a: Label) -> impl Iterator<Item = (usize, Label, HomVector<S>)> + '_ {
    let calc = t.calculus();
    t.basis()
        .iter()
        .enumerate()
        .filter(move |(_, idx)| idx.b == a)
        .map(move |(i, idx)| (i, idx.a, calc.basis_vector(&t.word(idx.a, idx.b, idx.x), idx.tree)))
}

/// Pairs `(β, β̄)` of dual bases of `H⟨b̄ ū b' u⟩` over all diagonal `b'`,
/// with `β̄` rotated into a tube `T_{b;b'}` with loop `ū`.
fn dual_tubes<S: Scalar>(
    t: &TubeAlgebra<S>,
    b: Label,
    u: Label,
) -> Result<Vec<(Label, HomVector<S>, crate::tube::TubeElement<S>)>> {
    let calc = t.calculus();
    let spec = t.spec();
    let mut out = Vec::new();
    for &b2 in t.labels() {
        let word = vec![spec.dual(b), spec.dual(u), b2, u];
        if calc.check_word(&word).is_err() {
            continue;
        }
        let db = calc.dual_basis(&word)?;
        for (beta, beta_bar) in db.basis.iter().zip(&db.dual) {
            let tube = t.from_hom(b, b2, spec.dual(u), &calc.rotate(beta_bar))?;
            out.push((b2, beta.clone(), tube));
        }
    }
    Ok(out)
}

impl<S: Scalar> Tensor<S> {
    pub fn dims(&self) -> &[usize] {
        self.rep.dims()
    }

    /// Quotient coordinates, in the whole of `M □ N`, of a combination of elementary tensors.
    pub fn project(&self, terms: &[(S, ProductVector<S>)]) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.rep.total_dim()];
        for (s, v) in terms {
            self.accumulate(&mut out, s, v)?;
        }
        Ok(out)
    }

    fn accumulate(&self, out: &mut [S], s: &S, v: &ProductVector<S>) -> Result<()> {
        let spec = self.calc.spec();
        let w = &v.pi.word;
        let (c, x, a, b) = (spec.dual(w[0]), w[4], w[2], w[3]);
        let g = self
            .rep
            .grade_position(c)
            .ok_or_else(|| Error::WordMismatch(format!("{} is not a grade", spec.name(c))))?;
        let q = &self.grades[g];
        let offset = self.rep.range(g).start;
        for (tree, coeff) in v.pi.coeffs.iter().enumerate() {
            if coeff.is_exact_zero() {
                continue;
            }
            let e = SpanEntry { a, b, x, tree, m: v.m, n: v.n };
            let pos = q
                .position(&e)
                .ok_or_else(|| Error::WordMismatch(format!("elementary tensor outside the product: {e:?}")))?;
            let k = coeff.clone() * s.clone();
            for r in 0..q.dim() {
                let p = &q.projection[(r, pos)];
                if !p.is_exact_zero() {
                    out[offset + r] = out[offset + r].clone() + p.clone() * k.clone();
                }
            }
        }
        Ok(())
    }

    /// The elementary tensor representing the `k`-th quotient basis vector.
    pub fn basis_vector(&self, k: usize) -> ProductVector<S> {
        let g = (0..self.grades.len()).find(|&g| self.rep.range(g).contains(&k)).expect("index in range");
        let q = &self.grades[g];
        let e = q.span[q.free[k - self.rep.range(g).start]];
        let word = pants_word(&self.calc, e.a, e.b, q.c, e.x);
        ProductVector { m: e.m, n: e.n, pi: self.calc.basis_vector(&word, e.tree) }
    }

    /// Quotient coordinates of an elementary tensor, that is the combination
    /// of trivial-loop representatives it is equivalent to.
    pub fn canonical_form(&self, v: &ProductVector<S>) -> Result<Vec<S>> {
        self.project(&[(S::one(), v.clone())])
    }

    /// Whether a vector of spanning coordinates of grade `g` lies in the relation span.
    pub fn in_relation_span(&self, g: usize, v: &[S], pol: &TolerancePolicy) -> bool {
        let q = &self.grades[g];
        q.projection.apply(v).iter().all(|c| c.negligible(pol, 1.0))
    }
}

/// Builds `M □ N`.
pub fn tensor<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>, n: &Representation<S>) -> Result<Tensor<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let pol = *t.tolerance();
    let mut grades = Vec::new();
    let mut dims = Vec::new();
    let mut spans = Vec::new();
    for &c in t.labels() {
        let mut nontrivial = Vec::new();
        let mut trivial = Vec::new();
        for &a in t.labels() {
            for &b in t.labels() {
                for x in loops(calc, a, b, c) {
                    let len = calc.basis(&pants_word(calc, a, b, c, x)).len();
                    for tree in 0..len {
                        for mi in m.range_of(a) {
                            for ni in n.range_of(b) {
                                let e = SpanEntry { a, b, x, tree, m: mi, n: ni };
                                if spec.is_unit(x) { trivial.push(e) } else { nontrivial.push(e) }
                            }
                        }
                    }
                }
            }
        }
        nontrivial.extend(trivial);
        let index = nontrivial.iter().enumerate().map(|(i, e)| ((e.a, e.b, e.x, e.tree, e.m, e.n), i)).collect();
        spans.push((c, nontrivial, index));
    }
    for (c, span, index) in spans {
        let mut q = QuotientPresentation {
            c,
            span,
            free: Vec::new(),
            projection: Mat::zeros(0, 0),
            relations: Mat::zeros(0, 0),
            index,
        };
        let rows = relations(t, m, n, &q)?;
        let width = q.span.len();
        let raw = Mat::from_rows(if rows.is_empty() { Vec::new() } else { rows });
        let raw = if raw.rows() == 0 { Mat::zeros(0, width) } else { raw };
        let (rref, pivots) = raw.rref(&pol);
        let free: Vec<usize> = (0..width).filter(|j| !pivots.contains(j)).collect();
        let mut proj = Mat::zeros(free.len(), width);
        for (r, &f) in free.iter().enumerate() {
            proj[(r, f)] = S::one();
        }
        for (i, &p) in pivots.iter().enumerate() {
            for (r, &f) in free.iter().enumerate() {
                proj[(r, p)] = -rref[(i, f)].clone();
            }
        }
        let rank = pivots.len();
        q.relations = Mat::from_rows((0..rank).map(|i| rref.row(i).to_vec()).collect());
        if q.relations.rows() == 0 {
            q.relations = Mat::zeros(0, width);
        }
        if let Some(&f) = free.iter().find(|&&f| !spec.is_unit(q.span[f].x)) {
            return Err(Error::Precision(format!(
                "quotient of grade {} keeps a nontrivial loop coordinate {:?}",
                spec.name(c),
                q.span[f]
            )));
        }
        q.free = free;
        q.projection = proj;
        dims.push(q.dim());
        grades.push(q);
    }
    let mut tensor = Tensor {
        calc: calc.clone(),
        left: m.clone(),
        right: n.clone(),
        grades,
        rep: Representation::new(t.labels().to_vec(), dims.clone(), Vec::new()),
        closure_residual: 0.0,
    };
    let total = tensor.rep.total_dim();
    let mut action = Vec::with_capacity(t.dim());
    let mut residual: f64 = 0.0;
    for j in 0..t.dim() {
        let idx = t.basis()[j];
        let mut a = Mat::zeros(total, total);
        let (Some(gc), Some(gd)) = (tensor.rep.grade_position(idx.a), tensor.rep.grade_position(idx.b)) else {
            action.push(a);
            continue;
        };
        let q = &tensor.grades[gc];
        let act_entry = |e: &SpanEntry| -> Result<Vec<(S, ProductVector<S>)>> {
            let pi = calc.basis_vector(&pants_word(calc, e.a, e.b, q.c, e.x), e.tree);
            Ok(t.weld_onto(&pi, j)?
                .into_iter()
                .map(|(_, v)| (S::one(), ProductVector { m: e.m, n: e.n, pi: v }))
                .collect())
        };
        let off_c = tensor.rep.range(gc).start;
        for (col, &f) in q.free.iter().enumerate() {
            let img = tensor.project(&act_entry(&q.span[f])?)?;
            for (r, v) in img.into_iter().enumerate() {
                a[(r, off_c + col)] = v;
            }
        }
        for r in 0..q.relations.rows() {
            let mut terms = Vec::new();
            for (k, e) in q.span.iter().enumerate() {
                let coeff = &q.relations[(r, k)];
                if !coeff.is_exact_zero() {
                    for (s, v) in act_entry(e)? {
                        terms.push((s * coeff.clone(), v));
                    }
                }
            }
            let img = tensor.project(&terms)?;
            residual = residual.max(crate::linalg::max_modulus(&img));
        }
        let _ = gd;
        action.push(a);
    }
    tensor.rep = Representation::new(t.labels().to_vec(), dims, action);
    tensor.closure_residual = residual;
    Ok(tensor)
}

/// Spanning-coordinate rows of all relation generators of one grade.
fn relations<S: Scalar>(
    t: &TubeAlgebra<S>,
    m: &Representation<S>,
    n: &Representation<S>,
    q: &QuotientPresentation<S>,
) -> Result<Vec<Vec<S>>> {
    let calc = t.calculus();
    let spec = t.spec();
    let width = q.span.len();
    let mut rows = Vec::new();
    let add = |row: &mut Vec<S>, s: S, mi: usize, ni: usize, pi: &HomVector<S>| -> Result<()> {
        let w = &pi.word;
        for (tree, coeff) in pi.coeffs.iter().enumerate() {
            if coeff.is_exact_zero() {
                continue;
            }
            let e = SpanEntry { a: w[2], b: w[3], x: w[4], tree, m: mi, n: ni };
            let pos = q.position(&e).ok_or_else(|| Error::WordMismatch(format!("relation leaves the span: {e:?}")))?;
            row[pos] = row[pos].clone() + coeff.clone() * s.clone();
        }
        Ok(())
    };
    let mut pants: Vec<(Label, Label, Label, HomVector<S>)> = Vec::new();
    for &a in t.labels() {
        for &b in t.labels() {
            for x in loops(calc, a, b, q.c) {
                let word = pants_word(calc, a, b, q.c, x);
                for tree in 0..calc.basis(&word).len() {
                    pants.push((a, b, x, calc.basis_vector(&word, tree)));
                }
            }
        }
    }
    for (a, b, _, pi) in &pants {
        let (a, b) = (*a, *b);
        // a tube acting on the left factor
        for (fi, a2, f) in tubes_into(t, a) {
            let u = t.basis()[fi].x;
            let act_m = m.action(fi);
            let duals = dual_tubes(t, b, u)?;
            for mi in m.range_of(a2) {
                for ni in n.range_of(b) {
                    let mut row = vec![S::zero(); width];
                    for l in m.range_of(a) {
                        let c = act_m[(l, mi)].clone();
                        if !c.is_exact_zero() {
                            add(&mut row, c, l, ni, pi)?;
                        }
                    }
                    for (b2, beta, beta_bar) in &duals {
                        let w = spec.trace_dim(*b2) / spec.trace_dim(u);
                        let act_n = n.act(beta_bar);
                        let slid = slide_pair(calc, pi, &f, beta)?;
                        for n2 in n.range_of(*b2) {
                            let c = act_n[(n2, ni)].clone();
                            if c.is_exact_zero() {
                                continue;
                            }
                            for (_, v) in &slid {
                                add(&mut row, -(c.clone() * w.clone()), mi, n2, v)?;
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
        // a tube acting on the right factor
        for (gi, b2, g) in tubes_into(t, b) {
            let v = t.basis()[gi].x;
            let act_n = n.action(gi);
            let duals = dual_tubes(t, a, v)?;
            for mi in m.range_of(a) {
                for ni in n.range_of(b2) {
                    let mut row = vec![S::zero(); width];
                    for l in n.range_of(b) {
                        let c = act_n[(l, ni)].clone();
                        if !c.is_exact_zero() {
                            add(&mut row, c, mi, l, pi)?;
                        }
                    }
                    for (a2, alpha, alpha_bar) in &duals {
                        let w = spec.trace_dim(*a2) / spec.trace_dim(v);
                        let act_m = m.act(alpha_bar);
                        let slid = slide_pair(calc, pi, alpha, &g)?;
                        for m2 in m.range_of(*a2) {
                            let c = act_m[(m2, mi)].clone();
                            if c.is_exact_zero() {
                                continue;
                            }
                            for (_, vv) in &slid {
                                add(&mut row, -(c.clone() * w.clone()), m2, ni, vv)?;
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}
