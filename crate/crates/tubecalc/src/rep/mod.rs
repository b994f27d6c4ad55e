//! Right representations of the tube algebra.
//!
//! A representation `M = ⊕_a M_a` is graded by the diagonal simples of the
//! tube algebra. A tube element `f ∈ T_{a;b}` acts as a linear map
//! `M_a → M_b`, written `m ↦ m.f`; its matrix acts on column vectors of the
//! whole space, so `m.(f·g) = (m.f).g` reads `A_{f·g} = A_g A_f`.

mod decompose;
mod halfbraiding;

use std::ops::Range;

use crate::category::Label;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Scalar, TolerancePolicy};
use crate::tube::{TubeAlgebra, TubeElement};

pub use decompose::{canonical_sort, decompose, SimpleModule};
pub use halfbraiding::{
    braid_across, central_rep, from_halfbraiding, source_basis, target_basis, CentralBasisEntry, CentralRep, Decorated,
    HalfBraidingData, HalfBraidingFile, LegTag, SigmaEntry, SigmaIndex,
};

/// A finite-dimensional graded right module over a tube algebra.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    labels: Vec<Label>,
    dims: Vec<usize>,
    action: Vec<Mat<S>>,
}

impl<S: Scalar> Representation<S> {
    /// Builds a representation from grade dimensions (in the order of the
    /// algebra's labels) and one action matrix per tube basis element.
    pub fn new(labels: Vec<Label>, dims: Vec<usize>, action: Vec<Mat<S>>) -> Self {
        assert_eq!(labels.len(), dims.len(), "one dimension per grade");
        let total: usize = dims.iter().sum();
        assert!(action.iter().all(|a| a.rows() == total && a.cols() == total), "action matrix size");
        Self { labels, dims, action }
    }

    /// The zero representation.
    pub fn zero(t: &TubeAlgebra<S>) -> Self {
        Self::new(t.labels().to_vec(), vec![0; t.labels().len()], vec![Mat::zeros(0, 0); t.dim()])
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `dim M_a` for each grade, in label order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Position of a grade label, if it is one.
    pub fn grade_position(&self, a: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == a)
    }

    /// `dim M_a`.
    pub fn dim_of(&self, a: Label) -> usize {
        self.grade_position(a).map_or(0, |g| self.dims[g])
    }

    /// Coordinates of `M_a` inside the total space.
    pub fn range(&self, g: usize) -> Range<usize> {
        let start: usize = self.dims[..g].iter().sum();
        start..start + self.dims[g]
    }

    /// Coordinates of the grade labelled `a`.
    pub fn range_of(&self, a: Label) -> Range<usize> {
        self.grade_position(a).map_or(0..0, |g| self.range(g))
    }

    /// The matrix of the `i`-th tube basis element.
    pub fn action(&self, i: usize) -> &Mat<S> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat<S>] {
        &self.action
    }

    /// The matrix of an arbitrary tube element.
    pub fn act(&self, f: &TubeElement<S>) -> Mat<S> {
        let n = self.total_dim();
        let mut out = Mat::zeros(n, n);
        for (c, a) in f.coeffs.iter().zip(&self.action) {
            if !c.is_exact_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    /// The subrepresentation spanned by the columns of `bases[g] ⊆ M_{labels[g]}`.
    ///
    /// The spans must be invariant; the action is transported with a left
    /// inverse of the inclusion.
    pub fn restrict(&self, bases: &[Mat<S>], pol: &TolerancePolicy) -> Result<Self> {
        let n = self.total_dim();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let k: usize = dims.iter().sum();
        let mut incl = Mat::zeros(n, k);
        let mut col = 0;
        for (g, b) in bases.iter().enumerate() {
            incl.set_block(self.range(g).start, col, b);
            col += b.cols();
        }
        let left = incl
            .left_inverse(pol)
            .ok_or_else(|| Error::Decomposition("subspace basis is not independent".into()))?;
        let action = self.action.iter().map(|a| left.matmul(&a.matmul(&incl))).collect();
        Ok(Self { labels: self.labels.clone(), dims, action })
    }

    /// Grade-wise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.labels, other.labels, "grades must agree");
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let perm = self.sum_embedding(other);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let block = a.direct_sum(b);
                perm.matmul(&block).matmul(&perm.transpose())
            })
            .collect();
        Self { labels: self.labels.clone(), dims, action }
    }

    /// The permutation taking block-stacked coordinates `M ⊕ N` to grade-interleaved ones.
    fn sum_embedding(&self, other: &Self) -> Mat<S> {
        let (m, n) = (self.total_dim(), other.total_dim());
        let mut p = Mat::zeros(m + n, m + n);
        let mut row = 0;
        for g in 0..self.labels.len() {
            for i in self.range(g) {
                p[(row, i)] = S::one();
                row += 1;
            }
            for i in other.range(g) {
                p[(row, m + i)] = S::one();
                row += 1;
            }
        }
        p
    }

    /// Largest violation of `A_{f·g} = A_g A_f` over all pairs of basis elements.
    pub fn module_law_residual(&self, t: &TubeAlgebra<S>) -> Result<f64> {
        let mut worst = 0.0f64;
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                let fg = t.weld(&t.basis_element(i), &t.basis_element(j))?;
                let lhs = self.act(&fg);
                let rhs = self.action[j].matmul(&self.action[i]);
                worst = worst.max(lhs.distance(&rhs));
            }
        }
        Ok(worst)
    }

    /// Largest deviation of the local units from the grade projections.
    pub fn locality_residual(&self, t: &TubeAlgebra<S>) -> Result<f64> {
        let mut worst = 0.0f64;
        for (g, &a) in self.labels.iter().enumerate() {
            let e = self.act(&t.local_unit(a)?);
            let n = self.total_dim();
            let mut proj = Mat::zeros(n, n);
            for i in self.range(g) {
                proj[(i, i)] = S::one();
            }
            worst = worst.max(e.distance(&proj));
        }
        Ok(worst)
    }
}

/// The right regular representation: `M_b = ⊕_c T_{c;b}` acting by welding.
pub fn regular<S: Scalar>(t: &TubeAlgebra<S>) -> Result<Representation<S>> {
    let labels = t.labels().to_vec();
    let mut order = Vec::new();
    let mut dims = Vec::new();
    for &b in &labels {
        let before = order.len();
        order.extend((0..t.dim()).filter(|&k| t.basis()[k].b == b));
        dims.push(order.len() - before);
    }
    let mut pos = vec![0; t.dim()];
    for (p, &k) in order.iter().enumerate() {
        pos[k] = p;
    }
    let n = t.dim();
    let mut action = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = Mat::<S>::zeros(n, n);
        for k in 0..n {
            if t.basis()[k].b != t.basis()[i].a {
                continue;
            }
            for (l, c) in t.weld_basis(k, i)?.iter() {
                a[(pos[*l], pos[k])] = a[(pos[*l], pos[k])].clone() + c.clone();
            }
        }
        action.push(a);
    }
    Ok(Representation::new(labels, dims, action))
}

/// The trivial representation `𝕀` with `𝕀_a = H⟨ā⟩`, nonzero exactly at the units.
pub fn trivial<S: Scalar>(t: &TubeAlgebra<S>) -> Result<Representation<S>> {
    let spec = t.spec();
    let calc = t.calculus();
    let labels = t.labels().to_vec();
    let dims: Vec<usize> = labels.iter().map(|&a| usize::from(spec.is_unit(a))).collect();
    let rep0 = Representation::<S>::new(labels.clone(), dims.clone(), Vec::new());
    let n = rep0.total_dim();
    let mut action = Vec::with_capacity(t.dim());
    for (i, idx) in t.basis().iter().enumerate() {
        let mut a = Mat::zeros(n, n);
        if spec.is_unit(idx.a) && spec.is_unit(idx.b) {
            let f = calc.basis_vector(&t.word(idx.a, idx.b, idx.x), idx.tree);
            let l = calc.unit_point(spec.source(idx.a));
            let glued = calc.glue(&f, 2, 1, &l)?;
            let v = calc.contract(&glued, 1)?;
            let c = v.coeffs[0].clone() * spec.trace_dim(idx.x);
            let (r, s) = (rep0.range_of(idx.b).start, rep0.range_of(idx.a).start);
            a[(r, s)] = c;
        }
        debug_assert_eq!(action.len(), i);
        action.push(a);
    }
    Ok(Representation::new(labels, dims, action))
}

/// A basis of the grade-preserving intertwiners `M → N`.
pub fn hom<S: Scalar>(m: &Representation<S>, n: &Representation<S>, pol: &TolerancePolicy) -> Vec<Mat<S>> {
    assert_eq!(m.labels, n.labels, "representations over different grades");
    let (dm, dn) = (m.total_dim(), n.total_dim());
    // unknown X[i][k] exists only when i and k lie in the same grade
    let mut var = vec![vec![None; dm]; dn];
    let mut count = 0;
    for g in 0..m.labels.len() {
        for i in n.range(g) {
            for k in m.range(g) {
                var[i][k] = Some(count);
                count += 1;
            }
        }
    }
    if count == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (am, an) in m.action.iter().zip(&n.action) {
        if am.max_modulus() == 0.0 && an.max_modulus() == 0.0 {
            continue;
        }
        // (X A^M - A^N X)_{ij} = 0
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![S::zero(); count];
                let mut any = false;
                for k in 0..dm {
                    if let Some(v) = var[i][k] {
                        if !am[(k, j)].is_exact_zero() {
                            row[v] = row[v].clone() + am[(k, j)].clone();
                            any = true;
                        }
                    }
                }
                for k in 0..dn {
                    if let Some(v) = var[k][j] {
                        if !an[(i, k)].is_exact_zero() {
                            row[v] = row[v].clone() - an[(i, k)].clone();
                            any = true;
                        }
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let null = if rows.is_empty() {
        (0..count).map(|v| (0..count).map(|w| if v == w { S::one() } else { S::zero() }).collect()).collect()
    } else {
        Mat::from_rows(rows).nullspace(pol)
    };
    null.into_iter()
        .map(|sol| {
            let mut x = Mat::zeros(dn, dm);
            for i in 0..dn {
                for k in 0..dm {
                    if let Some(v) = var[i][k] {
                        x[(i, k)] = sol[v].clone();
                    }
                }
            }
            x
        })
        .collect()
}

/// The scalar by which the twist elements act on a simple representation.
pub fn twist_value<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>) -> Result<S> {
    let pol = t.tolerance();
    let g = m
        .dims
        .iter()
        .position(|&d| d > 0)
        .ok_or_else(|| Error::Decomposition("twist of the zero representation".into()))?;
    let a = m.labels[g];
    let act = m.act(&t.twist(a)?);
    let r = m.range(g);
    let block = act.submatrix(&r.clone().collect::<Vec<_>>(), &r.clone().collect::<Vec<_>>());
    let theta = block.trace() / S::from_i64(r.len() as i64);
    let residual = block.distance(&Mat::identity(r.len()).scale(&theta));
    if residual > pol.abs_tol + pol.rel_tol * block.max_modulus() {
        return Err(Error::Decomposition(format!("twist is not scalar (residual {residual:e})")));
    }
    Ok(theta)
}
