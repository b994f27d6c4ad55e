//! Fusion rules and modular data of the simple modules.

use super::{braiding, coevaluation, dual, evaluation, tensor, twist, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rep::{hom, trivial, Representation, SimpleModule};
use crate::scalars::Scalar;
use crate::tube::TubeAlgebra;

/// Fusion multiplicities `N_{ij}^k = dim Hom(S_k, S_i □ S_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    pub n: Vec<Vec<Vec<usize>>>,
}

impl FusionTable {
    pub fn rank(&self) -> usize {
        self.n.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        self.n[i][j][k]
    }
}

/// Multiplicities of each simple in `m`.
pub fn multiplicities<S: Scalar>(t: &TubeAlgebra<S>, simples: &[SimpleModule<S>], m: &Representation<S>) -> Vec<usize> {
    simples.iter().map(|s| hom(&s.rep, m, t.tolerance()).len()).collect()
}

/// The fusion table of the given simples, in their order.
pub fn fusion_table<S: Scalar>(t: &TubeAlgebra<S>, simples: &[SimpleModule<S>]) -> Result<FusionTable> {
    let mut n = Vec::with_capacity(simples.len());
    for a in simples {
        let mut row = Vec::with_capacity(simples.len());
        for b in simples {
            row.push(multiplicities(t, simples, &tensor(t, &a.rep, &b.rep)?.rep));
        }
        n.push(row);
    }
    Ok(FusionTable { n })
}

/// Reads off the scalar by which an endomorphism of a simple module acts.
fn scalar_of<S: Scalar>(t: &TubeAlgebra<S>, x: &Mat<S>, what: &str) -> Result<S> {
    let n = x.rows();
    if n == 0 {
        return Err(Error::Decomposition(format!("{what} of the zero representation")));
    }
    let value = x.trace() / S::from_i64(n as i64);
    let residual = x.distance(&Mat::identity(n).scale(&value));
    let pol = t.tolerance();
    if residual > pol.abs_tol + pol.rel_tol * x.max_modulus() {
        return Err(Error::Decomposition(format!("{what} is not scalar (residual {residual:e})")));
    }
    Ok(value)
}

/// The quantum dimension of a simple module `m`, the ribbon trace of its identity:
/// `ev ∘ B_{M, M̄} ∘ (Θ_M □ id) ∘ coev` acting on the trivial representation.
pub fn quantum_dimension<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>) -> Result<S> {
    let unit = trivial(t)?;
    let md = dual(t, m)?;
    let m_md = tensor(t, m, &md)?;
    let md_m = tensor(t, &md, m)?;
    let coev = coevaluation(t, &m_md, &unit)?;
    let theta = super::tensor_maps(&m_md, &m_md, &twist(t, m)?, &Mat::identity(md.total_dim()))?;
    let b = braiding(t, &m_md, &md_m)?;
    let ev = evaluation(t, &md_m, &unit)?;
    let loop_map = ev.matmul(&b).matmul(&theta).matmul(&coev);
    scalar_of(t, &loop_map, "the ribbon loop")
}

/// The twist, quantum dimension, fusion rules and S- and T-matrices of the
/// simple modules.
#[derive(Clone, Debug)]
pub struct ModularData<S> {
    pub twists: Vec<S>,
    pub dims: Vec<S>,
    pub fusion: FusionTable,
    /// `S̃_{ij}`, the ribbon trace of the double braiding on `S_i □ S_j`.
    pub s_unnormalized: Mat<S>,
    /// The square root of the global dimension, equal to `Σ_a d_a²` over the
    /// simple endomorphisms of one 0-cell of the category.
    pub normalization: S,
    /// `S̃ / normalization`.
    pub s: Mat<S>,
    /// `diag(θ_i)`.
    pub t: Mat<S>,
}

impl<S: Scalar> ModularData<S> {
    /// Whether the S-matrix is invertible.
    pub fn is_nondegenerate(&self, pol: &crate::scalars::TolerancePolicy) -> bool {
        self.s.inverse(pol).is_some()
    }

    /// The right-hand side of the Verlinde formula,
    /// `Σ_m S_{im} S_{jm} conj(S_{km}) / S_{0m}`.
    pub fn verlinde(&self, i: usize, j: usize, k: usize) -> S {
        (0..self.s.rows()).fold(S::zero(), |acc, m| {
            acc + self.s[(i, m)].clone() * self.s[(j, m)].clone() * self.s[(k, m)].conj() / self.s[(0, m)].clone()
        })
    }

    /// Largest deviation of the Verlinde formula from the fusion table.
    pub fn verlinde_residual(&self) -> f64 {
        let r = self.fusion.rank();
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.verlinde(i, j, k) - S::from_i64(self.fusion.get(i, j, k) as i64);
                    worst = worst.max(v.modulus());
                }
            }
        }
        worst
    }
}

/// Trace of the intertwiner `d` restricted to the isotypic component of `s` inside `p`,
/// divided by the dimension of `s`.
fn isotypic_trace<S: Scalar>(t: &TubeAlgebra<S>, d: &Mat<S>, s: &Representation<S>, p: &Tensor<S>) -> Result<S> {
    let pol = t.tolerance();
    let embeddings = hom(s, &p.rep, pol);
    if embeddings.is_empty() {
        return Ok(S::zero());
    }
    let columns: Vec<Vec<S>> = embeddings.iter().flat_map(|x| (0..x.cols()).map(|c| x.col(c))).collect();
    let v = Mat::from_cols(p.rep.total_dim(), &columns);
    let left = v
        .left_inverse(pol)
        .ok_or_else(|| Error::Decomposition("isotypic embeddings are not independent".into()))?;
    Ok(left.matmul(d).matmul(&v).trace() / S::from_i64(s.total_dim() as i64))
}

/// Computes the modular data of the simples, which must be in canonical
/// order with the trivial representation first.
pub fn modular_data<S: Scalar>(t: &TubeAlgebra<S>, simples: &[SimpleModule<S>]) -> Result<ModularData<S>> {
    let r = simples.len();
    let dims = simples.iter().map(|s| quantum_dimension(t, &s.rep)).collect::<Result<Vec<_>>>()?;
    let twists: Vec<S> = simples.iter().map(|s| s.twist.clone()).collect();
    let mut fusion = vec![vec![vec![0; r]; r]; r];
    let mut s_tilde = Mat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let p = tensor(t, &simples[i].rep, &simples[j].rep)?;
            let q = tensor(t, &simples[j].rep, &simples[i].rep)?;
            let double = braiding(t, &q, &p)?.matmul(&braiding(t, &p, &q)?);
            let mut value = S::zero();
            for (k, sk) in simples.iter().enumerate() {
                fusion[i][j][k] = hom(&sk.rep, &p.rep, t.tolerance()).len();
                if fusion[i][j][k] > 0 {
                    value = value + isotypic_trace(t, &double, &sk.rep, &p)? * dims[k].clone();
                }
            }
            s_tilde[(i, j)] = value;
        }
    }
    let spec = t.spec();
    let cell = spec.source(simples[0].rep.labels()[0]);
    let normalization = spec
        .simples_between(cell, cell)
        .into_iter()
        .fold(S::zero(), |acc, a| acc + spec.qdim(a).clone() * spec.qdim(a).clone());
    let s = s_tilde.scale(&(S::one() / normalization.clone()));
    let mut tm = Mat::zeros(r, r);
    for (i, th) in twists.iter().enumerate() {
        tm[(i, i)] = th.clone();
    }
    Ok(ModularData { twists, dims, fusion: FusionTable { n: fusion }, s_unnormalized: s_tilde, normalization, s, t: tm })
}
