//! Associators, unitors, braidings, twists and duals as matrices between
//! the quotient bases of tensor products.

use std::collections::HashMap;

use super::{ProductVector, Tensor};
use crate::category::Label;
use crate::error::{Error, Result};
use crate::homspace::{HomCalculus, HomVector};
use crate::linalg::Mat;
use crate::rep::Representation;
use crate::scalars::Scalar;
use crate::tube::TubeAlgebra;

/// Resolution of the identity on the pair of strands `p q`: terms
/// `(e, A, B, C)` with `A ∈ H⟨q̄ p̄ e⟩`, `B ∈ H⟨ē p q⟩` such that gluing
/// `Σ C · B ∘_e A` onto `p q` changes nothing.
pub(crate) fn identity_resolution<S: Scalar>(
    calc: &HomCalculus<S>,
    p: Label,
    q: Label,
) -> Result<Vec<(Label, HomVector<S>, HomVector<S>, S)>> {
    let spec = calc.spec();
    let id = calc.unit(&[p, q])?;
    let mut terms = Vec::new();
    let mut columns = Vec::new();
    for e in 0..spec.num_simples() {
        let wa = vec![spec.dual(q), spec.dual(p), e];
        let wb = vec![spec.dual(e), p, q];
        if calc.check_word(&wa).is_err() || calc.check_word(&wb).is_err() {
            continue;
        }
        for i in 0..calc.basis(&wa).len() {
            let a = calc.basis_vector(&wa, i);
            let through = calc.glue(&id, 2, 2, &a)?;
            for j in 0..calc.basis(&wb).len() {
                let b = calc.basis_vector(&wb, j);
                columns.push(calc.glue(&through, 2, 1, &b)?.coeffs);
                terms.push((e, a.clone(), b));
            }
        }
    }
    let m = Mat::from_cols(id.dim(), &columns);
    let c = m
        .solve(&id.coeffs, calc.tolerance())
        .ok_or_else(|| Error::Precision("the identity on a pair of strands does not resolve".into()))?;
    Ok(terms.into_iter().zip(c).map(|((e, a, b), c)| (e, a, b, c)).filter(|t| !t.3.is_exact_zero()).collect())
}

/// Inserts unit legs so that `h ∈ H⟨c̄ a b⟩` becomes a pants vector with trivial loop.
fn with_trivial_loop<S: Scalar>(calc: &HomCalculus<S>, h: &HomVector<S>) -> HomVector<S> {
    calc.insert_unit_leg(&calc.insert_unit_leg(h, 1), 4)
}

/// Removes the unit loop legs of a pants vector.
fn without_trivial_loop<S: Scalar>(calc: &HomCalculus<S>, pi: &HomVector<S>) -> Result<HomVector<S>> {
    let spec = calc.spec();
    if !spec.is_unit(pi.word[1]) || !spec.is_unit(pi.word[4]) {
        return Err(Error::WordMismatch("representative with a nontrivial loop".into()));
    }
    Ok(calc.remove_unit_leg(&calc.remove_unit_leg(pi, 4), 1))
}

fn columns_to_mat<S: Scalar>(rows: usize, cols: Vec<Vec<S>>) -> Mat<S> {
    let mut m = Mat::zeros(rows, cols.len());
    for (j, c) in cols.into_iter().enumerate() {
        for (i, v) in c.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// The associator `(M □ N) □ L → M □ (N □ L)`.
///
/// `mn_l` must be built from `mn`, and `m_nl` from `nl`.
pub fn associator<S: Scalar>(
    t: &TubeAlgebra<S>,
    mn: &Tensor<S>,
    mn_l: &Tensor<S>,
    nl: &Tensor<S>,
    m_nl: &Tensor<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let mut cols = Vec::with_capacity(mn_l.rep.total_dim());
    for k in 0..mn_l.rep.total_dim() {
        let outer = mn_l.basis_vector(k);
        let inner = mn.basis_vector(outer.m);
        let pi = without_trivial_loop(calc, &inner.pi)?;
        let joined = calc.glue(&outer.pi, 2, 1, &pi)?;
        let (b, c) = (joined.word[3], joined.word[4]);
        let mut terms = Vec::new();
        for (_, a_piece, b_piece, coeff) in identity_resolution(calc, b, c)? {
            let rho = calc.glue(&joined, 3, 2, &a_piece)?;
            let sigma = ProductVector { m: inner.n, n: outer.n, pi: with_trivial_loop(calc, &b_piece) };
            for (q, s) in nl.project(&[(coeff, sigma)])?.into_iter().enumerate() {
                if !s.is_exact_zero() {
                    terms.push((s, ProductVector { m: inner.m, n: q, pi: rho.clone() }));
                }
            }
        }
        cols.push(m_nl.project(&terms)?);
    }
    Ok(columns_to_mat(m_nl.rep.total_dim(), cols))
}

/// The inverse associator `M □ (N □ L) → (M □ N) □ L`.
pub fn associator_inverse<S: Scalar>(
    t: &TubeAlgebra<S>,
    mn: &Tensor<S>,
    mn_l: &Tensor<S>,
    nl: &Tensor<S>,
    m_nl: &Tensor<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let mut cols = Vec::with_capacity(m_nl.rep.total_dim());
    for k in 0..m_nl.rep.total_dim() {
        let outer = m_nl.basis_vector(k);
        let inner = nl.basis_vector(outer.n);
        let sigma = without_trivial_loop(calc, &inner.pi)?;
        let joined = calc.glue(&outer.pi, 3, 1, &sigma)?;
        let (a, b) = (joined.word[2], joined.word[3]);
        let mut terms = Vec::new();
        for (_, a_piece, b_piece, coeff) in identity_resolution(calc, a, b)? {
            let rho = calc.glue(&joined, 2, 2, &a_piece)?;
            let pi = ProductVector { m: outer.m, n: inner.m, pi: with_trivial_loop(calc, &b_piece) };
            for (q, s) in mn.project(&[(coeff, pi)])?.into_iter().enumerate() {
                if !s.is_exact_zero() {
                    terms.push((s, ProductVector { m: q, n: inner.n, pi: rho.clone() }));
                }
            }
        }
        cols.push(mn_l.project(&terms)?);
    }
    Ok(columns_to_mat(mn_l.rep.total_dim(), cols))
}

/// Index of the basis vector of the trivial representation in the grade of the unit of `a`'s 0-cell.
fn unit_index<S: Scalar>(t: &TubeAlgebra<S>, unit: &Representation<S>, a: Label) -> usize {
    let spec = t.spec();
    unit.range_of(spec.unit(spec.source(a))).start
}

/// The right unitor `M → M □ 𝕀`, `m ↦ m ⊗ e_1 ⊗ e_a`.
pub fn right_unitor<S: Scalar>(t: &TubeAlgebra<S>, m_i: &Tensor<S>) -> Result<Mat<S>> {
    let calc = t.calculus();
    let m = &m_i.left;
    let mut cols = Vec::with_capacity(m.total_dim());
    for (g, &a) in m.labels().iter().enumerate() {
        let e = calc.unit(&[a])?;
        let pi = calc.insert_unit_leg(&calc.insert_unit_leg(&calc.insert_unit_leg(&e, 1), 3), 4);
        let one = unit_index(t, &m_i.right, a);
        for i in m.range(g) {
            cols.push(m_i.project(&[(S::one(), ProductVector { m: i, n: one, pi: pi.clone() })])?);
        }
    }
    Ok(columns_to_mat(m_i.rep.total_dim(), cols))
}

/// The left unitor `M → 𝕀 □ M`, `m ↦ e_1 ⊗ m ⊗ e_a`.
pub fn left_unitor<S: Scalar>(t: &TubeAlgebra<S>, i_m: &Tensor<S>) -> Result<Mat<S>> {
    let calc = t.calculus();
    let m = &i_m.right;
    let mut cols = Vec::with_capacity(m.total_dim());
    for (g, &a) in m.labels().iter().enumerate() {
        let e = calc.unit(&[a])?;
        let pi = calc.insert_unit_leg(&calc.insert_unit_leg(&calc.insert_unit_leg(&e, 1), 2), 4);
        let one = unit_index(t, &i_m.left, a);
        for i in m.range(g) {
            cols.push(i_m.project(&[(S::one(), ProductVector { m: one, n: i, pi: pi.clone() })])?);
        }
    }
    Ok(columns_to_mat(i_m.rep.total_dim(), cols))
}

/// `F □ G` between two products.
pub fn tensor_maps<S: Scalar>(src: &Tensor<S>, dst: &Tensor<S>, f: &Mat<S>, g: &Mat<S>) -> Result<Mat<S>> {
    let mut cols = Vec::with_capacity(src.rep.total_dim());
    for k in 0..src.rep.total_dim() {
        let v = src.basis_vector(k);
        let mut terms = Vec::new();
        for i in 0..f.rows() {
            let fi = &f[(i, v.m)];
            if fi.is_exact_zero() {
                continue;
            }
            for j in 0..g.rows() {
                let gj = &g[(j, v.n)];
                if !gj.is_exact_zero() {
                    terms.push((fi.clone() * gj.clone(), ProductVector { m: i, n: j, pi: v.pi.clone() }));
                }
            }
        }
        cols.push(dst.project(&terms)?);
    }
    Ok(columns_to_mat(dst.rep.total_dim(), cols))
}

/// The braiding `M □ N → N □ M`.
pub fn braiding<S: Scalar>(t: &TubeAlgebra<S>, mn: &Tensor<S>, nm: &Tensor<S>) -> Result<Mat<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let mut inverse_twists: HashMap<Label, Mat<S>> = HashMap::new();
    let mut cols = Vec::with_capacity(mn.rep.total_dim());
    for k in 0..mn.rep.total_dim() {
        let v = mn.basis_vector(k);
        let a = v.pi.word[2];
        if !inverse_twists.contains_key(&a) {
            inverse_twists.insert(a, mn.left.act(&t.twist_inverse(a)?));
        }
        let twisted = &inverse_twists[&a];
        let cup = S::one() / spec.sqrt_qdim(a).clone();
        let opened = calc.split_leg(&calc.insert_unit_leg(&v.pi, 4), 4, a, spec.dual(a), 0).scale(&cup);
        let moved = calc.star(&opened, 5, 2, 1)?;
        let mut terms = Vec::new();
        for i in mn.left.range_of(a) {
            let c = &twisted[(i, v.m)];
            if c.is_exact_zero() {
                continue;
            }
            for (_, pi) in &moved {
                terms.push((c.clone(), ProductVector { m: v.n, n: i, pi: pi.clone() }));
            }
        }
        cols.push(nm.project(&terms)?);
    }
    Ok(columns_to_mat(nm.rep.total_dim(), cols))
}

/// The twist `Θ_M`, acting on `M_a` by the twist element `τ_a`.
pub fn twist<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>) -> Result<Mat<S>> {
    let mut total = t.zero();
    for &a in m.labels() {
        if m.dim_of(a) > 0 {
            total = total.add(&t.twist(a)?);
        }
    }
    Ok(m.act(&total))
}

/// The dual representation `M̄` with `M̄_a = M_ā^*`; basis vectors of
/// `M̄_a` are the dual basis of `M_ā`.
pub fn dual<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>) -> Result<Representation<S>> {
    let spec = t.spec();
    let labels = m.labels().to_vec();
    let dims: Vec<usize> = labels.iter().map(|&a| m.dim_of(spec.dual(a))).collect();
    let shell = Representation::<S>::new(labels.clone(), dims.clone(), Vec::new());
    let n = shell.total_dim();
    let mut action = Vec::with_capacity(t.dim());
    for i in 0..t.dim() {
        let idx = t.basis()[i];
        let mut a = Mat::zeros(n, n);
        let sharp = m.act(&t.sharp(&t.basis_element(i))?);
        let (src, dst) = (shell.range_of(idx.a), shell.range_of(idx.b));
        let (m_src, m_dst) = (m.range_of(spec.dual(idx.a)), m.range_of(spec.dual(idx.b)));
        for (k, r) in dst.clone().enumerate() {
            for (l, c) in src.clone().enumerate() {
                a[(r, c)] = sharp[(m_src.start + l, m_dst.start + k)].clone();
            }
        }
        action.push(a);
    }
    Ok(Representation::new(labels, dims, action))
}

/// The evaluation `M̄ □ M → 𝕀`; `dm` is the product `M̄ □ M` and `unit` the trivial representation.
pub fn evaluation<S: Scalar>(
    t: &TubeAlgebra<S>,
    dm: &Tensor<S>,
    unit: &Representation<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let (md, m) = (&dm.left, &dm.right);
    let mut out = Mat::zeros(unit.total_dim(), dm.rep.total_dim());
    for k in 0..dm.rep.total_dim() {
        let v = dm.basis_vector(k);
        let w = &v.pi.word;
        let (c, x, a, b) = (spec.dual(w[0]), w[4], w[2], w[3]);
        if !spec.is_unit(c) || b != spec.dual(a) {
            continue;
        }
        let eta_word = vec![spec.dual(b), spec.dual(a)];
        let db = calc.dual_basis(&eta_word)?;
        let mut value = S::zero();
        for (eta, eta_bar) in db.basis.iter().zip(&db.dual) {
            let closed = calc.ptrace(&calc.glue(&v.pi, 2, 2, eta)?)?;
            let loop_value = closed.coeffs[0].clone() * spec.trace_dim(x);
            let tube = calc.insert_unit_leg(&calc.insert_unit_leg(&calc.rotate(eta_bar), 1), 3);
            let g = t.from_hom(a, spec.dual(b), spec.unit(spec.source(a)), &tube)?;
            let act = md.act(&g);
            let pairing = act[(md.range_of(spec.dual(b)).start + (v.n - m.range_of(b).start), v.m)].clone();
            value = value + pairing * loop_value;
        }
        out[(unit.range_of(c).start, k)] = value;
    }
    Ok(out)
}

/// The coevaluation `𝕀 → M □ M̄`; `md` is the product `M □ M̄`.
pub fn coevaluation<S: Scalar>(
    t: &TubeAlgebra<S>,
    md: &Tensor<S>,
    unit: &Representation<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let (m, mbar) = (&md.left, &md.right);
    let mut cols = vec![vec![S::zero(); md.rep.total_dim()]; unit.total_dim()];
    for (g, &c) in unit.labels().iter().enumerate() {
        if unit.dims()[g] == 0 {
            continue;
        }
        let mut terms = Vec::new();
        for &s in m.labels() {
            if spec.source(s) != spec.source(c) || m.dim_of(s) == 0 {
                continue;
            }
            let cup = calc.unit(&[spec.dual(s)])?;
            let pi = calc.insert_unit_leg(&calc.insert_unit_leg(&calc.insert_unit_leg(&cup, 0), 1), 4);
            let (rm, rd) = (m.range_of(s), mbar.range_of(spec.dual(s)));
            for (i, j) in rm.zip(rd) {
                terms.push((spec.trace_dim(s), ProductVector { m: i, n: j, pi: pi.clone() }));
            }
        }
        cols[unit.range(g).start] = md.project(&terms)?;
    }
    Ok(columns_to_mat(md.rep.total_dim(), cols))
}
