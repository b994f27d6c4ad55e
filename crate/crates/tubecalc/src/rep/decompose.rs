//! Splitting representations into simple modules.
//!
//! A non-simple representation has a commutant of dimension at least two.
//! A seeded random element of the commutant is split into eigenspaces, each
//! of which is an invariant subspace, and the pieces are split again until
//! every commutant is one-dimensional.

use std::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom, trivial, twist_value, Representation};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Scalar, TolerancePolicy};
use crate::tube::TubeAlgebra;

/// An isomorphism class of simple modules occurring in a representation.
#[derive(Clone, Debug)]
pub struct SimpleModule<S> {
    pub rep: Representation<S>,
    pub multiplicity: usize,
    /// The scalar by which the twist elements act.
    pub twist: S,
}

/// Decomposes `m` into simple modules, returned in canonical order.
pub fn decompose<S: Scalar>(t: &TubeAlgebra<S>, m: &Representation<S>, seed: u64) -> Result<Vec<SimpleModule<S>>> {
    let pol = *t.tolerance();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    split(m, &pol, &mut rng, &mut pieces)?;
    let mut classes: Vec<(Representation<S>, usize)> = Vec::new();
    for p in pieces {
        match classes.iter_mut().find(|(c, _)| c.dims() == p.dims() && !hom(&p, c, &pol).is_empty()) {
            Some((_, mult)) => *mult += 1,
            None => classes.push((p, 1)),
        }
    }
    let mut out = classes
        .into_iter()
        .map(|(rep, multiplicity)| Ok(SimpleModule { twist: twist_value(t, &rep)?, rep, multiplicity }))
        .collect::<Result<Vec<_>>>()?;
    canonical_sort(t, &mut out)?;
    Ok(out)
}

fn split<S: Scalar>(
    m: &Representation<S>,
    pol: &TolerancePolicy,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Representation<S>>,
) -> Result<()> {
    if m.total_dim() == 0 {
        return Ok(());
    }
    let end = hom(m, m, pol);
    match end.len() {
        0 => return Err(Error::Decomposition("the commutant does not contain the identity".into())),
        1 => {
            out.push(m.clone());
            return Ok(());
        }
        _ => {}
    }
    let random = end
        .iter()
        .fold(Mat::zeros(m.total_dim(), m.total_dim()), |acc, x| acc.add(&x.scale(&S::from_i64(rng.gen_range(-9..=9)))));
    let candidates = std::iter::once(random).chain(end.iter().cloned());
    for x in candidates {
        let Some(pieces) = eigen_split(m, &x, pol)? else { continue };
        for p in pieces {
            split(&p, pol, rng, out)?;
        }
        return Ok(());
    }
    Err(Error::Decomposition(format!(
        "no commutant element splits a representation of dimension {}",
        m.total_dim()
    )))
}

/// Splits `m` into the eigenspaces of the intertwiner `x`, if `x` is
/// diagonalizable with at least two eigenvalues in the scalar field.
fn eigen_split<S: Scalar>(
    m: &Representation<S>,
    x: &Mat<S>,
    pol: &TolerancePolicy,
) -> Result<Option<Vec<Representation<S>>>> {
    let scale = x.max_modulus();
    if scale == 0.0 {
        return Ok(None);
    }
    let x = if S::EXACT { x.clone() } else { x.scale(&(S::one() / S::from_c64(num_complex::Complex64::new(scale, 0.0)).unwrap_or_else(S::one))) };
    let poly = minimal_polynomial(&x, pol);
    if poly.len() < 3 {
        return Ok(None);
    }
    let Some(roots) = S::poly_roots(&poly) else { return Ok(None) };
    let mut distinct: Vec<S> = Vec::new();
    for r in roots {
        if !distinct.iter().any(|d| d.approx_eq(&r, pol)) {
            distinct.push(r);
        }
    }
    if distinct.len() < 2 {
        return Ok(None);
    }
    let mut pieces = Vec::new();
    let mut found = 0;
    for lambda in &distinct {
        let bases: Vec<Mat<S>> = (0..m.labels().len())
            .map(|g| {
                let r: Vec<usize> = m.range(g).collect();
                let block = x.submatrix(&r, &r).sub(&Mat::identity(r.len()).scale(lambda));
                let null = block.nullspace(pol);
                Mat::from_cols(r.len(), &null)
            })
            .collect();
        found += bases.iter().map(Mat::cols).sum::<usize>();
        pieces.push(m.restrict(&bases, pol)?);
    }
    if found != m.total_dim() {
        return Ok(None);
    }
    Ok(Some(pieces))
}

/// Monic minimal polynomial of a square matrix, coefficients in ascending degree.
fn minimal_polynomial<S: Scalar>(x: &Mat<S>, pol: &TolerancePolicy) -> Vec<S> {
    let n = x.rows();
    let flat = |a: &Mat<S>| -> Vec<S> { (0..n).flat_map(|i| a.row(i).to_vec()).collect() };
    let mut powers = vec![flat(&Mat::identity(n))];
    let mut p = Mat::identity(n);
    for _ in 0..n {
        p = p.matmul(x);
        let target = flat(&p);
        let basis = Mat::from_cols(n * n, &powers);
        if let Some(c) = basis.solve(&target, pol) {
            let mut poly: Vec<S> = c.into_iter().map(|v| -v).collect();
            poly.push(S::one());
            return poly;
        }
        powers.push(target);
    }
    unreachable!("Cayley-Hamilton bounds the degree of the minimal polynomial")
}

/// Orders simple modules by total dimension, twist angle in `[0, 2π)`,
/// grade vector (descending), then the trivial representation first, then
/// character values (descending).
pub fn canonical_sort<S: Scalar>(t: &TubeAlgebra<S>, simples: &mut [SimpleModule<S>]) -> Result<()> {
    let unit = trivial(t)?;
    simples.sort_by_cached_key(|s| sort_key(t, &unit, s));
    Ok(())
}

type Key = (usize, i64, Vec<Reverse<usize>>, bool, Vec<Reverse<(i64, i64)>>);

fn sort_key<S: Scalar>(t: &TubeAlgebra<S>, unit: &Representation<S>, s: &SimpleModule<S>) -> Key {
    let round = |v: f64| (v * 1e9).round() as i64;
    let mut angle = s.twist.to_c64().arg();
    if angle < 0.0 {
        angle += std::f64::consts::TAU;
    }
    let mut angle = round(angle);
    if angle == round(std::f64::consts::TAU) {
        angle = 0;
    }
    let grades = s.rep.dims().iter().map(|&d| Reverse(d)).collect();
    let chars = (0..t.dim())
        .map(|i| {
            let z = s.rep.action(i).trace().to_c64();
            Reverse((round(z.re), round(z.im)))
        })
        .collect();
    let is_unit = !hom(unit, &s.rep, t.tolerance()).is_empty();
    (s.rep.total_dim(), angle, grades, !is_unit, chars)
}

