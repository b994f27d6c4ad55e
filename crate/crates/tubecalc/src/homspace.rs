//! Cyclic Hom spaces `H⟨x1⋯xn⟩ = Hom(1, x1 ⊗ ⋯ ⊗ xn)` and their calculus.
//!
//! A basis vector of `H⟨x1⋯xn⟩` is a left-nested splitting tree
//! `1 → u_{n-1} ⊗ x_n → ((u_{n-2} ⊗ x_{n-1}) ⊗ x_n) → ⋯` recorded by its
//! internal labels `u_1 = x1, u_2, …, u_n = 1` and vertex multiplicities.
//! Every other operation (rotation, gluing, contraction, traces, pairing and
//! ⋆-resolution) is compiled to F-moves on these trees.
//!
//! Caps are realised as `ev_b = √d_b · f_{b̄ b → 1}` and cups as
//! `coev_b = √d_b · p_b · s_{1 → b b̄}`. Gluing two adjacent legs `y ȳ` is the
//! contraction with `ev_ȳ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::category::{CategorySpec, Label};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Scalar, TolerancePolicy};

/// A cyclically composable sequence of simple labels.
pub type Word = Vec<Label>;

/// A left-nested fusion tree for a fixed word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionTree {
    /// `u_1, …, u_n` with `u_1 = x1` and `u_n` the unit.
    pub internal: Vec<Label>,
    /// Multiplicity of the vertex producing `u_k`; entry 0 is unused.
    pub mult: Vec<usize>,
}

/// The canonical tree basis of one word.
#[derive(Debug)]
pub struct Basis {
    pub word: Word,
    pub trees: Vec<FusionTree>,
    index: HashMap<FusionTree, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn position(&self, t: &FusionTree) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// An element of `H⟨word⟩` in the canonical tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HomVector<S> {
    pub word: Word,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> HomVector<S> {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { word: self.word.clone(), coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.word, other.word, "adding vectors of different words");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { word: self.word.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, s: &S, other: &Self) {
        assert_eq!(self.word, other.word, "adding vectors of different words");
        crate::linalg::axpy(&mut self.coeffs, s, &other.coeffs);
    }

    pub fn max_modulus(&self) -> f64 {
        crate::linalg::max_modulus(&self.coeffs)
    }

    pub fn is_negligible(&self, pol: &TolerancePolicy) -> bool {
        self.coeffs.iter().all(|c| c.negligible(pol, 1.0))
    }

    /// Equality within tolerance, relative to the larger of the two vectors.
    pub fn approx_eq(&self, other: &Self, pol: &TolerancePolicy) -> bool {
        if self.word != other.word {
            return false;
        }
        let scale = self.max_modulus().max(other.max_modulus());
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| (a.clone() - b.clone()).negligible(pol, scale))
    }
}

/// A linear map between tree bases stored column by column.
#[derive(Debug)]
struct LinMap<S> {
    out_word: Word,
    out_dim: usize,
    cols: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> LinMap<S> {
    fn apply(&self, v: &[S]) -> HomVector<S> {
        let mut out = vec![S::zero(); self.out_dim];
        for (col, c) in self.cols.iter().zip(v) {
            if c.is_exact_zero() {
                continue;
            }
            for (i, a) in col {
                let cur = std::mem::replace(&mut out[*i], S::zero());
                out[*i] = cur + a.clone() * c.clone();
            }
        }
        HomVector { word: self.out_word.clone(), coeffs: out }
    }
}

/// A dual-basis pair for a word `W`: `pair(dual[i], basis[j]) = δ_ij`, with the
/// dual vectors living over the reversed dual word.
#[derive(Debug)]
pub struct DualBasis<S> {
    pub basis: Vec<HomVector<S>>,
    pub dual: Vec<HomVector<S>>,
}

type Terms<S> = Vec<(FusionTree, S)>;

/// The Hom-space calculus of one category, with memo tables.
pub struct HomCalculus<S: Scalar> {
    spec: Arc<CategorySpec<S>>,
    pol: TolerancePolicy,
    bases: Mutex<HashMap<Word, Arc<Basis>>>,
    rotations: Mutex<HashMap<Word, Arc<LinMap<S>>>>,
    contractions: Mutex<HashMap<(Word, usize), Arc<LinMap<S>>>>,
    duals: Mutex<HashMap<Word, Arc<DualBasis<S>>>>,
    units: Mutex<HashMap<Word, HomVector<S>>>,
}

impl<S: Scalar> fmt::Debug for HomCalculus<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomCalculus").field("category", &self.spec.name).finish()
    }
}

impl<S: Scalar> HomCalculus<S> {
    pub fn new(spec: Arc<CategorySpec<S>>, pol: TolerancePolicy) -> Self {
        Self {
            spec,
            pol,
            bases: Mutex::default(),
            rotations: Mutex::default(),
            contractions: Mutex::default(),
            duals: Mutex::default(),
            units: Mutex::default(),
        }
    }

    pub fn spec(&self) -> &CategorySpec<S> {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<CategorySpec<S>> {
        &self.spec
    }

    pub fn tolerance(&self) -> &TolerancePolicy {
        &self.pol
    }

    fn word_name(&self, w: &[Label]) -> String {
        format!("⟨{}⟩", self.spec.word_name(w))
    }

    /// Checks that consecutive labels compose and the word closes up.
    pub fn check_word(&self, word: &[Label]) -> Result<()> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Incomposable("empty word".into()));
        }
        if let Some(&bad) = word.iter().find(|&&a| a >= self.spec.num_simples()) {
            return Err(Error::UnknownLabel(bad.to_string()));
        }
        for k in 0..n {
            if !self.spec.composable(word[k], word[(k + 1) % n]) {
                return Err(Error::Incomposable(self.word_name(word)));
            }
        }
        Ok(())
    }

    /// The canonical tree basis of a valid word.
    pub fn basis(&self, word: &[Label]) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().expect("basis cache").get(word) {
            return b.clone();
        }
        let trees = self.enumerate_trees(word);
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let b = Arc::new(Basis { word: word.to_vec(), trees, index });
        self.bases.lock().expect("basis cache").insert(word.to_vec(), b.clone());
        b
    }

    fn enumerate_trees(&self, word: &[Label]) -> Vec<FusionTree> {
        let n = word.len();
        let unit = self.spec.unit(self.spec.source(word[0]));
        let mut out = Vec::new();
        let mut internal = vec![word[0]];
        let mut mult = vec![0];
        self.extend_trees(word, 1, unit, &mut internal, &mut mult, &mut out);
        if n == 1 && word[0] != unit {
            out.clear();
        }
        out
    }

    fn extend_trees(
        &self,
        word: &[Label],
        k: usize,
        unit: Label,
        internal: &mut Vec<Label>,
        mult: &mut Vec<usize>,
        out: &mut Vec<FusionTree>,
    ) {
        if k == word.len() {
            if *internal.last().expect("nonempty") == unit {
                out.push(FusionTree { internal: internal.clone(), mult: mult.clone() });
            }
            return;
        }
        let prev = internal[k - 1];
        for &(u, m) in self.spec.channels(prev, word[k]) {
            if k == word.len() - 1 && u != unit {
                continue;
            }
            for mu in 0..m {
                internal.push(u);
                mult.push(mu);
                self.extend_trees(word, k + 1, unit, internal, mult, out);
                internal.pop();
                mult.pop();
            }
        }
    }

    /// `dim H⟨word⟩`.
    pub fn dim(&self, word: &[Label]) -> Result<usize> {
        self.check_word(word)?;
        Ok(self.basis(word).len())
    }

    pub fn zero(&self, word: &[Label]) -> HomVector<S> {
        HomVector { word: word.to_vec(), coeffs: vec![S::zero(); self.basis(word).len()] }
    }

    /// The `i`-th canonical tree of `word`.
    pub fn basis_vector(&self, word: &[Label], i: usize) -> HomVector<S> {
        let mut v = self.zero(word);
        v.coeffs[i] = S::one();
        v
    }

    /// The canonical generator of `H⟨1_i⟩`.
    pub fn unit_point(&self, i: usize) -> HomVector<S> {
        self.basis_vector(&[self.spec.unit(i)], 0)
    }

    /// Applies a tree-level transformation linearly.
    fn map_trees(&self, v: &HomVector<S>, out_word: &[Label], f: impl Fn(&FusionTree) -> Terms<S>) -> HomVector<S> {
        let in_basis = self.basis(&v.word);
        let out_basis = self.basis(out_word);
        let mut out = vec![S::zero(); out_basis.len()];
        for (t, c) in in_basis.trees.iter().zip(&v.coeffs) {
            if c.is_exact_zero() {
                continue;
            }
            for (t2, a) in f(t) {
                let i = out_basis.position(&t2).expect("transformed tree lies in the target basis");
                let cur = std::mem::replace(&mut out[i], S::zero());
                out[i] = cur + a * c.clone();
            }
        }
        HomVector { word: out_word.to_vec(), coeffs: out }
    }

    fn build_map(&self, in_word: &[Label], out_word: &[Label], f: impl Fn(&FusionTree) -> Terms<S>) -> LinMap<S> {
        let in_basis = self.basis(in_word);
        let out_basis = self.basis(out_word);
        let cols = in_basis
            .trees
            .iter()
            .map(|t| {
                let mut col: Vec<(usize, S)> = Vec::new();
                for (t2, a) in f(t) {
                    if a.is_exact_zero() {
                        continue;
                    }
                    let i = out_basis.position(&t2).expect("transformed tree lies in the target basis");
                    match col.iter_mut().find(|(j, _)| *j == i) {
                        Some((_, acc)) => *acc = acc.clone() + a,
                        None => col.push((i, a)),
                    }
                }
                col
            })
            .collect();
        LinMap { out_word: out_word.to_vec(), out_dim: out_basis.len(), cols }
    }

    // ----- tree-level moves -------------------------------------------------

    /// Fuses legs `j, j+1` into `e` through the fusion vertex of multiplicity `mu`.
    fn fuse_tree(&self, word: &[Label], t: &FusionTree, j: usize, e: Label, mu: usize) -> Terms<S> {
        if j == 0 {
            if t.internal[1] != e || t.mult[1] != mu {
                return Vec::new();
            }
            let mut internal = vec![e];
            internal.extend_from_slice(&t.internal[2..]);
            let mut mult = vec![0];
            mult.extend_from_slice(&t.mult[2..]);
            return vec![(FusionTree { internal, mult }, S::one())];
        }
        let (prev, root) = (t.internal[j - 1], t.internal[j + 1]);
        let Some(blk) = self.spec.f_block(prev, word[j], word[j + 1], root) else { return Vec::new() };
        let li = blk.left_pos(&(t.internal[j], t.mult[j], t.mult[j + 1])).expect("admissible tree");
        let mut out = Vec::new();
        for (ri, &(f, rho, sigma)) in blk.right.iter().enumerate() {
            if f != e || rho != mu {
                continue;
            }
            let coeff = blk.matrix[(li, ri)].clone();
            if coeff.is_exact_zero() {
                continue;
            }
            let mut internal = t.internal[..j].to_vec();
            internal.extend_from_slice(&t.internal[j + 1..]);
            let mut mult = t.mult[..j].to_vec();
            mult.push(sigma);
            mult.extend_from_slice(&t.mult[j + 2..]);
            out.push((FusionTree { internal, mult }, coeff));
        }
        out
    }

    /// Splits leg `j` (label `e`) into `p q` through the splitting vertex `nu`.
    fn split_tree(&self, word: &[Label], t: &FusionTree, j: usize, p: Label, q: Label, nu: usize) -> Terms<S> {
        let e = word[j];
        if j == 0 {
            let mut internal = vec![p, e];
            internal.extend_from_slice(&t.internal[1..]);
            let mut mult = vec![0, nu];
            mult.extend_from_slice(&t.mult[1..]);
            return vec![(FusionTree { internal, mult }, S::one())];
        }
        let (prev, root) = (t.internal[j - 1], t.internal[j]);
        let Some(blk) = self.spec.f_block(prev, p, q, root) else { return Vec::new() };
        let Some(ri) = blk.right_pos(&(e, nu, t.mult[j])) else { return Vec::new() };
        let mut out = Vec::new();
        for (li, &(g, m1, m2)) in blk.left.iter().enumerate() {
            let coeff = blk.inverse[(ri, li)].clone();
            if coeff.is_exact_zero() {
                continue;
            }
            let mut internal = t.internal[..j].to_vec();
            internal.push(g);
            internal.extend_from_slice(&t.internal[j..]);
            let mut mult = t.mult[..j].to_vec();
            mult.push(m1);
            mult.push(m2);
            mult.extend_from_slice(&t.mult[j + 1..]);
            out.push((FusionTree { internal, mult }, coeff));
        }
        out
    }

    /// Drops the unit leg at position `j`.
    fn remove_unit_tree(t: &FusionTree, j: usize) -> FusionTree {
        if t.internal.len() == 1 {
            return t.clone();
        }
        let mut internal = t.internal.clone();
        let mut mult = t.mult.clone();
        if j == 0 {
            internal.remove(0);
            mult.remove(1);
            mult[0] = 0;
        } else {
            internal.remove(j);
            mult.remove(j);
        }
        FusionTree { internal, mult }
    }

    /// Inserts a unit leg at position `j` of a word starting at 0-cell of `unit`.
    fn insert_unit_tree(t: &FusionTree, j: usize, unit: Label) -> FusionTree {
        let mut internal = t.internal.clone();
        let mut mult = t.mult.clone();
        if j == 0 {
            internal.insert(0, unit);
            mult.insert(1, 0);
        } else {
            internal.insert(j, t.internal[j - 1]);
            mult.insert(j, 0);
        }
        FusionTree { internal, mult }
    }

    /// Moves the first leg to the end.
    fn rotate_tree(&self, word: &[Label], t: &FusionTree) -> Terms<S> {
        let n = word.len();
        if n == 1 {
            return vec![(t.clone(), S::one())];
        }
        let x = word[0];
        let spec = &*self.spec;
        // partially recoupled trees: x ⊗ (tree over word[1..=k] with root w), joined by sigma
        let mut states: Vec<(Vec<Label>, Vec<usize>, usize, S)> =
            vec![(vec![word[1]], vec![0], t.mult[1], S::one())];
        for k in 2..n {
            let mut next = Vec::new();
            for (inner, inner_mult, sigma, c) in states {
                let w = *inner.last().expect("nonempty");
                let Some(blk) = spec.f_block(x, w, word[k], t.internal[k]) else { continue };
                let Some(li) = blk.left_pos(&(t.internal[k - 1], sigma, t.mult[k])) else { continue };
                for (ri, &(f, rho, s2)) in blk.right.iter().enumerate() {
                    let a = &blk.matrix[(li, ri)];
                    if a.is_exact_zero() {
                        continue;
                    }
                    let mut inner2 = inner.clone();
                    inner2.push(f);
                    let mut mult2 = inner_mult.clone();
                    mult2.push(rho);
                    next.push((inner2, mult2, s2, c.clone() * a.clone()));
                }
            }
            states = next;
        }
        let xd = spec.dual(x);
        let scale = self.rotation_constant(x);
        let unit = spec.unit(spec.source(word[1]));
        let mut out: Terms<S> = Vec::new();
        for (mut inner, mut inner_mult, _sigma, c) in states {
            debug_assert_eq!(*inner.last().expect("nonempty"), xd);
            inner.push(unit);
            inner_mult.push(0);
            let tree = FusionTree { internal: inner, mult: inner_mult };
            let c = c * scale.clone();
            match out.iter_mut().find(|(t2, _)| *t2 == tree) {
                Some((_, acc)) => *acc = acc.clone() + c,
                None => out.push((tree, c)),
            }
        }
        out
    }

    /// `d_x p_x̄ F^{-1}[x̄,x,x̄;x̄]_{11}`, which is 1 whenever the zig-zag identities hold.
    fn rotation_constant(&self, x: Label) -> S {
        let spec = &*self.spec;
        let xd = spec.dual(x);
        let (us, ut) = (spec.unit(spec.source(x)), spec.unit(spec.target(x)));
        spec.qdim(x).clone() * spec.pivotal(xd).clone() * spec.f_inv(xd, x, xd, xd, (us, 0, 0), (ut, 0, 0))
    }

    // ----- vector-level operations -----------------------------------------

    /// The cyclic isomorphism `H⟨x1 x2⋯xn⟩ → H⟨x2⋯xn x1⟩`.
    pub fn rotate(&self, v: &HomVector<S>) -> HomVector<S> {
        let map = {
            let cached = self.rotations.lock().expect("rotation cache").get(&v.word).cloned();
            match cached {
                Some(m) => m,
                None => {
                    let mut out_word = v.word[1..].to_vec();
                    out_word.push(v.word[0]);
                    if v.word.len() == 1 {
                        out_word = v.word.clone();
                    }
                    let m = Arc::new(self.build_map(&v.word, &out_word, |t| self.rotate_tree(&v.word, t)));
                    self.rotations.lock().expect("rotation cache").insert(v.word.clone(), m.clone());
                    m
                }
            }
        };
        map.apply(&v.coeffs)
    }

    /// Rotates `k` legs from the front to the back.
    pub fn rotate_by(&self, v: &HomVector<S>, k: usize) -> HomVector<S> {
        let n = v.word.len();
        let mut out = v.clone();
        for _ in 0..(k % n) {
            out = self.rotate(&out);
        }
        out
    }

    /// Tensor product of two vectors based at the same 0-cell.
    pub fn concat(&self, u: &HomVector<S>, v: &HomVector<S>) -> Result<HomVector<S>> {
        if self.spec.source(u.word[0]) != self.spec.source(v.word[0]) {
            return Err(Error::WordMismatch(format!(
                "cannot concatenate {} and {}",
                self.word_name(&u.word),
                self.word_name(&v.word)
            )));
        }
        let unit = self.spec.unit(self.spec.source(u.word[0]));
        let strip = |w: &[Label]| -> Vec<Label> { if w == [unit] { Vec::new() } else { w.to_vec() } };
        let (uw, vw) = (strip(&u.word), strip(&v.word));
        if uw.is_empty() {
            return Ok(v.scale(&u.coeffs[0]));
        }
        if vw.is_empty() {
            return Ok(u.scale(&v.coeffs[0]));
        }
        let mut word = uw.clone();
        word.extend_from_slice(&vw);
        let (ub, vb, out_b) = (self.basis(&uw), self.basis(&vw), self.basis(&word));
        let mut out = vec![S::zero(); out_b.len()];
        for (tu, cu) in ub.trees.iter().zip(&u.coeffs) {
            if cu.is_exact_zero() {
                continue;
            }
            for (tv, cv) in vb.trees.iter().zip(&v.coeffs) {
                if cv.is_exact_zero() {
                    continue;
                }
                let mut internal = tu.internal.clone();
                internal.extend_from_slice(&tv.internal);
                let mut mult = tu.mult.clone();
                mult.push(0);
                mult.extend_from_slice(&tv.mult[1..]);
                let i = out_b.position(&FusionTree { internal, mult }).expect("concatenated tree");
                out[i] = out[i].clone() + cu.clone() * cv.clone();
            }
        }
        Ok(HomVector { word, coeffs: out })
    }

    /// Replaces legs `j, j+1` by `e` through the fusion vertex `mu`.
    pub fn fuse_legs(&self, v: &HomVector<S>, j: usize, e: Label, mu: usize) -> HomVector<S> {
        let mut word = v.word[..j].to_vec();
        word.push(e);
        word.extend_from_slice(&v.word[j + 2..]);
        self.map_trees(v, &word, |t| self.fuse_tree(&v.word, t, j, e, mu))
    }

    /// Replaces leg `j` by `p q` through the splitting vertex `nu`.
    pub fn split_leg(&self, v: &HomVector<S>, j: usize, p: Label, q: Label, nu: usize) -> HomVector<S> {
        let mut word = v.word[..j].to_vec();
        word.push(p);
        word.push(q);
        word.extend_from_slice(&v.word[j + 1..]);
        self.map_trees(v, &word, |t| self.split_tree(&v.word, t, j, p, q, nu))
    }

    /// Removes a unit leg.
    pub fn remove_unit_leg(&self, v: &HomVector<S>, j: usize) -> HomVector<S> {
        debug_assert!(self.spec.is_unit(v.word[j]));
        if v.word.len() == 1 {
            return v.clone();
        }
        let mut word = v.word.clone();
        word.remove(j);
        self.map_trees(v, &word, |t| vec![(Self::remove_unit_tree(t, j), S::one())])
    }

    /// Inserts the unit of the appropriate 0-cell as a new leg at position `j`.
    pub fn insert_unit_leg(&self, v: &HomVector<S>, j: usize) -> HomVector<S> {
        let spec = &*self.spec;
        let cell = if j == 0 { spec.source(v.word[0]) } else { spec.target(v.word[j - 1]) };
        let unit = spec.unit(cell);
        let mut word = v.word.clone();
        word.insert(j, unit);
        self.map_trees(v, &word, |t| vec![(Self::insert_unit_tree(t, j, unit), S::one())])
    }

    /// Contracts legs `j, j+1` (labels `y, ȳ`) with the cap `ev_ȳ`.
    pub fn contract(&self, v: &HomVector<S>, j: usize) -> Result<HomVector<S>> {
        let (y, yd) = (v.word[j], v.word[j + 1]);
        if self.spec.dual(y) != yd {
            return Err(Error::WordMismatch(format!(
                "legs {j},{} of {} are not dual",
                j + 1,
                self.word_name(&v.word)
            )));
        }
        let key = (v.word.clone(), j);
        let cached = self.contractions.lock().expect("contraction cache").get(&key).cloned();
        let map = match cached {
            Some(m) => m,
            None => {
                let spec = &*self.spec;
                let unit = spec.unit(spec.source(y));
                let mut fused = v.word[..j].to_vec();
                fused.push(unit);
                fused.extend_from_slice(&v.word[j + 2..]);
                let mut out_word = fused.clone();
                if out_word.len() > 1 {
                    out_word.remove(j);
                }
                let scale = spec.sqrt_qdim(y).clone();
                let m = Arc::new(self.build_map(&v.word, &out_word, |t| {
                    self.fuse_tree(&v.word, t, j, unit, 0)
                        .into_iter()
                        .map(|(t2, c)| {
                            let t3 = if fused.len() > 1 { Self::remove_unit_tree(&t2, j) } else { t2 };
                            (t3, c * scale.clone())
                        })
                        .collect()
                }));
                self.contractions.lock().expect("contraction cache").insert(key, m.clone());
                m
            }
        };
        Ok(map.apply(&v.coeffs))
    }

    /// `u ∘ v` along the last `k` legs of `u`, which must be the reversed duals
    /// of the first `k` legs of `v`.
    pub fn compose(&self, u: &HomVector<S>, v: &HomVector<S>, k: usize) -> Result<HomVector<S>> {
        let (m, n) = (u.word.len(), v.word.len());
        if k > m || k > n {
            return Err(Error::WordMismatch("composition segment longer than a word".into()));
        }
        for i in 0..k {
            if self.spec.dual(u.word[m - 1 - i]) != v.word[i] {
                return Err(Error::WordMismatch(format!(
                    "cannot compose {} with {} along {k} legs",
                    self.word_name(&u.word),
                    self.word_name(&v.word)
                )));
            }
        }
        if k == 1 && n == 1 && self.spec.is_unit(v.word[0]) {
            return Ok(self.remove_unit_leg(u, m - 1).scale(&v.coeffs[0]));
        }
        if k == 1 && m == 1 && self.spec.is_unit(u.word[0]) {
            return Ok(self.remove_unit_leg(v, 0).scale(&u.coeffs[0]));
        }
        let mut w = self.concat(u, v)?;
        for i in 0..k {
            let j = m - 1 - i;
            w = self.contract(&w, j)?;
        }
        Ok(w)
    }

    /// `u • v`: the composition scaled by `Π √d` over the glued legs.
    pub fn compose_scaled(&self, u: &HomVector<S>, v: &HomVector<S>, k: usize) -> Result<HomVector<S>> {
        let m = u.word.len();
        let scale = u.word[m - k..].iter().fold(S::one(), |acc, &a| acc * self.spec.sqrt_qdim(a).clone());
        Ok(self.compose(u, v, k)?.scale(&scale))
    }

    /// Glues `piece` onto the segment `h[pos..pos+len]`; the piece must start
    /// with the reversed duals of that segment and its remaining legs take the
    /// segment's place.
    pub fn glue(&self, h: &HomVector<S>, pos: usize, len: usize, piece: &HomVector<S>) -> Result<HomVector<S>> {
        let n = h.word.len();
        let rotated = self.rotate_by(h, pos + len);
        let composed = self.compose(&rotated, piece, len)?;
        Ok(self.rotate_by(&composed, n - pos - len))
    }

    /// The spherical pairing of `u ∈ H⟨x̄n⋯x̄1⟩` with `v ∈ H⟨x1⋯xn⟩`.
    pub fn pair(&self, u: &HomVector<S>, v: &HomVector<S>) -> Result<S> {
        if u.word.len() != v.word.len() {
            return Err(Error::WordMismatch(format!(
                "cannot pair {} with {}",
                self.word_name(&u.word),
                self.word_name(&v.word)
            )));
        }
        let w = self.compose(u, v, u.word.len())?;
        Ok(w.coeffs.first().cloned().unwrap_or_else(S::zero))
    }

    /// Reversed duals of a word.
    pub fn dual_word(&self, word: &[Label]) -> Word {
        word.iter().rev().map(|&a| self.spec.dual(a)).collect()
    }

    /// Canonical basis of `H⟨W⟩` and its dual basis in `H⟨W*⟩`.
    pub fn dual_basis(&self, word: &[Label]) -> Result<Arc<DualBasis<S>>> {
        if let Some(d) = self.duals.lock().expect("dual cache").get(word) {
            return Ok(d.clone());
        }
        let n = self.basis(word).len();
        let dword = self.dual_word(word);
        let dn = self.basis(&dword).len();
        if n != dn {
            return Err(Error::SingularGram(self.word_name(word)));
        }
        let basis: Vec<_> = (0..n).map(|i| self.basis_vector(word, i)).collect();
        let duals: Vec<_> = (0..n).map(|j| self.basis_vector(&dword, j)).collect();
        let mut gram = Mat::zeros(n, n);
        for (j, d) in duals.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                gram[(j, i)] = self.pair(d, b)?;
            }
        }
        let inv = gram.inverse(&self.pol).ok_or_else(|| Error::SingularGram(self.word_name(word)))?;
        // dual_i = Σ_j inv[i][j] T*_j so that pair(dual_i, T_k) = δ_ik
        let dual = (0..n)
            .map(|i| HomVector { word: dword.clone(), coeffs: (0..n).map(|j| inv[(i, j)].clone()).collect() })
            .collect();
        let d = Arc::new(DualBasis { basis, dual });
        self.duals.lock().expect("dual cache").insert(word.to_vec(), d.clone());
        Ok(d)
    }

    /// The unit morphism `e_W ∈ H⟨W* W⟩`.
    pub fn unit(&self, word: &[Label]) -> Result<HomVector<S>> {
        self.check_word_open(word)?;
        if let Some(u) = self.units.lock().expect("unit cache").get(word) {
            return Ok(u.clone());
        }
        let spec = &*self.spec;
        let e = if word.len() == 1 {
            let x = word[0];
            let xd = spec.dual(x);
            let w = vec![xd, x];
            let c = spec.sqrt_qdim(x).clone() * spec.pivotal(xd).clone();
            self.basis_vector(&w, 0).scale(&c)
        } else {
            let k = word.len();
            let head = self.unit(&word[..1])?;
            let tail = self.rotate_by(&self.unit(&word[1..])?, k - 1);
            self.rotate_by(&self.concat(&head, &tail)?, k + 1)
        };
        self.units.lock().expect("unit cache").insert(word.to_vec(), e.clone());
        Ok(e)
    }

    fn check_word_open(&self, word: &[Label]) -> Result<()> {
        if word.is_empty() {
            return Err(Error::Incomposable("empty word".into()));
        }
        for k in 1..word.len() {
            if !self.spec.composable(word[k - 1], word[k]) {
                return Err(Error::Incomposable(self.word_name(word)));
            }
        }
        Ok(())
    }

    /// Partial trace over the last two legs `x x̄`.
    pub fn ptrace(&self, v: &HomVector<S>) -> Result<HomVector<S>> {
        let n = v.word.len();
        if n < 2 {
            return Err(Error::WordMismatch("partial trace needs two legs".into()));
        }
        self.contract(v, n - 2)
    }

    /// Full trace of `f ∈ H⟨ā a⟩`, as a scalar.
    pub fn trace(&self, v: &HomVector<S>) -> Result<S> {
        if v.word.len() != 2 {
            return Err(Error::WordMismatch(format!("trace of {}", self.word_name(&v.word))));
        }
        Ok(self.contract(v, 0)?.coeffs.first().cloned().unwrap_or_else(S::zero))
    }

    /// Simple labels `t` with the given source and target.
    pub fn simples_between(&self, i: usize, j: usize) -> Vec<Label> {
        self.spec.simples_between(i, j)
    }

    /// ⋆-resolution of the strand `S = v[s..s+len]` against
    /// `S̄ = v[sbar..sbar+len]`: for every simple `t`, the vector with `S`
    /// replaced by `t` and `S̄` by `t̄`.
    pub fn star(&self, v: &HomVector<S>, s: usize, len: usize, sbar: usize) -> Result<Vec<(Label, HomVector<S>)>> {
        let seg: Vec<Label> = v.word[s..s + len].to_vec();
        let seg_bar: Vec<Label> = v.word[sbar..sbar + len].to_vec();
        if self.dual_word(&seg) != seg_bar || (s < sbar && s + len > sbar) || (sbar < s && sbar + len > s) {
            return Err(Error::WordMismatch(format!(
                "segments {} and {} are not a dual pair",
                self.word_name(&seg),
                self.word_name(&seg_bar)
            )));
        }
        let spec = &*self.spec;
        let (i, j) = (spec.source(seg[0]), spec.target(seg[len - 1]));
        let weight = seg.iter().fold(S::one(), |acc, &x| acc * spec.trace_dim(x));
        let mut out = Vec::new();
        for t in self.simples_between(i, j) {
            let mut alpha_word = seg.clone();
            alpha_word.push(spec.dual(t));
            let db = self.dual_basis(&alpha_word)?;
            if db.basis.is_empty() {
                continue;
            }
            let sbar_after = if sbar > s { sbar + 1 - len } else { sbar };
            let mut acc: Option<HomVector<S>> = None;
            for (alpha, alpha_bar) in db.basis.iter().zip(&db.dual) {
                let piece = self.rotate(alpha_bar);
                let first = self.glue(v, s, len, &piece)?;
                let second = self.glue(&first, sbar_after, len, alpha)?;
                match acc.as_mut() {
                    Some(a) => a.add_scaled(&S::one(), &second),
                    None => acc = Some(second),
                }
            }
            let acc = acc.expect("nonempty basis").scale(&weight);
            out.push((t, acc));
        }
        Ok(out)
    }
}
