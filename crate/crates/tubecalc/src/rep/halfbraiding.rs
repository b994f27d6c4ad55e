//! Half-braidings and the functor `E` from central objects to representations.
//!
//! A central object is `X = ⊕_a V_a ⊗ a` over simples `a` together with
//! isomorphisms `σ_x : x ⊗ X → X ⊗ x`. In a file, `σ_x` is a matrix whose
//! columns are indexed by the source vertices `(c, a, i, μ)`, meaning the
//! splitting vertex `μ: c → x ⊗ a` on the `i`-th copy of `a`, and whose rows
//! are indexed by the target vertices `(c, b, j, ν)` with `ν: c → b ⊗ x`.
//! Both lists are sorted lexicographically by label index, copy and
//! multiplicity. Entries between different channels `c` must vanish.
//!
//! `E(X)_d = H⟨d̄ X⟩ = ⊕ V_d`, with the tube action obtained by gluing the
//! tube onto `X` and moving the loop across `X` with the half-braiding.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::Representation;
use crate::category::{CategorySpec, Label};
use crate::error::{Error, Result};
use crate::homspace::{HomCalculus, HomVector, Word};
use crate::linalg::Mat;
use crate::scalars::Scalar;
use crate::tube::TubeAlgebra;

/// The JSON form of one central object.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfBraidingFile {
    #[serde(default)]
    pub name: String,
    /// Multiplicity of each simple summand.
    pub object: BTreeMap<String, usize>,
    pub sigma: Vec<SigmaEntry>,
}

/// The matrix of `σ_x` for one simple `x`, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaEntry {
    pub x: String,
    pub matrix: Vec<Vec<String>>,
}

/// A vertex `(c, a, copy, multiplicity)` indexing rows or columns of `σ_x`.
pub type SigmaIndex = (Label, Label, usize, usize);

#[derive(Clone, Debug)]
struct SigmaBlock<S> {
    target_index: HashMap<SigmaIndex, usize>,
    target: Vec<SigmaIndex>,
    source_index: HashMap<SigmaIndex, usize>,
    matrix: Mat<S>,
}

/// A central object with its half-braiding.
#[derive(Clone, Debug)]
pub struct HalfBraidingData<S> {
    pub name: String,
    dims: Vec<usize>,
    sigma: HashMap<Label, SigmaBlock<S>>,
}

impl<S: Scalar> HalfBraidingData<S> {
    /// Parses a JSON document against a category.
    pub fn load(spec: &CategorySpec<S>, document: &[u8]) -> Result<Self> {
        let file: HalfBraidingFile =
            serde_json::from_slice(document).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(spec, &file)
    }

    pub fn from_file(spec: &CategorySpec<S>, file: &HalfBraidingFile) -> Result<Self> {
        let mut dims = vec![0; spec.num_simples()];
        for (name, &n) in &file.object {
            dims[spec.label(name)?] = n;
        }
        let mut given: HashMap<Label, &SigmaEntry> = HashMap::new();
        for e in &file.sigma {
            if given.insert(spec.label(&e.x)?, e).is_some() {
                return Err(Error::HalfBraiding(format!("σ_{} listed twice", e.x)));
            }
        }
        let mut sigma = HashMap::new();
        for x in 0..spec.num_simples() {
            let source = source_basis(spec, &dims, x);
            let target = target_basis(spec, &dims, x);
            if source.len() != target.len() {
                return Err(Error::HalfBraiding(format!(
                    "σ_{} cannot be invertible: {} source and {} target vertices",
                    spec.name(x),
                    source.len(),
                    target.len()
                )));
            }
            let matrix: Mat<S> = match given.remove(&x) {
                Some(entry) => parse_matrix(entry, target.len(), source.len())?,
                None if spec.is_unit(x) || source.is_empty() => identity_on_channels(&source, &target),
                None => return Err(Error::HalfBraiding(format!("σ_{} is missing", spec.name(x)))),
            };
            for (r, t) in target.iter().enumerate() {
                for (c, s) in source.iter().enumerate() {
                    if t.0 != s.0 && !matrix[(r, c)].is_exact_zero() {
                        return Err(Error::HalfBraiding(format!("σ_{} mixes fusion channels", spec.name(x))));
                    }
                }
            }
            let index = |v: &[SigmaIndex]| v.iter().enumerate().map(|(i, k)| (*k, i)).collect();
            sigma.insert(
                x,
                SigmaBlock { target_index: index(&target), source_index: index(&source), target, matrix },
            );
        }
        if let Some(x) = given.keys().next() {
            return Err(Error::HalfBraiding(format!("σ_{} given for an unused label", spec.name(*x))));
        }
        Ok(Self { name: file.name.clone(), dims, sigma })
    }

    /// Multiplicity of the simple `a` in the object.
    pub fn multiplicity(&self, a: Label) -> usize {
        self.dims[a]
    }

    /// Simple summands with their multiplicities.
    pub fn summands(&self) -> impl Iterator<Item = (Label, usize)> + '_ {
        self.dims.iter().enumerate().filter(|(_, &n)| n > 0).map(|(a, &n)| (a, n))
    }

    /// `σ_x` applied to the source vertex `(c, a, i, μ)`.
    fn column(&self, x: Label, src: &SigmaIndex) -> Vec<(SigmaIndex, S)> {
        let blk = &self.sigma[&x];
        let Some(&col) = blk.source_index.get(src) else { return Vec::new() };
        blk.target
            .iter()
            .enumerate()
            .filter(|(r, _)| !blk.matrix[(*r, col)].is_exact_zero())
            .map(|(r, t)| (*t, blk.matrix[(r, col)].clone()))
            .collect()
    }

    /// The matrix of `σ_x` in the documented vertex bases.
    pub fn sigma_matrix(&self, x: Label) -> &Mat<S> {
        &self.sigma[&x].matrix
    }

    /// Whether `(c, b, j, ν)` is a target vertex of `σ_x`.
    pub fn has_target(&self, x: Label, t: &SigmaIndex) -> bool {
        self.sigma[&x].target_index.contains_key(t)
    }
}

/// Source vertices `(c, a, i, μ)` of `σ_x`, sorted.
pub fn source_basis<S: Scalar>(spec: &CategorySpec<S>, dims: &[usize], x: Label) -> Vec<SigmaIndex> {
    let mut v = Vec::new();
    for a in (0..spec.num_simples()).filter(|&a| dims[a] > 0 && spec.composable(x, a)) {
        for &(c, m) in spec.channels(x, a) {
            for i in 0..dims[a] {
                v.extend((0..m).map(|mu| (c, a, i, mu)));
            }
        }
    }
    v.sort_unstable();
    v
}

/// Target vertices `(c, b, j, ν)` of `σ_x`, sorted.
pub fn target_basis<S: Scalar>(spec: &CategorySpec<S>, dims: &[usize], x: Label) -> Vec<SigmaIndex> {
    let mut v = Vec::new();
    for b in (0..spec.num_simples()).filter(|&b| dims[b] > 0 && spec.composable(b, x)) {
        for &(c, m) in spec.channels(b, x) {
            for j in 0..dims[b] {
                v.extend((0..m).map(|nu| (c, b, j, nu)));
            }
        }
    }
    v.sort_unstable();
    v
}

fn parse_matrix<S: Scalar>(entry: &SigmaEntry, rows: usize, cols: usize) -> Result<Mat<S>> {
    if entry.matrix.len() != rows || entry.matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::HalfBraiding(format!("σ_{} must be a {rows}×{cols} matrix", entry.x)));
    }
    let rows = entry
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| S::parse(s).map_err(|e| Error::HalfBraiding(format!("σ_{}: `{s}`: {e}", entry.x))))
                .collect::<Result<Vec<S>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(rows))
}

fn identity_on_channels<S: Scalar>(source: &[SigmaIndex], target: &[SigmaIndex]) -> Mat<S> {
    let mut m = Mat::zeros(target.len(), source.len());
    for (c, s) in source.iter().enumerate() {
        if let Some(r) = target.iter().position(|t| t == s) {
            m[(r, c)] = S::one();
        }
    }
    m
}

/// Marks a leg that belongs to the `factor`-th central object, on its `copy`-th summand copy.
pub type LegTag = Option<(usize, usize)>;

/// A linear combination of Hom vectors whose legs may carry central-object copies.
#[derive(Clone, Debug)]
pub struct Decorated<S> {
    pub terms: BTreeMap<(Word, Vec<LegTag>), HomVector<S>>,
}

impl<S> Default for Decorated<S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Decorated<S> {
    pub fn single(v: HomVector<S>, tags: Vec<LegTag>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((v.word.clone(), tags), v);
        Self { terms }
    }

    pub fn add_term(&mut self, v: HomVector<S>, tags: Vec<LegTag>, s: &S) {
        match self.terms.get_mut(&(v.word.clone(), tags.clone())) {
            Some(acc) => acc.add_scaled(s, &v),
            None => {
                let w = v.scale(s);
                self.terms.insert((v.word.clone(), tags), w);
            }
        }
    }

    /// Applies a linear map to every term, keeping or transforming tags.
    pub fn map(&self, f: impl Fn(&HomVector<S>, &[LegTag]) -> Result<Vec<(HomVector<S>, Vec<LegTag>)>>) -> Result<Self> {
        let mut out = Self::default();
        for ((_, tags), v) in &self.terms {
            for (w, t) in f(v, tags)? {
                out.add_term(w, t, &S::one());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.scale(s))).collect() }
    }
}

/// Moves the plain leg at `pos` to the right across the central leg at
/// `pos + 1`, using the half-braiding of that leg's factor.
pub fn braid_across<S: Scalar>(
    calc: &HomCalculus<S>,
    factors: &[&HalfBraidingData<S>],
    dec: &Decorated<S>,
    pos: usize,
) -> Result<Decorated<S>> {
    let spec = calc.spec();
    let mut out = Decorated::default();
    for ((word, tags), v) in &dec.terms {
        let (y, a) = (word[pos], word[pos + 1]);
        let Some((factor, copy)) = tags[pos + 1] else {
            return Err(Error::HalfBraiding("braiding across a leg without a half-braiding".into()));
        };
        let hb = factors[factor];
        for &(c, m) in spec.channels(y, a) {
            for mu in 0..m {
                let w = calc.fuse_legs(v, pos, c, mu);
                if w.coeffs.iter().all(S::is_exact_zero) {
                    continue;
                }
                for ((_, b, j, nu), s) in hb.column(y, &(c, a, copy, mu)) {
                    let u = calc.split_leg(&w, pos, b, y, nu);
                    let mut t = tags.clone();
                    t[pos] = Some((factor, j));
                    t[pos + 1] = tags[pos];
                    out.add_term(u, t, &s);
                }
            }
        }
    }
    Ok(out)
}

/// One basis vector of `E(X_1 ⊗ ⋯ ⊗ X_k)`: a tree of `H⟨d̄ a_1 ⋯ a_k⟩` and a copy per summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralBasisEntry {
    pub d: Label,
    pub summands: Vec<Label>,
    pub copies: Vec<usize>,
    pub tree: usize,
}

/// `E` of a tensor word of central objects, with its basis description.
#[derive(Clone, Debug)]
pub struct CentralRep<S> {
    pub rep: Representation<S>,
    pub basis: Vec<CentralBasisEntry>,
    index: HashMap<CentralBasisEntry, usize>,
}

impl<S: Scalar> CentralRep<S> {
    /// Coordinates of a decorated vector over words `d̄ a_1 ⋯ a_k`.
    pub fn coordinates(&self, dec: &Decorated<S>, calc: &HomCalculus<S>) -> Result<Vec<S>> {
        let spec = calc.spec();
        let mut out = vec![S::zero(); self.basis.len()];
        for ((word, tags), v) in &dec.terms {
            let d = spec.dual(word[0]);
            let summands = word[1..].to_vec();
            let copies = tags[1..]
                .iter()
                .map(|t| t.map(|(_, c)| c).ok_or_else(|| Error::HalfBraiding("untagged leg".into())))
                .collect::<Result<Vec<_>>>()?;
            for (tree, c) in v.coeffs.iter().enumerate() {
                if c.is_exact_zero() {
                    continue;
                }
                let key = CentralBasisEntry { d, summands: summands.clone(), copies: copies.clone(), tree };
                let i = *self
                    .index
                    .get(&key)
                    .ok_or_else(|| Error::HalfBraiding("vector outside E(X)".into()))?;
                out[i] = out[i].clone() + c.clone();
            }
        }
        Ok(out)
    }

    /// The decorated vector of a basis element.
    pub fn vector(&self, i: usize, calc: &HomCalculus<S>) -> Decorated<S> {
        let e = &self.basis[i];
        let mut word = vec![calc.spec().dual(e.d)];
        word.extend_from_slice(&e.summands);
        let mut tags = vec![None];
        tags.extend(e.copies.iter().enumerate().map(|(f, &c)| Some((f, c))));
        Decorated::single(calc.basis_vector(&word, e.tree), tags)
    }
}

/// `E(X)` for one central object.
pub fn from_halfbraiding<S: Scalar>(t: &TubeAlgebra<S>, hb: &HalfBraidingData<S>) -> Result<Representation<S>> {
    Ok(central_rep(t, &[hb])?.rep)
}

/// `E(X_1 ⊗ ⋯ ⊗ X_k)` with the tensor product kept unexpanded.
pub fn central_rep<S: Scalar>(t: &TubeAlgebra<S>, factors: &[&HalfBraidingData<S>]) -> Result<CentralRep<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let mut basis = Vec::new();
    let mut dims = Vec::new();
    for &d in t.labels() {
        let before = basis.len();
        let mut choices: Vec<(Vec<Label>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
        for hb in factors {
            let mut next = Vec::new();
            for (s, c) in &choices {
                for (a, n) in hb.summands() {
                    for i in 0..n {
                        let (mut s2, mut c2) = (s.clone(), c.clone());
                        s2.push(a);
                        c2.push(i);
                        next.push((s2, c2));
                    }
                }
            }
            choices = next;
        }
        choices.sort();
        for (summands, copies) in choices {
            let mut word = vec![spec.dual(d)];
            word.extend_from_slice(&summands);
            if calc.check_word(&word).is_err() {
                continue;
            }
            for tree in 0..calc.basis(&word).len() {
                basis.push(CentralBasisEntry { d, summands: summands.clone(), copies: copies.clone(), tree });
            }
        }
        dims.push(basis.len() - before);
    }
    let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = basis.len();
    let mut cr = CentralRep { rep: Representation::new(t.labels().to_vec(), dims.clone(), Vec::new()), basis, index };
    let k = factors.len();
    let mut action = Vec::with_capacity(t.dim());
    for idx in t.basis() {
        let mut a = Mat::zeros(n, n);
        let f = calc.basis_vector(&t.word(idx.a, idx.b, idx.x), idx.tree);
        for col in 0..n {
            if cr.basis[col].d != idx.a {
                continue;
            }
            let m = cr.vector(col, calc);
            // glue the tube onto X, then pull the loop leg x̄ across every X-leg
            let mut dec = m.map(|v, tags| {
                let g = calc.glue(&f, 2, 1, v)?;
                let mut t2 = vec![None, None];
                t2.extend_from_slice(&tags[1..]);
                t2.push(None);
                Ok(vec![(g, t2)])
            })?;
            for p in 1..=k {
                dec = braid_across(calc, factors, &dec, p)?;
            }
            let dec = dec.map(|v, tags| {
                let w = calc.contract(v, k + 1)?;
                let mut t2 = tags.to_vec();
                t2.truncate(k + 1);
                Ok(vec![(w, t2)])
            })?;
            let coords = cr.coordinates(&dec.scale(&spec.trace_dim(idx.x)), calc)?;
            for (r, c) in coords.into_iter().enumerate() {
                a[(r, col)] = c;
            }
        }
        action.push(a);
    }
    cr.rep = Representation::new(t.labels().to_vec(), dims, action);
    Ok(cr)
}
