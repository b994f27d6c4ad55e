//! The tube algebra `Tube(X, I) = ⊕_{a,b,x} H⟨b̄ x̄ a x⟩` with welding.
//!
//! The index set `I` consists of the diagonal simples. A basis element is
//! indexed by `(a, b, x, tree)` where `tree` runs over the canonical basis of
//! `H⟨b̄ x̄ a x⟩`; it is a tube from `b` to `a`, and the product `f · g` of
//! `f ∈ T_{a;b}` with `g ∈ T_{b;c}` lies in `T_{a;c}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::category::{CategorySpec, Label};
use crate::error::{Error, Result};
use crate::homspace::{HomCalculus, HomVector, Word};
use crate::scalars::{Scalar, TolerancePolicy};

/// One basis element of the tube algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeIndex {
    /// Outgoing grade.
    pub a: Label,
    /// Incoming grade.
    pub b: Label,
    /// Label running around the tube.
    pub x: Label,
    /// Position in the canonical basis of `H⟨b̄ x̄ a x⟩`.
    pub tree: usize,
}

/// A tube element in the basis of its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct TubeElement<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> TubeElement<S> {
    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn max_modulus(&self) -> f64 {
        crate::linalg::max_modulus(&self.coeffs)
    }

    pub fn is_negligible(&self, pol: &TolerancePolicy) -> bool {
        self.coeffs.iter().all(|c| c.negligible(pol, 1.0))
    }

    /// Equality within tolerance, relative to the larger element.
    pub fn approx_eq(&self, other: &Self, pol: &TolerancePolicy) -> bool {
        let scale = self.max_modulus().max(other.max_modulus());
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| (a.clone() - b.clone()).negligible(pol, scale))
    }
}

type Product<S> = Arc<Vec<(usize, S)>>;

/// The tube algebra of a category, with a welding cache.
pub struct TubeAlgebra<S: Scalar> {
    calc: Arc<HomCalculus<S>>,
    labels: Vec<Label>,
    basis: Vec<TubeIndex>,
    blocks: HashMap<(Label, Label, Label), (usize, usize)>,
    products: Mutex<HashMap<(usize, usize), Product<S>>>,
}

impl<S: Scalar> std::fmt::Debug for TubeAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TubeAlgebra").field("dim", &self.basis.len()).finish()
    }
}

impl<S: Scalar> TubeAlgebra<S> {
    /// Enumerates the basis, sorted by `(a, b, x, tree)`.
    pub fn build(spec: Arc<CategorySpec<S>>, pol: TolerancePolicy) -> Self {
        Self::from_calculus(Arc::new(HomCalculus::new(spec, pol)))
    }

    pub fn from_calculus(calc: Arc<HomCalculus<S>>) -> Self {
        let spec = calc.spec();
        let labels = spec.diagonal_simples();
        let mut basis = Vec::new();
        let mut blocks = HashMap::new();
        for &a in &labels {
            for &b in &labels {
                for x in spec.simples_between(spec.source(a), spec.source(b)) {
                    let word = Self::word_of(spec, a, b, x);
                    let dim = calc.basis(&word).len();
                    if dim == 0 {
                        continue;
                    }
                    blocks.insert((a, b, x), (basis.len(), dim));
                    basis.extend((0..dim).map(|tree| TubeIndex { a, b, x, tree }));
                }
            }
        }
        Self { calc, labels, basis, blocks, products: Mutex::default() }
    }

    fn word_of(spec: &CategorySpec<S>, a: Label, b: Label, x: Label) -> Word {
        vec![spec.dual(b), spec.dual(x), a, x]
    }

    pub fn calculus(&self) -> &Arc<HomCalculus<S>> {
        &self.calc
    }

    pub fn spec(&self) -> &CategorySpec<S> {
        self.calc.spec()
    }

    pub fn tolerance(&self) -> &TolerancePolicy {
        self.calc.tolerance()
    }

    /// The grades `I`: diagonal simples in label order.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TubeIndex] {
        &self.basis
    }

    /// The boundary word `b̄ x̄ a x` of a block.
    pub fn word(&self, a: Label, b: Label, x: Label) -> Word {
        Self::word_of(self.spec(), a, b, x)
    }

    /// Offset and size of the `(a, b, x)` block, if nonzero.
    pub fn block(&self, a: Label, b: Label, x: Label) -> Option<(usize, usize)> {
        self.blocks.get(&(a, b, x)).copied()
    }

    pub fn zero(&self) -> TubeElement<S> {
        TubeElement { coeffs: vec![S::zero(); self.dim()] }
    }

    pub fn basis_element(&self, i: usize) -> TubeElement<S> {
        let mut f = self.zero();
        f.coeffs[i] = S::one();
        f
    }

    /// Embeds a vector of `H⟨b̄ x̄ a x⟩` as a tube element.
    pub fn from_hom(&self, a: Label, b: Label, x: Label, v: &HomVector<S>) -> Result<TubeElement<S>> {
        let mut f = self.zero();
        self.add_hom(&mut f, a, b, x, v, &S::one())?;
        Ok(f)
    }

    fn add_hom(&self, f: &mut TubeElement<S>, a: Label, b: Label, x: Label, v: &HomVector<S>, s: &S) -> Result<()> {
        if v.word != self.word(a, b, x) {
            return Err(Error::WordMismatch(format!("vector does not lie in the ({a},{b},{x}) tube block")));
        }
        if let Some((off, dim)) = self.block(a, b, x) {
            crate::linalg::axpy(&mut f.coeffs[off..off + dim], s, &v.coeffs);
        }
        Ok(())
    }

    /// The `(a, b, x)` component of `f` as a vector of `H⟨b̄ x̄ a x⟩`.
    pub fn component(&self, f: &TubeElement<S>, a: Label, b: Label, x: Label) -> HomVector<S> {
        let word = self.word(a, b, x);
        match self.block(a, b, x) {
            Some((off, dim)) => HomVector { word, coeffs: f.coeffs[off..off + dim].to_vec() },
            None => self.calc.zero(&word),
        }
    }

    /// Nonzero blocks as `(a, b, x)` triples, in basis order.
    pub fn blocks(&self) -> Vec<(Label, Label, Label)> {
        let mut v: Vec<_> = self.blocks.iter().map(|(k, (off, _))| (*off, *k)).collect();
        v.sort_unstable();
        v.into_iter().map(|(_, k)| k).collect()
    }

    fn basis_hom(&self, i: usize) -> HomVector<S> {
        let t = self.basis[i];
        self.calc.basis_vector(&self.word(t.a, t.b, t.x), t.tree)
    }

    /// The product of two basis elements, as sparse coefficients.
    pub fn weld_basis(&self, i: usize, j: usize) -> Result<Product<S>> {
        if let Some(p) = self.products.lock().expect("weld cache").get(&(i, j)) {
            return Ok(p.clone());
        }
        let (ti, tj) = (self.basis[i], self.basis[j]);
        let mut out = Vec::new();
        if ti.b == tj.a {
            for (t, v) in self.weld_onto(&self.basis_hom(i), j)? {
                if let Some((off, _)) = self.block(ti.a, tj.b, t) {
                    for (k, c) in v.coeffs.into_iter().enumerate() {
                        if !c.is_exact_zero() {
                            out.push((off + k, c));
                        }
                    }
                }
            }
        }
        let p = Arc::new(out);
        self.products.lock().expect("weld cache").insert((i, j), p.clone());
        Ok(p)
    }

    /// Welds the basis element `j ∈ T_{c;d}` below a diagram
    /// `h ∈ H⟨c̄ x̄ A x⟩` whose holes carry the word `A`. The result has one
    /// component `H⟨d̄ t̄ A t⟩` for every loop label `t`.
    pub fn weld_onto(&self, h: &HomVector<S>, j: usize) -> Result<Vec<(Label, HomVector<S>)>> {
        let n = h.word.len();
        let f = self.calc.rotate(h);
        let g = self.calc.rotate_by(&self.basis_hom(j), 2);
        let fg = self.calc.rotate_by(&self.calc.compose(&f, &g, 1)?, n + 1);
        Ok(self
            .calc
            .star(&fg, n - 1, 2, 0)?
            .into_iter()
            .map(|(t, v)| (t, self.calc.rotate_by(&v, n - 1)))
            .collect())
    }

    /// The welding product `f · g`.
    pub fn weld(&self, f: &TubeElement<S>, g: &TubeElement<S>) -> Result<TubeElement<S>> {
        let mut out = self.zero();
        for (i, fi) in f.coeffs.iter().enumerate() {
            if fi.is_exact_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if gj.is_exact_zero() || self.basis[i].b != self.basis[j].a {
                    continue;
                }
                let c = fi.clone() * gj.clone();
                for (k, v) in self.weld_basis(i, j)?.iter() {
                    out.coeffs[*k] = out.coeffs[*k].clone() + v.clone() * c.clone();
                }
            }
        }
        Ok(out)
    }

    /// Embeds `h ∈ H⟨ā a⟩` into `T_{a;a}` with the unit as loop label.
    fn embed_trivial_loop(&self, a: Label, h: &HomVector<S>) -> Result<TubeElement<S>> {
        let spec = self.spec();
        let unit = spec.unit(spec.source(a));
        let v = self.calc.insert_unit_leg(&self.calc.insert_unit_leg(h, 1), 3);
        self.from_hom(a, a, unit, &v)
    }

    /// The local unit `e_a` for a diagonal simple `a`.
    pub fn local_unit(&self, a: Label) -> Result<TubeElement<S>> {
        self.embed_trivial_loop(a, &self.calc.unit(&[a])?)
    }

    /// The local unit `e_F = Σ_{a ∈ F} e_a`.
    pub fn local_unit_set(&self, labels: &[Label]) -> Result<TubeElement<S>> {
        labels.iter().try_fold(self.zero(), |acc, &a| Ok(acc.add(&self.local_unit(a)?)))
    }

    /// The symmetric form `ε`: trace of the components with `a = b` and trivial loop.
    pub fn epsilon(&self, f: &TubeElement<S>) -> Result<S> {
        let spec = self.spec();
        let mut total = S::zero();
        for &a in &self.labels {
            let unit = spec.unit(spec.source(a));
            if self.block(a, a, unit).is_none() {
                continue;
            }
            let v = self.component(f, a, a, unit);
            let v = self.calc.remove_unit_leg(&self.calc.remove_unit_leg(&v, 3), 1);
            total = total + self.calc.trace(&v)?;
        }
        Ok(total)
    }

    /// The involution `#`, sending `T_{a;b}` with loop `x` to `T_{b̄;ā}` with loop `x̄`.
    pub fn sharp(&self, f: &TubeElement<S>) -> Result<TubeElement<S>> {
        let spec = self.spec();
        let mut out = self.zero();
        for (a, b, x) in self.blocks() {
            let v = self.component(f, a, b, x);
            if v.coeffs.iter().all(S::is_exact_zero) {
                continue;
            }
            let r = self.calc.rotate_by(&v, 2);
            self.add_hom(&mut out, spec.dual(b), spec.dual(a), spec.dual(x), &r, &S::one())?;
        }
        Ok(out)
    }

    /// The twist element `τ_a`.
    pub fn twist(&self, a: Label) -> Result<TubeElement<S>> {
        let spec = self.spec();
        let ad = spec.dual(a);
        let v = self.calc.concat(&self.calc.unit(&[a])?, &self.calc.unit(&[ad])?)?;
        let s = S::one() / spec.trace_dim(a);
        Ok(self.from_hom(a, a, ad, &v)?.scale(&s))
    }

    /// The inverse twist element `τ_a^{-1}`.
    pub fn twist_inverse(&self, a: Label) -> Result<TubeElement<S>> {
        let spec = self.spec();
        let ad = spec.dual(a);
        let v = self.calc.rotate(&self.calc.concat(&self.calc.unit(&[ad])?, &self.calc.unit(&[a])?)?);
        let s = S::one() / spec.trace_dim(a);
        Ok(self.from_hom(a, a, a, &v)?.scale(&s))
    }

    /// Total mass of `f` on tubes from `b` to `a`, useful for grading checks.
    pub fn is_graded(&self, f: &TubeElement<S>, a: Label, b: Label) -> bool {
        self.basis
            .iter()
            .zip(&f.coeffs)
            .all(|(t, c)| (t.a == a && t.b == b) || c.negligible(self.tolerance(), 1.0))
    }
}
