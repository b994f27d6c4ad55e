//! Presentations of spherical multifusion categories.
//!
//! A [`CategorySpec`] lists 0-cells, simple 1-cells with source and target,
//! duals, quantum dimensions with chosen square roots, pivotal coefficients,
//! fusion multiplicities and F-symbols.
//!
//! Fusion-tree conventions: a splitting vertex `μ: c → a ⊗ b` carries a
//! multiplicity index `μ < N_{ab}^c`; fusion vertices are dual to splitting
//! vertices (`f^μ ∘ s^ν = δ_{μν} id`). For `d` simple, the left-nested basis of
//! `Hom(d, a ⊗ b ⊗ c)` consists of `((a b)_e c)_d` with vertices
//! `μ: e → a ⊗ b`, `ν: d → e ⊗ c`; the right-nested basis consists of
//! `(a (b c)_f)_d` with `ρ: f → b ⊗ c`, `σ: d → a ⊗ f`. The F-block at
//! `(a, b, c; d)` is the matrix with
//! `L_{(e,μ,ν)} = Σ F[(e,μ,ν), (f,ρ,σ)] R_{(f,ρ,σ)}`.

mod file;
pub(crate) mod validate;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Scalar, TolerancePolicy};

pub use file::{FEntry, FusionEntry, SimpleEntry, SpecFile};
pub use validate::{CheckResult, ValidationReport};

/// Index of a 0-cell.
pub type ZeroCell = usize;
/// Index of a simple 1-cell.
pub type Label = usize;
/// A vertex of a nested fusion tree: (internal label, first multiplicity, second multiplicity).
pub type TreeIndex = (Label, usize, usize);

/// A simple 1-cell and its numerical data.
#[derive(Clone, Debug)]
pub struct SimpleLabel<S> {
    pub name: String,
    pub source: ZeroCell,
    pub target: ZeroCell,
    pub dual: Label,
    pub qdim: S,
    pub sqrt_qdim: S,
    pub pivotal: S,
}

/// The F-matrix for one admissible `(a, b, c; d)` and its inverse.
#[derive(Clone, Debug)]
pub struct FBlock<S> {
    pub left: Vec<TreeIndex>,
    pub right: Vec<TreeIndex>,
    left_index: HashMap<TreeIndex, usize>,
    right_index: HashMap<TreeIndex, usize>,
    pub matrix: Mat<S>,
    pub inverse: Mat<S>,
}

impl<S: Scalar> FBlock<S> {
    pub fn left_pos(&self, t: &TreeIndex) -> Option<usize> {
        self.left_index.get(t).copied()
    }

    pub fn right_pos(&self, t: &TreeIndex) -> Option<usize> {
        self.right_index.get(t).copied()
    }

    /// `F[left, right]`.
    pub fn entry(&self, left: &TreeIndex, right: &TreeIndex) -> Option<&S> {
        Some(&self.matrix[(self.left_pos(left)?, self.right_pos(right)?)])
    }

    /// `F^{-1}[right, left]`.
    pub fn inverse_entry(&self, right: &TreeIndex, left: &TreeIndex) -> Option<&S> {
        Some(&self.inverse[(self.right_pos(right)?, self.left_pos(left)?)])
    }
}

/// A loaded category presentation.
#[derive(Clone, Debug)]
pub struct CategorySpec<S> {
    pub name: String,
    pub notes: String,
    pub zero_cells: usize,
    pub simples: Vec<SimpleLabel<S>>,
    units: Vec<Label>,
    by_name: HashMap<String, Label>,
    fusion: HashMap<(Label, Label), Vec<(Label, usize)>>,
    blocks: HashMap<(Label, Label, Label, Label), FBlock<S>>,
}

impl<S: Scalar> CategorySpec<S> {
    /// Parses a JSON spec document.
    pub fn load(document: &[u8]) -> Result<Self> {
        let file: SpecFile = serde_json::from_slice(document)
            .map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Reads and parses a JSON spec file.
    pub fn load_path(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::load(&std::fs::read(path)?)
    }

    /// Builds a spec from its deserialized file form.
    pub fn from_file(file: &SpecFile) -> Result<Self> {
        file::build(file)
    }

    pub fn num_simples(&self) -> usize {
        self.simples.len()
    }

    /// Looks a label up by name.
    pub fn label(&self, name: &str) -> Result<Label> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn name(&self, a: Label) -> &str {
        &self.simples[a].name
    }

    pub fn dual(&self, a: Label) -> Label {
        self.simples[a].dual
    }

    pub fn source(&self, a: Label) -> ZeroCell {
        self.simples[a].source
    }

    pub fn target(&self, a: Label) -> ZeroCell {
        self.simples[a].target
    }

    /// The stored quantum dimension `d_a`.
    pub fn qdim(&self, a: Label) -> &S {
        &self.simples[a].qdim
    }

    /// The stored square root `√d_a`.
    pub fn sqrt_qdim(&self, a: Label) -> &S {
        &self.simples[a].sqrt_qdim
    }

    /// The pivotal coefficient `p_a`.
    pub fn pivotal(&self, a: Label) -> &S {
        &self.simples[a].pivotal
    }

    /// The value `d_a p_a` of a closed `a`-loop built from the stored cups and caps.
    ///
    /// It equals `d_a` whenever `p_a = 1`.
    pub fn trace_dim(&self, a: Label) -> S {
        self.qdim(a).clone() * self.pivotal(a).clone()
    }

    /// Quantum dimension of the simple called `name`.
    pub fn qdim_of(&self, name: &str) -> Result<S> {
        Ok(self.qdim(self.label(name)?).clone())
    }

    /// The unit simple of a 0-cell.
    pub fn unit(&self, i: ZeroCell) -> Label {
        self.units[i]
    }

    pub fn is_unit(&self, a: Label) -> bool {
        self.units[self.source(a)] == a
    }

    /// Simple objects of `X_{ii}` for every 0-cell `i`, in label order.
    pub fn diagonal_simples(&self) -> Vec<Label> {
        (0..self.num_simples()).filter(|&a| self.source(a) == self.target(a)).collect()
    }

    /// Simples with the given source and target.
    pub fn simples_between(&self, i: ZeroCell, j: ZeroCell) -> Vec<Label> {
        (0..self.num_simples()).filter(|&a| self.source(a) == i && self.target(a) == j).collect()
    }

    /// `(c, N_{ab}^c)` for all `c` with nonzero multiplicity.
    pub fn channels(&self, a: Label, b: Label) -> &[(Label, usize)] {
        self.fusion.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    /// `N_{ab}^c`.
    pub fn mult(&self, a: Label, b: Label, c: Label) -> usize {
        self.channels(a, b).iter().find(|(x, _)| *x == c).map_or(0, |(_, m)| *m)
    }

    pub fn f_block(&self, a: Label, b: Label, c: Label, d: Label) -> Option<&FBlock<S>> {
        self.blocks.get(&(a, b, c, d))
    }

    /// All stored F-blocks keyed by `(a, b, c, d)`.
    pub fn f_blocks(&self) -> impl Iterator<Item = (&(Label, Label, Label, Label), &FBlock<S>)> {
        self.blocks.iter()
    }

    /// `F[(e,μ,ν), (f,ρ,σ)]` at `(a, b, c; d)`, zero if inadmissible.
    pub fn f(&self, a: Label, b: Label, c: Label, d: Label, left: TreeIndex, right: TreeIndex) -> S {
        self.f_block(a, b, c, d).and_then(|blk| blk.entry(&left, &right)).cloned().unwrap_or_else(S::zero)
    }

    /// `F^{-1}[(f,ρ,σ), (e,μ,ν)]` at `(a, b, c; d)`, zero if inadmissible.
    pub fn f_inv(&self, a: Label, b: Label, c: Label, d: Label, right: TreeIndex, left: TreeIndex) -> S {
        self.f_block(a, b, c, d)
            .and_then(|blk| blk.inverse_entry(&right, &left))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Whether `a` can be followed by `b` in a tensor word.
    pub fn composable(&self, a: Label, b: Label) -> bool {
        self.target(a) == self.source(b)
    }

    /// Label names joined by spaces, for messages.
    pub fn word_name(&self, word: &[Label]) -> String {
        word.iter().map(|&a| self.name(a)).collect::<Vec<_>>().join(" ")
    }

    /// Checks the presentation; failures are report entries.
    pub fn validate(&self, pol: &TolerancePolicy) -> ValidationReport {
        validate::validate(self, pol)
    }

    /// Global dimension `Σ d_a²` over simples of `X_{ij}` for all `j`.
    pub fn global_dimension(&self, i: ZeroCell) -> S {
        (0..self.num_simples())
            .filter(|&a| self.source(a) == i)
            .fold(S::zero(), |acc, a| acc + self.qdim(a).clone() * self.qdim(a).clone())
    }

    /// The left and right bases of `Hom(d, a ⊗ b ⊗ c)`.
    fn tree_bases(&self, a: Label, b: Label, c: Label, d: Label) -> (Vec<TreeIndex>, Vec<TreeIndex>) {
        let mut left = Vec::new();
        for &(e, m1) in self.channels(a, b) {
            let m2 = self.mult(e, c, d);
            for mu in 0..m1 {
                for nu in 0..m2 {
                    left.push((e, mu, nu));
                }
            }
        }
        let mut right = Vec::new();
        for &(f, m1) in self.channels(b, c) {
            let m2 = self.mult(a, f, d);
            for rho in 0..m1 {
                for sigma in 0..m2 {
                    right.push((f, rho, sigma));
                }
            }
        }
        (left, right)
    }
}

fn index_map(v: &[TreeIndex]) -> HashMap<TreeIndex, usize> {
    v.iter().enumerate().map(|(i, t)| (*t, i)).collect()
}
