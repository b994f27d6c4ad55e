//! The JSON file format for category presentations.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{index_map, CategorySpec, FBlock, Label, SimpleLabel, TreeIndex};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Scalar, TolerancePolicy};

/// Top-level document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub notes: String,
    pub zero_cells: usize,
    pub simples: Vec<SimpleEntry>,
    pub fusion: Vec<FusionEntry>,
    #[serde(rename = "F")]
    pub f: Vec<FEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleEntry {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub dual: String,
    pub qdim: String,
    pub sqrt_qdim: String,
    #[serde(default = "one")]
    pub pivotal: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
    #[serde(default)]
    pub mu: usize,
    #[serde(default)]
    pub nu: usize,
    #[serde(default)]
    pub rho: usize,
    #[serde(default)]
    pub sigma: usize,
    pub value: String,
}

fn parse_field<S: Scalar>(text: &str, what: &str) -> Result<S> {
    S::parse(text).map_err(|e| Error::Schema(format!("{what}: cannot parse `{text}`: {e}")))
}

pub(super) fn build<S: Scalar>(file: &SpecFile) -> Result<CategorySpec<S>> {
    if file.zero_cells == 0 {
        return Err(Error::Schema("zero_cells must be at least 1".into()));
    }
    let mut by_name = HashMap::new();
    for (i, s) in file.simples.iter().enumerate() {
        if by_name.insert(s.name.clone(), i).is_some() {
            return Err(Error::Schema(format!("duplicate simple `{}`", s.name)));
        }
        if s.source >= file.zero_cells || s.target >= file.zero_cells {
            return Err(Error::Schema(format!("simple `{}` has an out-of-range 0-cell", s.name)));
        }
    }
    let lookup = |name: &str| by_name.get(name).copied().ok_or_else(|| Error::UnknownLabel(name.into()));

    let mut simples = Vec::with_capacity(file.simples.len());
    for s in &file.simples {
        simples.push(SimpleLabel {
            name: s.name.clone(),
            source: s.source,
            target: s.target,
            dual: lookup(&s.dual)?,
            qdim: parse_field(&s.qdim, &format!("qdim of `{}`", s.name))?,
            sqrt_qdim: parse_field(&s.sqrt_qdim, &format!("sqrt_qdim of `{}`", s.name))?,
            pivotal: parse_field(&s.pivotal, &format!("pivotal of `{}`", s.name))?,
        });
    }

    let mut fusion: HashMap<(Label, Label), Vec<(Label, usize)>> = HashMap::new();
    let mut seen = HashSet::new();
    for e in &file.fusion {
        let (a, b, c) = (lookup(&e.a)?, lookup(&e.b)?, lookup(&e.c)?);
        let (sa, sb, sc) = (&simples[a], &simples[b], &simples[c]);
        if sa.target != sb.source || sa.source != sc.source || sb.target != sc.target {
            return Err(Error::Schema(format!("fusion {} ⊗ {} → {} is not composable", e.a, e.b, e.c)));
        }
        if e.mult == 0 {
            return Err(Error::Schema(format!("fusion {} ⊗ {} → {} has multiplicity 0", e.a, e.b, e.c)));
        }
        if !seen.insert((a, b, c)) {
            return Err(Error::Schema(format!("fusion {} ⊗ {} → {} listed twice", e.a, e.b, e.c)));
        }
        fusion.entry((a, b)).or_default().push((c, e.mult));
    }
    for v in fusion.values_mut() {
        v.sort_unstable();
    }

    let mut spec = CategorySpec {
        name: file.name.clone(),
        notes: file.notes.clone(),
        zero_cells: file.zero_cells,
        simples,
        units: Vec::new(),
        by_name,
        fusion,
        blocks: HashMap::new(),
    };
    spec.units = find_units(&spec)?;
    spec.blocks = build_blocks(&spec, file)?;
    Ok(spec)
}

fn find_units<S: Scalar>(spec: &CategorySpec<S>) -> Result<Vec<Label>> {
    (0..spec.zero_cells)
        .map(|i| {
            spec.simples_between(i, i)
                .into_iter()
                .find(|&u| {
                    (0..spec.num_simples()).all(|b| {
                        (spec.source(b) != i || spec.channels(u, b) == [(b, 1)])
                            && (spec.target(b) != i || spec.channels(b, u) == [(b, 1)])
                    })
                })
                .ok_or_else(|| Error::Schema(format!("0-cell {i} has no unit simple")))
        })
        .collect()
}

type BlockKey = (Label, Label, Label, Label);

fn build_blocks<S: Scalar>(spec: &CategorySpec<S>, file: &SpecFile) -> Result<HashMap<BlockKey, FBlock<S>>> {
    let lookup = |name: &str| spec.label(name);
    let mut listed: HashMap<BlockKey, Vec<(TreeIndex, TreeIndex, S)>> = HashMap::new();
    for e in &file.f {
        let key = (lookup(&e.a)?, lookup(&e.b)?, lookup(&e.c)?, lookup(&e.d)?);
        let left = (lookup(&e.e)?, e.mu, e.nu);
        let right = (lookup(&e.f)?, e.rho, e.sigma);
        let what = format!("F[{},{},{};{}]({},{})", e.a, e.b, e.c, e.d, e.e, e.f);
        listed.entry(key).or_default().push((left, right, parse_field(&e.value, &what)?));
    }

    let pol = TolerancePolicy::default();
    let mut blocks = HashMap::new();
    let n = spec.num_simples();
    for a in 0..n {
        for b in (0..n).filter(|&b| spec.composable(a, b)) {
            for c in (0..n).filter(|&c| spec.composable(b, c)) {
                for d in spec.simples_between(spec.source(a), spec.target(c)) {
                    let (left, right) = spec.tree_bases(a, b, c, d);
                    if left.is_empty() && right.is_empty() {
                        continue;
                    }
                    let key = (a, b, c, d);
                    let label = format!("{},{},{};{}", spec.name(a), spec.name(b), spec.name(c), spec.name(d));
                    if left.len() != right.len() {
                        return Err(Error::FBlock(
                            label,
                            format!("non-square block {}×{}", left.len(), right.len()),
                        ));
                    }
                    let (li, ri) = (index_map(&left), index_map(&right));
                    let entries = listed.remove(&key).unwrap_or_default();
                    let unit_block = spec.is_unit(a) || spec.is_unit(b) || spec.is_unit(c);
                    let mut matrix = Mat::zeros(left.len(), right.len());
                    if unit_block {
                        for (i, &l) in left.iter().enumerate() {
                            let r = unit_right(spec, a, b, c, d, l);
                            matrix[(i, ri[&r])] = S::one();
                        }
                    }
                    let mut filled = HashSet::new();
                    for (l, r, v) in entries {
                        let (Some(&i), Some(&j)) = (li.get(&l), ri.get(&r)) else {
                            return Err(Error::FBlock(label, "entry with inadmissible tree labels".into()));
                        };
                        if !filled.insert((i, j)) {
                            return Err(Error::FBlock(label, "entry listed twice".into()));
                        }
                        if unit_block {
                            if !v.approx_eq(&matrix[(i, j)], &pol) {
                                return Err(Error::FBlock(
                                    label,
                                    "blocks with a unit label must be identity matrices".into(),
                                ));
                            }
                        } else {
                            matrix[(i, j)] = v;
                        }
                    }
                    let inverse = matrix
                        .inverse(&pol)
                        .ok_or_else(|| Error::FBlock(label.clone(), "block is singular".into()))?;
                    blocks.insert(
                        key,
                        FBlock { left_index: li, right_index: ri, left, right, matrix, inverse },
                    );
                }
            }
        }
    }
    if let Some(((a, b, c, d), _)) = listed.into_iter().next() {
        return Err(Error::FBlock(
            format!("{},{},{};{}", spec.name(a), spec.name(b), spec.name(c), spec.name(d)),
            "entries given for an inadmissible block".into(),
        ));
    }
    Ok(blocks)
}

/// The right tree matched to `left` by the unit gauge.
fn unit_right<S: Scalar>(spec: &CategorySpec<S>, a: Label, b: Label, c: Label, d: Label, left: TreeIndex) -> TreeIndex {
    let (e, mu, nu) = left;
    if spec.is_unit(a) {
        (d, nu, 0)
    } else if spec.is_unit(b) {
        (c, 0, nu)
    } else {
        debug_assert!(spec.is_unit(c) && e == d);
        (b, 0, mu)
    }
}
