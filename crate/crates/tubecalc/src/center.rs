//! Comparison of explicit Drinfeld center objects with the simple modules.
//!
//! A center fixture lists half-braidings on a category. Each object `X` is
//! sent to the representation `E(X)` and identified with a sum of simple
//! modules. For each pair the map `Ψ_{X,Y}: E(X) □ E(Y) → E(X ⊗ Y)` is
//! built and checked to be an invertible intertwiner compatible with the
//! braidings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::category::CategorySpec;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::monoidal::{braiding, multiplicities, tensor, ProductVector, Tensor};
use crate::rep::{
    braid_across, central_rep, CentralRep, Decorated, HalfBraidingData, HalfBraidingFile, LegTag, Representation,
    SimpleModule,
};
use crate::scalars::Scalar;
use crate::tube::TubeAlgebra;

/// The JSON form of a center fixture.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterFixture {
    /// Path of the category, relative to the fixture file.
    pub spec: String,
    #[serde(default)]
    pub notes: String,
    pub entries: Vec<HalfBraidingFile>,
    /// For each entry name, the indices of the simple modules in `E(X)`, repeated by multiplicity.
    #[serde(default)]
    pub expected: BTreeMap<String, Vec<usize>>,
}

impl CenterFixture {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
    }

    /// The category path resolved against the directory of `fixture_path`.
    pub fn spec_path(&self, fixture_path: impl AsRef<Path>) -> PathBuf {
        fixture_path.as_ref().parent().unwrap_or_else(|| Path::new("")).join(&self.spec)
    }

    /// Parses the half-braidings against a category.
    pub fn half_braidings<S: Scalar>(&self, spec: &CategorySpec<S>) -> Result<Vec<HalfBraidingData<S>>> {
        self.entries.iter().map(|e| HalfBraidingData::from_file(spec, e)).collect()
    }
}

/// The identification of one center object.
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub dims: Vec<usize>,
    pub module_law_residual: f64,
    /// Multiplicity of each simple module in `E(X)`.
    pub multiplicities: Vec<usize>,
    pub expected: Option<Vec<usize>>,
    /// Whether the simples account for all of `E(X)` and agree with `expected` when given.
    pub identified: bool,
}

/// The checks on one ordered pair of center objects.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub left: String,
    pub right: String,
    /// Multiplicity of each simple module in `E(X ⊗ Y)`.
    pub product: Vec<usize>,
    /// Entries `Z` of the fixture with `E(Z) ≅ E(X ⊗ Y)`.
    pub product_matches: Vec<String>,
    pub psi_intertwiner_residual: f64,
    pub psi_invertible: bool,
    /// `‖Ψ_{Y,X} ∘ B − E(c_{X,Y}) ∘ Ψ_{X,Y}‖`.
    pub braiding_square_residual: f64,
}

/// The result of comparing a center fixture with the simple modules.
#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub entries: Vec<EntryReport>,
    pub pairs: Vec<PairReport>,
    /// Whether the simple entries hit every simple module exactly once.
    pub bijective: bool,
}

impl CenterReport {
    /// Whether every identification and every pair check passed.
    pub fn passed(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.identified && e.module_law_residual <= tol)
            && self.pairs.iter().all(|p| {
                p.psi_invertible && p.psi_intertwiner_residual <= tol && p.braiding_square_residual <= tol
            })
    }
}

impl fmt::Display for CenterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "E({}) dims {:?} multiplicities {:?} module law {:.1e} {}",
                e.name,
                e.dims,
                e.multiplicities,
                e.module_law_residual,
                if e.identified { "identified" } else { "NOT identified" }
            )?;
        }
        for p in &self.pairs {
            writeln!(
                f,
                "Psi({}, {}) product {:?} ~ {:?} intertwiner {:.1e} invertible {} braiding square {:.1e}",
                p.left,
                p.right,
                p.product,
                p.product_matches,
                p.psi_intertwiner_residual,
                p.psi_invertible,
                p.braiding_square_residual
            )?;
        }
        write!(f, "simple entries biject onto simple modules: {}", self.bijective)
    }
}

/// Largest violation of `x ∘ A_f = B_f ∘ x` over the tube basis.
pub fn intertwiner_residual<S: Scalar>(
    t: &TubeAlgebra<S>,
    x: &Mat<S>,
    a: &Representation<S>,
    b: &Representation<S>,
) -> f64 {
    (0..t.dim()).map(|i| x.matmul(a.action(i)).distance(&b.action(i).matmul(x))).fold(0.0, f64::max)
}

/// Retags the central legs of a decorated vector as belonging to `factor`.
fn retag<S: Scalar>(dec: &Decorated<S>, factor: usize) -> Result<Decorated<S>> {
    dec.map(|v, tags| Ok(vec![(v.clone(), tags.iter().map(|t| t.map(|(_, c)| (factor, c))).collect())]))
}

/// `Ψ_{X,Y}: E(X) □ E(Y) → E(X ⊗ Y)`; `prod` must be built from `ex.rep` and `ey.rep`.
pub fn psi<S: Scalar>(
    t: &TubeAlgebra<S>,
    factors: [&HalfBraidingData<S>; 2],
    ex: &CentralRep<S>,
    ey: &CentralRep<S>,
    prod: &Tensor<S>,
    exy: &CentralRep<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let spec = t.spec();
    let mut out = Mat::zeros(exy.rep.total_dim(), prod.rep.total_dim());
    for k in 0..prod.rep.total_dim() {
        let ProductVector { m, n, pi } = prod.basis_vector(k);
        let left = ex.vector(m, calc);
        let right = retag(&ey.vector(n, calc), 1)?;
        let mut dec = Decorated::default();
        for ((_, tl), vl) in &left.terms {
            for ((_, tr), vr) in &right.terms {
                let glued = calc.glue(&calc.glue(&pi, 3, 1, vr)?, 2, 1, vl)?;
                let mut tags: Vec<LegTag> = vec![None, None];
                tags.extend_from_slice(&tl[1..]);
                tags.extend_from_slice(&tr[1..]);
                tags.push(None);
                dec.add_term(glued, tags, &S::one());
            }
        }
        let legs = dec.terms.keys().next().map_or(0, |(w, _)| w.len() - 3);
        for p in 1..=legs {
            dec = braid_across(calc, &factors, &dec, p)?;
        }
        let x = pi.word[4];
        let dec = dec.map(|v, tags| {
            let w = calc.contract(v, legs + 1)?;
            let mut t2 = tags.to_vec();
            t2.truncate(legs + 1);
            Ok(vec![(w, t2)])
        })?;
        let coords = exy.coordinates(&dec.scale(&spec.trace_dim(x)), calc)?;
        for (r, c) in coords.into_iter().enumerate() {
            out[(r, k)] = c;
        }
    }
    Ok(out)
}

/// `E(c_{X,Y}): E(X ⊗ Y) → E(Y ⊗ X)`, moving the `X` legs across the `Y` legs with the half-braiding of `Y`.
pub fn central_braiding<S: Scalar>(
    t: &TubeAlgebra<S>,
    factors: [&HalfBraidingData<S>; 2],
    exy: &CentralRep<S>,
    eyx: &CentralRep<S>,
) -> Result<Mat<S>> {
    let calc = t.calculus();
    let mut out = Mat::zeros(eyx.rep.total_dim(), exy.rep.total_dim());
    for k in 0..exy.rep.total_dim() {
        let dec = braid_across(calc, &factors, &exy.vector(k, calc), 1)?;
        for (r, c) in eyx.coordinates(&dec, calc)?.into_iter().enumerate() {
            out[(r, k)] = c;
        }
    }
    Ok(out)
}

fn expand(mult: &[usize]) -> Vec<usize> {
    mult.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m)).collect()
}

/// Compares the fixture objects with `simples`, which must be in canonical order.
pub fn compare<S: Scalar>(
    t: &TubeAlgebra<S>,
    simples: &[SimpleModule<S>],
    fixture: &CenterFixture,
) -> Result<CenterReport> {
    let pol = t.tolerance();
    let hbs = fixture.half_braidings(t.spec())?;
    let reps = hbs.iter().map(|h| central_rep(t, &[h])).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(hbs.len());
    for (h, e) in hbs.iter().zip(&reps) {
        let mult = multiplicities(t, simples, &e.rep);
        let covered: usize = mult.iter().zip(simples).map(|(m, s)| m * s.rep.total_dim()).sum();
        let expected = fixture.expected.get(&h.name).map(|v| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        });
        let identified = covered == e.rep.total_dim() && expected.as_ref().map_or(true, |x| *x == expand(&mult));
        entries.push(EntryReport {
            name: h.name.clone(),
            dims: e.rep.dims().to_vec(),
            module_law_residual: e.rep.module_law_residual(t)?,
            multiplicities: mult,
            expected,
            identified,
        });
    }
    let mut hit = vec![0usize; simples.len()];
    for e in &entries {
        if e.multiplicities.iter().sum::<usize>() == 1 {
            for (h, m) in hit.iter_mut().zip(&e.multiplicities) {
                *h += m;
            }
        }
    }
    let bijective = hit.iter().all(|&h| h == 1);
    let mut pairs = Vec::new();
    for (i, x) in hbs.iter().enumerate() {
        for (j, y) in hbs.iter().enumerate() {
            let exy = central_rep(t, &[x, y])?;
            let eyx = central_rep(t, &[y, x])?;
            let pxy = tensor(t, &reps[i].rep, &reps[j].rep)?;
            let pyx = tensor(t, &reps[j].rep, &reps[i].rep)?;
            let psi_xy = psi(t, [x, y], &reps[i], &reps[j], &pxy, &exy)?;
            let psi_yx = psi(t, [y, x], &reps[j], &reps[i], &pyx, &eyx)?;
            let b = braiding(t, &pxy, &pyx)?;
            let c = central_braiding(t, [x, y], &exy, &eyx)?;
            let product = multiplicities(t, simples, &exy.rep);
            let product_matches = hbs
                .iter()
                .zip(&entries)
                .filter(|(_, e)| e.multiplicities == product)
                .map(|(h, _)| h.name.clone())
                .collect();
            pairs.push(PairReport {
                left: x.name.clone(),
                right: y.name.clone(),
                product,
                product_matches,
                psi_intertwiner_residual: intertwiner_residual(t, &psi_xy, &pxy.rep, &exy.rep),
                psi_invertible: psi_xy.is_square() && psi_xy.inverse(pol).is_some(),
                braiding_square_residual: psi_yx.matmul(&b).distance(&c.matmul(&psi_xy)),
            });
        }
    }
    Ok(CenterReport { entries, pairs, bijective })
}
