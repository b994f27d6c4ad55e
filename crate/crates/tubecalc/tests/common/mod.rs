//! Fixture loading shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use num_complex::Complex64;
use tubecalc::category::CategorySpec;
use tubecalc::rep::{decompose, regular, SimpleModule};
use tubecalc::tube::TubeAlgebra;
use tubecalc::{Cyclotomic, MpComplex, Scalar, TolerancePolicy};

/// Path of a file in the fixture directory.
pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Tolerance used for float comparisons in the tests.
pub fn pol() -> TolerancePolicy {
    TolerancePolicy::uniform(1e-40).unwrap()
}

pub fn spec<S: Scalar>(name: &str) -> Arc<CategorySpec<S>> {
    Arc::new(CategorySpec::<S>::load_path(fixture(&format!("{name}.json"))).unwrap())
}

pub fn exact(name: &str) -> Arc<CategorySpec<Cyclotomic>> {
    spec(name)
}

pub fn float(name: &str) -> Arc<CategorySpec<MpComplex>> {
    spec(name)
}

pub fn tube<S: Scalar>(name: &str) -> TubeAlgebra<S> {
    TubeAlgebra::build(spec(name), pol())
}

pub fn simples<S: Scalar>(t: &TubeAlgebra<S>) -> Vec<SimpleModule<S>> {
    decompose(t, &regular(t).unwrap(), 0).unwrap()
}

/// The golden ratio.
pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

pub fn close(z: Complex64, w: Complex64, tol: f64) -> bool {
    (z - w).norm() <= tol
}

/// `e^{2πik/n}` in double precision.
pub fn root_of_unity(n: u32, k: i32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}
