//! Tube algebras of spherical multifusion categories.

pub mod category;
pub mod center;
pub mod error;
pub mod homspace;
pub mod linalg;
pub mod monoidal;
pub mod rep;
pub mod scalars;
pub mod suite;
pub mod tube;

pub use error::{Error, Result};
pub use scalars::{AnyScalar, Backend, Cyclotomic, MpComplex, Scalar, TolerancePolicy};

/// A category over the exact cyclotomic backend.
pub type ExactCategory = category::CategorySpec<Cyclotomic>;
/// A category over the multiprecision float backend.
pub type FloatCategory = category::CategorySpec<MpComplex>;
/// Hom-space calculus over the exact backend.
pub type ExactHomCalculus = homspace::HomCalculus<Cyclotomic>;
/// Hom-space calculus over the float backend.
pub type FloatHomCalculus = homspace::HomCalculus<MpComplex>;
/// A tube algebra over the exact backend.
pub type ExactTubeAlgebra = tube::TubeAlgebra<Cyclotomic>;
/// A tube algebra over the float backend.
pub type FloatTubeAlgebra = tube::TubeAlgebra<MpComplex>;
/// A representation over the exact backend.
pub type ExactRepresentation = rep::Representation<Cyclotomic>;
/// A representation over the float backend.
pub type FloatRepresentation = rep::Representation<MpComplex>;
/// Modular data over the exact backend.
pub type ExactModularData = monoidal::ModularData<Cyclotomic>;
/// Modular data over the float backend.
pub type FloatModularData = monoidal::ModularData<MpComplex>;
