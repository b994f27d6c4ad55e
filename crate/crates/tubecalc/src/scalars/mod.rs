//! Coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Three backends are
//! provided:
//!
//! * [`Cyclotomic`]: exact elements of cyclotomic fields with rational
//!   coordinates, covering rationals, square roots of integers and roots of
//!   unity;
//! * [`MpComplex`]: complex numbers with a configurable binary mantissa
//!   (256 bits by default);
//! * `num_complex::Complex<f64>`: plain double precision, handy for quick
//!   experiments.

mod c64;
mod cyclotomic;
mod expr;
mod mpfloat;
mod roots;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

pub use cyclotomic::Cyclotomic;
pub use expr::Expr;
pub use mpfloat::{precision, set_precision, MpComplex, DEFAULT_PRECISION};

use crate::error::{Error, Result};

/// A field element usable as a coefficient throughout the crate.
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact; exact backends compare structurally.
    const EXACT: bool;
    /// Short backend name used in messages.
    const BACKEND: &'static str;

    fn from_bigint(n: &BigInt) -> Self;

    /// The root of unity `e^{2πik/n}`.
    fn cyclo(n: u64, k: i64) -> Self;

    /// Principal square root, or an error when the backend cannot represent it.
    fn sqrt_of(&self) -> Result<Self>;

    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Imports a double-precision value; exact backends return `None`.
    fn from_c64(z: Complex64) -> Option<Self>;

    /// True only for the additive identity, without tolerance.
    fn is_exact_zero(&self) -> bool;

    /// Full-precision textual form.
    fn fmt_full(&self) -> String;

    /// Roots of `Σ coeffs[k] x^k`, with the leading coefficient nonzero.
    ///
    /// Returns `None` when the roots cannot be found or represented.
    fn poly_roots(coeffs: &[Self]) -> Option<Vec<Self>>;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Whether `self` vanishes relative to a magnitude `scale`.
    fn negligible(&self, pol: &TolerancePolicy, scale: f64) -> bool {
        if Self::EXACT {
            self.is_exact_zero()
        } else {
            self.modulus() <= pol.abs_tol + pol.rel_tol * scale
        }
    }

    /// Equality up to the tolerance policy (structural for exact backends).
    fn approx_eq(&self, other: &Self, pol: &TolerancePolicy) -> bool {
        let diff = self.clone() - other.clone();
        if Self::EXACT {
            diff.is_exact_zero()
        } else {
            let scale = self.modulus().max(other.modulus());
            diff.modulus() <= pol.abs_tol + pol.rel_tol * scale
        }
    }

    /// Parses and evaluates a scalar expression.
    fn parse(text: &str) -> Result<Self> {
        eval(&Expr::parse(text)?)
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Evaluates an expression tree in the backend `S`.
pub fn eval<S: Scalar>(e: &Expr) -> Result<S> {
    Ok(match e {
        Expr::Int(n) => S::from_bigint(n),
        Expr::Sqrt(inner) => eval::<S>(inner)?.sqrt_of()?,
        Expr::Cyclo(n, k) => S::cyclo(*n, *k),
        Expr::Neg(a) => -eval::<S>(a)?,
        Expr::Add(a, b) => eval::<S>(a)? + eval::<S>(b)?,
        Expr::Sub(a, b) => eval::<S>(a)? - eval::<S>(b)?,
        Expr::Mul(a, b) => eval::<S>(a)? * eval::<S>(b)?,
        Expr::Div(a, b) => {
            let den = eval::<S>(b)?;
            if den.is_exact_zero() {
                return Err(Error::DivisionByZero);
            }
            eval::<S>(a)? / den
        }
    })
}

/// Absolute and relative tolerances used for every numerical decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl TolerancePolicy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        for (name, v) in [("abs_tol", abs_tol), ("rel_tol", rel_tol)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Tolerance(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// Both tolerances set to the same value.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { abs_tol: 1e-20, rel_tol: 1e-20 }
    }
}

/// Selects a coefficient backend at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => Cyclotomic::BACKEND,
            Backend::Float => MpComplex::BACKEND,
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Schema(format!("unknown backend `{other}`"))),
        }
    }
}

/// A backend-tagged scalar, for callers that choose the backend at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyScalar {
    Exact(Cyclotomic),
    Float(MpComplex),
}

impl AnyScalar {
    /// Parses `text` in the requested backend.
    pub fn parse(text: &str, backend: Backend) -> Result<Self> {
        Ok(match backend {
            Backend::Exact => AnyScalar::Exact(Cyclotomic::parse(text)?),
            Backend::Float => AnyScalar::Float(MpComplex::parse(text)?),
        })
    }

    pub fn backend(&self) -> Backend {
        match self {
            AnyScalar::Exact(_) => Backend::Exact,
            AnyScalar::Float(_) => Backend::Float,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::BackendMismatch(self.backend().name(), other.backend().name())
    }

    pub fn approx_eq(&self, other: &Self, pol: &TolerancePolicy) -> Result<bool> {
        match (self, other) {
            (AnyScalar::Exact(a), AnyScalar::Exact(b)) => Ok(a.approx_eq(b, pol)),
            (AnyScalar::Float(a), AnyScalar::Float(b)) => Ok(a.approx_eq(b, pol)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let zero = match other {
            AnyScalar::Exact(b) => b.is_exact_zero(),
            AnyScalar::Float(b) => b.is_exact_zero(),
        };
        if zero {
            return Err(Error::DivisionByZero);
        }
        self.zip(other, |a, b| a / b, |a, b| a / b)
    }

    fn zip(
        &self,
        other: &Self,
        exact: impl FnOnce(Cyclotomic, Cyclotomic) -> Cyclotomic,
        float: impl FnOnce(MpComplex, MpComplex) -> MpComplex,
    ) -> Result<Self> {
        match (self, other) {
            (AnyScalar::Exact(a), AnyScalar::Exact(b)) => {
                Ok(AnyScalar::Exact(exact(a.clone(), b.clone())))
            }
            (AnyScalar::Float(a), AnyScalar::Float(b)) => {
                Ok(AnyScalar::Float(float(a.clone(), b.clone())))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            AnyScalar::Exact(a) => a.to_c64(),
            AnyScalar::Float(a) => a.to_c64(),
        }
    }

    pub fn fmt_full(&self) -> String {
        match self {
            AnyScalar::Exact(a) => a.fmt_full(),
            AnyScalar::Float(a) => a.fmt_full(),
        }
    }
}
