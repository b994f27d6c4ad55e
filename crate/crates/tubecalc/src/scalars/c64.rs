//! Double-precision complex numbers as a coefficient backend.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{roots, Scalar};
use crate::error::Result;

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const BACKEND: &'static str = "f64";

    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn cyclo(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64);
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
    }

    fn sqrt_of(&self) -> Result<Self> {
        Ok(self.sqrt())
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn fmt_full(&self) -> String {
        if self.im == 0.0 {
            format!("{:e}", self.re)
        } else {
            format!("{:e}{:+e}i", self.re, self.im)
        }
    }

    fn poly_roots(coeffs: &[Self]) -> Option<Vec<Self>> {
        roots::numeric_roots(coeffs)
    }
}
