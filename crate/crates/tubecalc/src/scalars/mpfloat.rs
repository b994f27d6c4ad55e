//! Complex numbers with a configurable binary mantissa.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{roots, Scalar};
use crate::error::Result;

/// Mantissa length used unless [`set_precision`] says otherwise.
pub const DEFAULT_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(DEFAULT_PRECISION) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// Sets the mantissa length (in bits) for values created on this thread.
pub fn set_precision(bits: usize) {
    PRECISION.with(|p| p.set(bits.max(64)));
}

/// The mantissa length (in bits) in effect on this thread.
pub fn precision() -> usize {
    PRECISION.with(Cell::get)
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn bf_zero() -> BigFloat {
    BigFloat::from_word(0, precision())
}

fn bf_to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        None => f64::NAN,
        Some((words, _, sign, exp, _)) => {
            let top = words.last().copied().unwrap_or(0);
            if top == 0 {
                return 0.0;
            }
            let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
            let mant = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
            let v = mant * 2f64.powi(exp);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
    }
}

fn bf_from_bigint(n: &BigInt) -> BigFloat {
    let p = precision();
    match n.to_i64() {
        Some(v) => BigFloat::from_i64(v, p),
        None => with_consts(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)),
    }
}

fn bf_format(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| x.to_string());
    s.replacen(".e", "e", 1)
}

/// A complex number whose parts are binary floating-point values.
#[derive(Clone)]
pub struct MpComplex {
    re: BigFloat,
    im: BigFloat,
}

impl MpComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    fn real(re: BigFloat) -> Self {
        Self { re, im: bf_zero() }
    }

    fn norm_sqr(&self) -> BigFloat {
        let p = precision();
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// Mantissa length of the stored parts.
    pub fn precision(&self) -> usize {
        self.re.precision().unwrap_or(0).max(self.im.precision().unwrap_or(0))
    }
}

impl PartialEq for MpComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_full())
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_full())
    }
}

impl Zero for MpComplex {
    fn zero() -> Self {
        Self::real(bf_zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for MpComplex {
    fn one() -> Self {
        Self::real(BigFloat::from_word(1, precision()))
    }
}

impl Add for MpComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = precision();
        Self { re: self.re.add(&rhs.re, p, RM), im: self.im.add(&rhs.im, p, RM) }
    }
}

impl Sub for MpComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = precision();
        Self { re: self.re.sub(&rhs.re, p, RM), im: self.im.sub(&rhs.im, p, RM) }
    }
}

impl Neg for MpComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: BigFloat::neg(&self.re), im: BigFloat::neg(&self.im) }
    }
}

impl Mul for MpComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = precision();
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(self.re.mul(&rhs.re, p, RM));
        }
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        Self { re, im }
    }
}

impl Div for MpComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let p = precision();
        if rhs.im.is_zero() {
            return Self { re: self.re.div(&rhs.re, p, RM), im: self.im.div(&rhs.re, p, RM) };
        }
        let den = rhs.norm_sqr();
        let re = self.re.mul(&rhs.re, p, RM).add(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.im.mul(&rhs.re, p, RM).sub(&self.re.mul(&rhs.im, p, RM), p, RM);
        Self { re: re.div(&den, p, RM), im: im.div(&den, p, RM) }
    }
}

impl Scalar for MpComplex {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn from_bigint(n: &BigInt) -> Self {
        Self::real(bf_from_bigint(n))
    }

    fn cyclo(n: u64, k: i64) -> Self {
        let p = precision();
        let k = k.rem_euclid(n as i64) as u64;
        let one = BigFloat::from_word(1, p);
        // quarter turns are exact
        if (4 * k) % n == 0 {
            return match 4 * k / n {
                0 => Self::one(),
                1 => Self { re: bf_zero(), im: one },
                2 => -Self::one(),
                _ => Self { re: bf_zero(), im: BigFloat::neg(&one) },
            };
        }
        with_consts(|cc| {
            let pi = cc.pi(p, RM);
            let theta = pi
                .mul(&BigFloat::from_u64(2 * k, p), p, RM)
                .div(&BigFloat::from_u64(n, p), p, RM);
            Self { re: theta.cos(p, RM, cc), im: theta.sin(p, RM, cc) }
        })
    }

    fn sqrt_of(&self) -> Result<Self> {
        let p = precision();
        let two = BigFloat::from_word(2, p);
        if self.im.is_zero() {
            return Ok(if self.re.is_negative() {
                Self { re: bf_zero(), im: BigFloat::neg(&self.re).sqrt(p, RM) }
            } else {
                Self::real(self.re.sqrt(p, RM))
            });
        }
        let r = self.norm_sqr().sqrt(p, RM);
        let re = r.add(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let im = r.sub(&self.re, p, RM).div(&two, p, RM).sqrt(p, RM);
        let im = if self.im.is_negative() { BigFloat::neg(&im) } else { im };
        Ok(Self { re, im })
    }

    fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: BigFloat::neg(&self.im) }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        let p = precision();
        Some(Self { re: BigFloat::from_f64(z.re, p), im: BigFloat::from_f64(z.im, p) })
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn fmt_full(&self) -> String {
        let re = bf_format(&self.re);
        if self.im.is_zero() {
            return re;
        }
        let (sign, im) = if self.im.is_negative() { ("-", BigFloat::neg(&self.im)) } else { ("+", self.im.clone()) };
        if self.re.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            return format!("{lead}{}i", bf_format(&im));
        }
        format!("{re}{sign}{}i", bf_format(&im))
    }

    fn poly_roots(coeffs: &[Self]) -> Option<Vec<Self>> {
        roots::numeric_roots(coeffs)
    }
}
