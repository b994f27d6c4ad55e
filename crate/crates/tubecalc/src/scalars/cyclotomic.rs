//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored in the smallest field `Q(ζ_n)` containing it, as rational
//! coordinates over the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`. Reducing to the
//! minimal conductor makes the representation canonical, so structural
//! equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// An element of a cyclotomic field with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<BigRational>,
}

/// Powers `ζ_n^k` for `0 ≤ k < n` expressed in the power basis of `Q(ζ_n)`.
struct PowerTable {
    phi: usize,
    rows: Vec<Vec<i64>>,
}

fn power_table(n: u64) -> Arc<PowerTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PowerTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("power table cache").get(&n) {
        return t.clone();
    }
    let table = Arc::new(build_power_table(n));
    cache.lock().expect("power table cache").insert(n, table.clone());
    table
}

fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dd] / lead;
        quot[i] = q;
        for (j, &c) in den.iter().enumerate() {
            rem[i + j] -= q * c;
        }
    }
    quot
}

fn build_power_table(n: u64) -> PowerTable {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by ζ and reduce using the monic relation Φ_n(ζ) = 0
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    PowerTable { phi, rows }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    fn rational(q: BigRational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![q] }
    }

    /// The conductor of the smallest cyclotomic field holding the value.
    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coordinates in `Q(ζ_n)`, `n` the conductor.
    pub fn coordinates(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.n == 1).then(|| &self.coeffs[0])
    }

    /// Builds `Σ c_k ζ_n^k` from exponent-indexed coefficients (length `n`).
    fn from_exponents(n: u64, exps: Vec<BigRational>) -> Self {
        let table = power_table(n);
        let mut coeffs = vec![BigRational::zero(); table.phi];
        for (k, c) in exps.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &t) in table.rows[k].iter().enumerate() {
                if t != 0 {
                    coeffs[i] += &c * rat(t);
                }
            }
        }
        Cyclotomic { n, coeffs }.reduced()
    }

    /// Exponent-indexed coefficients of `self` inside `Q(ζ_m)`, `n | m`.
    fn exponents_in(&self, m: u64) -> Vec<BigRational> {
        let step = (m / self.n) as usize;
        let mut out = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * step] = c.clone();
        }
        out
    }

    /// Applies the Galois automorphism `ζ_n ↦ ζ_n^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.n;
        let mut exps = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            exps[((i as u64 * k) % n) as usize] += c;
        }
        Self::from_exponents(n, exps)
    }

    /// Returns the canonical form; values are always kept canonical, so this
    /// is the identity on any constructed value.
    pub fn normalize(&self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.clone() }.reduced()
    }

    fn reduced(mut self) -> Self {
        if self.n == 1 {
            return self;
        }
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return Self::rational(self.coeffs.swap_remove(0));
        }
        'descend: loop {
            for p in prime_factors(self.n) {
                let mut m = self.n / p;
                if m % 4 == 2 {
                    m /= 2;
                }
                if let Some(y) = self.restrict_to(m) {
                    self = y;
                    if self.n == 1 {
                        return self;
                    }
                    continue 'descend;
                }
            }
            return self;
        }
    }

    /// Solves for coordinates in `Q(ζ_m) ⊂ Q(ζ_n)` if the value lies there.
    fn restrict_to(&self, m: u64) -> Option<Self> {
        let big = power_table(self.n);
        let small_phi = power_table(m).phi;
        let step = (self.n / m) as usize;
        let rows = big.phi;
        let cols = small_phi;
        // augmented system E y = x with E[:, j] = ζ_n^{j·step}
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..cols).map(|j| rat(big.rows[j * step][i])).collect();
                row.push(self.coeffs[i].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut y = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            y[c] = a[i][cols].clone();
        }
        Some(Cyclotomic { n: m, coeffs: y })
    }

    fn sqrt_prime(p: u64) -> Self {
        if p == 2 {
            return Self::cyclo(8, 1) + Self::cyclo(8, 7);
        }
        let mut exps = vec![BigRational::zero(); p as usize];
        for k in 1..p {
            exps[k as usize] = rat(legendre(k, p));
        }
        let gauss = Self::from_exponents(p, exps);
        if p % 4 == 1 {
            gauss
        } else {
            -(Self::cyclo(4, 1) * gauss)
        }
    }

    /// Square root of a nonnegative integer, as a product of prime square roots.
    pub fn sqrt_int(n: &BigInt) -> Result<Self> {
        let mut m = n
            .to_u64()
            .ok_or_else(|| Error::NotExact(format!("sqrt({n}) is out of range")))?;
        if m == 0 {
            return Ok(Self::zero());
        }
        let mut outside = 1u64;
        let mut acc = Self::one();
        let mut p = 2;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            outside *= p.pow(e / 2);
            if e % 2 == 1 {
                acc = acc * Self::sqrt_prime(p);
            }
            p += 1;
        }
        if m > 1 {
            acc = acc * Self::sqrt_prime(m);
        }
        Ok(acc * Self::from_i64(outside as i64))
    }

    fn inverse(&self) -> Self {
        if self.n == 1 {
            return Self::rational(self.coeffs[0].recip());
        }
        let mut others = Self::one();
        for k in 2..self.n {
            if k.gcd(&self.n) == 1 {
                others = others * self.galois(k);
            }
        }
        let norm = self.clone() * others.clone();
        let q = norm.as_rational().expect("field norm is rational").recip();
        others * Self::rational(q)
    }

    fn format_rational(q: &BigRational) -> String {
        if q.denom().is_one() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_full())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_full())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_zero()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.n == 1 && rhs.n == 1 {
            return Self::rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let m = lcm(self.n, rhs.n);
        let mut a = self.exponents_in(m);
        for (x, y) in a.iter_mut().zip(rhs.exponents_in(m)) {
            *x += y;
        }
        Self::from_exponents(m, a)
    }
}

impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.n == 1 && rhs.n == 1 {
            return Self::rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if self.n == 1 || rhs.n == 1 {
            let (q, v) = if self.n == 1 { (self, rhs) } else { (rhs, self) };
            let q = &q.coeffs[0];
            if q.is_zero() {
                return Self::zero();
            }
            return Cyclotomic { n: v.n, coeffs: v.coeffs.iter().map(|c| c * q).collect() };
        }
        let m = lcm(self.n, rhs.n);
        let (s1, s2) = (m / self.n, m / rhs.n);
        let mut exps = vec![BigRational::zero(); m as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i as u64 * s1 + j as u64 * s2) % m;
                exps[k as usize] += a * b;
            }
        }
        Self::from_exponents(m, exps)
    }
}

impl Div for Cyclotomic {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        self * rhs.inverse()
    }
}

impl Scalar for Cyclotomic {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn from_bigint(n: &BigInt) -> Self {
        Self::rational(BigRational::from_integer(n.clone()))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn cyclo(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut exps = vec![BigRational::zero(); n as usize];
        exps[k] = BigRational::one();
        Self::from_exponents(n, exps)
    }

    fn sqrt_of(&self) -> Result<Self> {
        let q = self.as_rational().ok_or_else(|| {
            Error::NotExact(format!("sqrt of the irrational value {}", self.fmt_full()))
        })?;
        // sqrt(p/q) = sqrt(p·q)/q
        let den = q.denom().clone();
        let radicand = q.numer().abs() * &den;
        let root = Self::sqrt_int(&radicand)? / Self::from_bigint(&den);
        Ok(if q.is_negative() { Self::cyclo(4, 1) * root } else { root })
    }

    fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    fn to_c64(&self) -> Complex64 {
        let n = self.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    fn from_c64(_z: Complex64) -> Option<Self> {
        None
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn fmt_full(&self) -> String {
        if self.n == 1 {
            return Self::format_rational(&self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let q = Self::format_rational(c);
                if k == 0 {
                    q
                } else {
                    format!("{q}*cyclo({},{k})", self.n)
                }
            })
            .collect();
        terms.join(" + ")
    }

    fn poly_roots(coeffs: &[Self]) -> Option<Vec<Self>> {
        let mut roots = Vec::new();
        let mut rest = coeffs.to_vec();
        if let Some(rats) = coeffs.iter().map(|c| c.as_rational().cloned()).collect::<Option<Vec<_>>>() {
            for r in rational_roots(&rats)? {
                let r = Self::rational(r);
                rest = deflate(&rest, &r);
                roots.push(r);
            }
        }
        match rest.len() {
            0 | 1 => {}
            2 => roots.push(-rest[0].clone() / rest[1].clone()),
            3 => {
                let (c, b, a) = (rest[0].clone(), rest[1].clone(), rest[2].clone());
                let disc = b.clone() * b.clone() - Self::from_i64(4) * a.clone() * c;
                let q = disc.as_rational()?;
                let radicand = squarefree_part((q.numer().abs() * q.denom()).to_u64()?);
                let conductor = if radicand % 4 == 1 { radicand } else { 4 * radicand };
                if conductor > MAX_ROOT_CONDUCTOR {
                    return None;
                }
                let root = disc.sqrt_of().ok()?;
                let two_a = Self::from_i64(2) * a;
                roots.push((-b.clone() + root.clone()) / two_a.clone());
                roots.push((-b - root) / two_a);
            }
            _ => return None,
        }
        Some(roots)
    }
}

/// Largest conductor of a quadratic root returned by `poly_roots`; roots in
/// larger fields are reported as unavailable.
const MAX_ROOT_CONDUCTOR: u64 = 60;

/// The squarefree part of a positive integer.
fn squarefree_part(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

/// Divides `Σ coeffs[k] x^k` by `x − r`, assuming `r` is a root.
fn deflate(coeffs: &[Cyclotomic], r: &Cyclotomic) -> Vec<Cyclotomic> {
    let n = coeffs.len() - 1;
    let mut out = vec![Cyclotomic::zero(); n];
    let mut carry = Cyclotomic::zero();
    for k in (1..=n).rev() {
        carry = coeffs[k].clone() + carry * r.clone();
        out[k - 1] = carry.clone();
    }
    out
}

/// Distinct rational roots of a polynomial with rational coefficients.
fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    coeffs.len().checked_sub(1)?;
    // clear denominators
    let lcm_den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm_den).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        roots.push(BigRational::zero());
    }
    if ints.len() > 1 {
        let lead = ints.last().expect("nonempty").abs();
        let constant = ints[0].abs();
        for p in divisors(&constant)? {
            for q in divisors(&lead)? {
                for sign in [1, -1] {
                    let cand = BigRational::new(BigInt::from(sign) * &p, q.clone());
                    if roots.contains(&cand) {
                        continue;
                    }
                    let value = ints
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                    if value.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    Some(roots)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}
