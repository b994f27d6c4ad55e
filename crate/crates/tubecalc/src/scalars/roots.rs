//! Polynomial root finding for the floating backends.

use num_complex::Complex64;

use super::Scalar;

const ABERTH_ITERATIONS: usize = 500;
const NEWTON_ITERATIONS: usize = 12;

/// All complex roots of `Σ coeffs[k] x^k` (leading coefficient nonzero).
///
/// Roots are located in double precision with the Aberth–Ehrlich iteration
/// and then polished by Newton steps in the backend's own arithmetic.
pub fn numeric_roots<S: Scalar>(coeffs: &[S]) -> Option<Vec<S>> {
    let degree = coeffs.len().checked_sub(1)?;
    if degree == 0 {
        return Some(Vec::new());
    }
    let c: Vec<Complex64> = coeffs.iter().map(Scalar::to_c64).collect();
    let lead = c[degree];
    if lead.norm() == 0.0 {
        return None;
    }
    let monic: Vec<Complex64> = c.iter().map(|&v| v / lead).collect();
    let seeds = aberth(&monic)?;
    let derivative: Vec<S> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v.clone() * S::from_i64(k as i64))
        .collect();
    seeds
        .into_iter()
        .map(|z0| {
            let mut z = S::from_c64(z0)?;
            for _ in 0..NEWTON_ITERATIONS {
                let dp = horner(&derivative, &z);
                if dp.is_exact_zero() {
                    break;
                }
                let step = horner(coeffs, &z) / dp;
                let small = step.modulus() <= 1e-300 + z.modulus() * f64::EPSILON.powi(8);
                z = z - step;
                if small {
                    break;
                }
            }
            Some(z)
        })
        .collect()
}

fn horner<S: Scalar>(coeffs: &[S], z: &S) -> S {
    coeffs.iter().rev().fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
}

fn aberth(monic: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..ABERTH_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    Some(z)
}
