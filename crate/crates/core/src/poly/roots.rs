//! Numeric roots of polynomials by simultaneous Aberth iteration.
//!
//! Rational inputs are first split into squarefree factors, so the iteration
//! only ever sees simple roots. A double-precision pass supplies the starting
//! points; the refinement then runs at the requested precision plus guard
//! bits. Each returned root `z` of a squarefree factor `f` of degree `n`
//! satisfies `n·|f(z)/f'(z)| ≤ 2^{−prec/2}`, which places a true root within
//! that distance.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{pow2, AppComplex, Poly, PolyError, Rat, MIN_PRECISION};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("root finding needs a polynomial of degree at least 1")]
    Degree,
    #[error(
        "root iteration did not converge after {iterations} steps; \
         best certified radius 2^{achieved_log2:.1}, needed 2^-{needed_bits}"
    )]
    NoConvergence {
        iterations: usize,
        achieved_log2: f64,
        needed_bits: usize,
    },
}

impl From<PolyError> for RootError {
    fn from(_: PolyError) -> Self {
        RootError::Degree
    }
}

const GUARD_BITS: usize = 32;
const SEED_ITERATIONS: usize = 400;

/// All complex roots of `a`, repeated according to multiplicity, ordered by
/// real part and then imaginary part.
pub fn complex_roots(a: &Poly, precision_bits: usize) -> Result<Vec<AppComplex>, RootError> {
    if a.degree().unwrap_or(0) == 0 {
        return Err(RootError::Degree);
    }
    let prec = precision_bits.max(MIN_PRECISION);
    let mut out = Vec::new();
    for (factor, mult) in a.squarefree_decomposition()? {
        let roots = if factor.degree() == Some(1) {
            vec![AppComplex::from_rat(&-factor.coeff(0), prec)]
        } else {
            let coeffs: Vec<AppComplex> = factor
                .coeffs()
                .iter()
                .map(|c| AppComplex::from_rat(c, prec + GUARD_BITS))
                .collect();
            let seeds: Vec<Complex64> = factor
                .coeffs()
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(0.0), 0.0))
                .collect();
            aberth(&coeffs, &seeds, prec)?
        };
        for r in roots {
            out.extend(std::iter::repeat_n(r, mult));
        }
    }
    sort_roots(&mut out);
    Ok(out)
}

/// Roots of a squarefree polynomial with complex coefficients, lowest degree
/// first.
pub fn complex_poly_roots(
    coeffs: &[AppComplex],
    precision_bits: usize,
) -> Result<Vec<AppComplex>, RootError> {
    let n = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if n == 0 {
        return Err(RootError::Degree);
    }
    let prec = precision_bits.max(MIN_PRECISION);
    let coeffs: Vec<AppComplex> = coeffs[..=n]
        .iter()
        .map(|c| c.with_precision(prec + GUARD_BITS))
        .collect();
    let seeds: Vec<Complex64> = coeffs
        .iter()
        .map(|c| Complex64::new(c.re_f64(), c.im_f64()))
        .collect();
    let mut out = aberth(&coeffs, &seeds, prec)?;
    sort_roots(&mut out);
    Ok(out)
}

fn sort_roots(roots: &mut [AppComplex]) {
    roots.sort_by(|a, b| {
        a.re()
            .partial_cmp(b.re())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im().partial_cmp(b.im()).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn horner<T, F>(coeffs: &[T], z: &T, step: F) -> (T, T)
where
    T: Clone,
    F: Fn(&T, &T, &T) -> T,
{
    // p and p' together
    let n = coeffs.len() - 1;
    let mut p = coeffs[n].clone();
    let mut dp = None::<T>;
    for c in coeffs[..n].iter().rev() {
        dp = Some(match dp {
            None => p.clone(),
            Some(d) => step(&d, z, &p),
        });
        p = step(&p, z, c);
    }
    (p, dp.expect("degree ≥ 1"))
}

/// Initial points on a circle enclosing every root (Fujiwara's bound).
fn circle_seeds(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let mut radius: f64 = 0.0;
    for (k, c) in coeffs[..n].iter().enumerate() {
        let ratio = c.norm() / lead;
        let mut r = ratio.powf(1.0 / (n - k) as f64);
        if k == 0 {
            r *= 0.5f64.powf(1.0 / n as f64);
        }
        radius = radius.max(r);
    }
    let radius = 2.0 * radius.max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn seed_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let start = circle_seeds(coeffs);
    let mut z = start.clone();
    let n = z.len();
    for _ in 0..SEED_ITERATIONS {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(coeffs, &z[k], |acc, z, c| acc * z + c);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            worst = worst.max(w.norm() / z[k].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    if z.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        z
    } else {
        start
    }
}

fn aberth(
    coeffs: &[AppComplex],
    seed_coeffs: &[Complex64],
    prec: usize,
) -> Result<Vec<AppComplex>, RootError> {
    let n = coeffs.len() - 1;
    let wp = prec + GUARD_BITS;
    let mut z: Vec<AppComplex> = seed_roots(seed_coeffs)
        .into_iter()
        .map(|c| AppComplex::from_f64(c.re, c.im, wp))
        .collect();
    let one = AppComplex::one(wp);
    let step_tol = pow2(-(prec as i64) - 8);
    let cap = 60 + 4 * n + prec / 4;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(coeffs, &z[k], |acc, z, c| &(acc * z) + c);
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut s = AppComplex::zero(wp);
            for j in 0..n {
                if j != k {
                    s = &s + &(&z[k] - &z[j]).recip();
                }
            }
            let w = &ratio / &(&one - &(&ratio * &s));
            z[k] = &z[k] - &w;
            let scale = Rat::from_integer(1.into()).max(abs_upper(&z[k]));
            if !w.abs_le(&(&step_tol * &scale)) {
                done = false;
            }
        }
        if done || iterations >= cap {
            break;
        }
    }
    // certification: n·|p/p'| is an inclusion radius for a simple root
    let need = pow2(-((prec / 2) as i64));
    let nrat = Rat::from_integer((n as i64).into());
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for zk in &z {
        let (p, dp) = horner(coeffs, zk, |acc, z, c| &(acc * z) + c);
        if p.is_zero() {
            continue;
        }
        if dp.is_zero() {
            ok = false;
            worst = f64::INFINITY;
            continue;
        }
        let radius = (&p / &dp).scale(&super::complex::float_from_rat(&nrat, wp));
        worst = worst.max(radius.log2_abs());
        if !radius.abs_le(&need) {
            ok = false;
        }
    }
    if !ok {
        return Err(RootError::NoConvergence {
            iterations,
            achieved_log2: worst,
            needed_bits: prec / 2,
        });
    }
    Ok(z.into_iter().map(|c| c.with_precision(prec)).collect())
}

/// A power of two at least `|z|`.
fn abs_upper(z: &AppComplex) -> Rat {
    let l = z.log2_abs();
    if l.is_finite() {
        pow2(l.ceil() as i64 + 1)
    } else {
        Rat::zero()
    }
}
