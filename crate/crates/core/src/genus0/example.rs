//! Radicands with prescribed `b_i`: `p` roots of unity `ω^i` and `q` values
//! `h·ω^{2j}`, `ω` a primitive `2l`-th root of unity. For these, `δ^{lm}`
//! lies in `W_l` for every large enough `m`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::noise_floor;
use super::wequation::{delta_power, eval_psi, Point};
use super::Genus0Error;
use crate::poly::{
    complex_roots, pow2, reconstruct, AppComplex, Poly, Rat,
};

#[derive(Debug, Clone)]
pub struct Example {
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub h: Rat,
    pub g: usize,
    pub d: usize,
    pub precision: usize,
    pub omega: AppComplex,
    pub b: Vec<AppComplex>,
    pub rho: Vec<AppComplex>,
    /// Coefficients of `(t² − 1)∏(t − ρ_i)²`, lowest degree first.
    pub d_numeric: Vec<AppComplex>,
    /// The same polynomial when every coefficient is recognizably rational.
    pub d_exact: Option<Poly>,
}

const GUARD: usize = 32;

pub fn gen_example(
    l: usize,
    p: usize,
    q: usize,
    h: &Rat,
    precision_bits: usize,
) -> Result<Example, Genus0Error> {
    let g = p + q;
    let d = g + 1;
    let fail = |m: String| Err(Genus0Error::Constraint(m));
    if p == 0 || q == 0 {
        return fail(format!("p and q must be positive, got p = {p}, q = {q}"));
    }
    if 2 * l < d || l > g {
        return fail(format!("need d/2 ≤ l ≤ g, got l = {l}, g = {g}, d = {d}"));
    }
    if p + 1 > l || q > l {
        return fail(format!("need p ≤ l − 1 and q ≤ l, got l = {l}, p = {p}, q = {q}"));
    }
    // the only rational roots of unity are ±1
    if h.is_zero() || h.abs().is_one() {
        return fail(format!("h = {h} is zero or a root of unity"));
    }
    let prec = precision_bits;
    let wp = prec + GUARD;
    let omega = AppComplex::root_of_unity(1, 2 * l, wp);
    let hc = AppComplex::from_rat(h, wp);
    let mut b: Vec<AppComplex> = (1..=p).map(|i| AppComplex::root_of_unity(i as i64, 2 * l, wp)).collect();
    b.extend((1..=q).map(|j| &hc * &AppComplex::root_of_unity(2 * j as i64, 2 * l, wp)));
    let two = AppComplex::from_rat(&Rat::from_integer(2.into()), wp);
    let rho: Vec<AppComplex> = b.iter().map(|bi| &(bi + &bi.recip()) / &two).collect();

    let mut coeffs = vec![
        AppComplex::from_rat(&-Rat::one(), wp),
        AppComplex::zero(wp),
        AppComplex::one(wp),
    ];
    for r in &rho {
        for _ in 0..2 {
            coeffs = mul_linear(&coeffs, r);
        }
    }
    let d_exact = exact_coefficients(&coeffs, prec).map(Poly::from_coeffs);
    Ok(Example {
        l,
        p,
        q,
        h: h.clone(),
        g,
        d,
        precision: prec,
        omega: omega.with_precision(prec),
        b: b.iter().map(|x| x.with_precision(prec)).collect(),
        rho: rho.iter().map(|x| x.with_precision(prec)).collect(),
        d_numeric: coeffs.iter().map(|x| x.with_precision(prec)).collect(),
        d_exact,
    })
}

/// `c(t)·(t − r)`.
fn mul_linear(c: &[AppComplex], r: &AppComplex) -> Vec<AppComplex> {
    let prec = r.precision();
    let mut out = vec![AppComplex::zero(prec); c.len() + 1];
    for (k, ck) in c.iter().enumerate() {
        out[k + 1] = &out[k + 1] + ck;
        out[k] = &out[k] - &(ck * r);
    }
    out
}

/// Rational reconstruction of every coefficient: imaginary part within
/// `2^{−prec/2}` of zero, real part within `2^{−prec/2}` of a rational with
/// denominator at most `2^{prec/4}`.
fn exact_coefficients(c: &[AppComplex], prec: usize) -> Option<Vec<Rat>> {
    let tol = noise_floor(prec);
    let max_den = BigInt::one() << (prec / 4);
    c.iter()
        .map(|z| {
            let (re, im) = z.to_rats();
            if im.abs() > tol {
                return None;
            }
            reconstruct(&re, &max_den, &tol)
        })
        .collect()
}

/// Points `z_j = t·ω^{2j}` with `ψ_l(z) = i(δ^n)`, `n = l·m`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub n: usize,
    pub t: AppComplex,
    pub z: Vec<AppComplex>,
    /// `max_i log2(|ψ_i − δ_i| / max(1, |δ_i|))`.
    pub log2_residual: f64,
}

impl Example {
    /// With `H = h^{2n}`, `∏_j (tω^{2j} − h)/(tω^{2j} − h^{−1}) = H` reduces
    /// to `t^l = (h^l − H h^{−l})/(1 − H)`; any `l`-th root avoiding the
    /// `b_i^{±1}` gives a witness.
    pub fn witness(&self, m: usize) -> Result<Witness, Genus0Error> {
        if m == 0 {
            return Err(Genus0Error::Constraint("m must be positive".into()));
        }
        let n = self.l * m;
        let hl = self.h.pow(self.l as i32);
        let big_h = self.h.pow(2 * n as i32);
        let tl = (&hl - &(&big_h / &hl)) / (Rat::one() - &big_h);
        let prec = self.precision;
        let wp = prec + GUARD;
        let roots = complex_roots(&(&Poly::monomial(Rat::one(), self.l) - &Poly::constant(tl)), wp)?;
        let b: Vec<AppComplex> = self.b.iter().map(|x| x.with_precision(wp)).collect();
        let target = delta_power(&b, n as i64)?;
        let mut last_err = None;
        for t in roots {
            let z: Vec<AppComplex> = (1..=self.l)
                .map(|j| &t * &AppComplex::root_of_unity(2 * j as i64, 2 * self.l, wp))
                .collect();
            let pts: Vec<Point<AppComplex>> = z.iter().cloned().map(Point::Finite).collect();
            match eval_psi(&pts, &b) {
                Ok(psi) => {
                    let log2_residual = psi
                        .iter()
                        .zip(&target)
                        .map(|(x, y)| (x - y).log2_abs() - y.log2_abs().max(0.0))
                        .fold(f64::NEG_INFINITY, f64::max);
                    return Ok(Witness {
                        n,
                        t: t.with_precision(prec),
                        z: z.iter().map(|x| x.with_precision(prec)).collect(),
                        log2_residual,
                    });
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or(Genus0Error::Constraint("no admissible root".into())))
    }
}

/// `2^{−prec/4}`, the default zero-test tolerance at precision `prec`.
pub fn default_tolerance(prec: usize) -> Rat {
    pow2(-((prec / 4) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus0::{analyze, WEquation};
    use crate::poly::{int, parse_poly, rat};

    #[test]
    fn reproduces_the_degree_ten_example() {
        let ex = gen_example(3, 2, 2, &int(2), 256).unwrap();
        let expected = parse_poly("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2").unwrap();
        assert_eq!(ex.d_exact, Some(expected));
        assert!((ex.rho[0].re_f64() - 0.5).abs() < 1e-30);
        assert!((ex.rho[1].re_f64() + 0.5).abs() < 1e-30);
        assert!((ex.rho[2].re_f64() + 5.0 / 8.0).abs() < 1e-30);
        assert!((ex.rho[2].im_f64() - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-15);
    }

    #[test]
    fn genus_two_family() {
        let ex = gen_example(2, 1, 1, &int(3), 256).unwrap();
        assert_eq!(ex.d_numeric.len(), 7);
        assert_eq!(ex.d_exact, Some(parse_poly("(t^2-1)*t^2*(t+5/3)^2").unwrap()));
        for m in [2, 4] {
            let w = ex.witness(m).unwrap();
            assert_eq!(w.n, 2 * m);
            assert!(w.log2_residual < -200.0, "{}", w.log2_residual);
        }
    }

    #[test]
    fn witnesses_lie_on_the_w_equation_when_l_is_g_minus_one() {
        // l = 3 = g − 1: the witness is a point of W_{g−1}, so f vanishes at δ^{3m}
        let ex = gen_example(3, 2, 2, &int(2), 256).unwrap();
        let w = WEquation::build(&ex.b).unwrap();
        for m in 1..4 {
            let wit = ex.witness(m).unwrap();
            assert!(wit.log2_residual < -150.0);
            let x = delta_power(&ex.b, wit.n as i64).unwrap();
            let f = w.eval(&x).unwrap();
            assert!(f.log2_abs() < w.log2_term_scale(&x, AppComplex::log2_abs) - 150.0);
        }
    }

    #[test]
    fn the_generated_b_match_the_analysis() {
        let ex = gen_example(3, 2, 2, &int(2), 256).unwrap();
        let a = analyze(ex.d_exact.as_ref().unwrap(), 256).unwrap();
        assert_eq!(a.r, ex.p);
        for b in &ex.b {
            let found = a.b.iter().any(|x| (x - b).log2_abs() < -200.0 || (&x.recip() - b).log2_abs() < -200.0);
            assert!(found);
        }
    }

    #[test]
    fn constraints() {
        assert!(gen_example(3, 0, 2, &int(2), 128).is_err());
        assert!(gen_example(3, 3, 1, &int(2), 128).is_err());
        assert!(gen_example(1, 1, 1, &int(2), 128).is_err());
        assert!(gen_example(5, 2, 2, &int(2), 128).is_err());
        assert!(gen_example(3, 2, 2, &int(-1), 128).is_err());
        assert!(gen_example(3, 2, 2, &rat(0, 1), 128).is_err());
    }

    #[test]
    fn irrational_coefficients_stay_numeric() {
        // h·ω² = 2i gives ρ = 3i/4 without its conjugate
        let ex = gen_example(4, 3, 2, &int(2), 128).unwrap();
        assert!(ex.d_exact.is_none());
    }
}
