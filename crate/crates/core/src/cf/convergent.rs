//! Orders at infinity of `p − q√D`.

use num_traits::Zero;

use super::{CfError, Radicand};
use crate::poly::{sqrt_series, Poly, Rat};

/// Coefficients of `p − q√D` at exponents `top, top − 1, …, bottom`.
fn residual(p: &Poly, q: &Poly, rad: &Radicand, top: i64, bottom: i64) -> Vec<Rat> {
    let d = rad.half_degree() as i64;
    let dq = q.deg_i64();
    // t^j · t^{d−k} reaches `bottom` once k = d + j − bottom
    let n_terms = if q.is_zero() {
        1
    } else {
        (d + dq - bottom + 1).max(1) as usize
    };
    let f = sqrt_series(rad.poly(), n_terms).expect("radicand is admissible");
    (bottom..=top)
        .rev()
        .map(|e| {
            let mut c = if e >= 0 { p.coeff(e as usize) } else { Rat::zero() };
            for j in 0..=dq.max(-1) {
                let k = d + j - e;
                if k >= 0 && (k as usize) < f.len() {
                    c -= q.coeff(j as usize) * &f[k as usize];
                }
            }
            c
        })
        .collect()
}

/// Order at `t = ∞` of `p − q√D`, looking at most `terms` coefficients
/// below the leading exponent.
pub fn vanishing_order_with_terms(
    p: &Poly,
    q: &Poly,
    rad: &Radicand,
    terms: usize,
) -> Result<i64, CfError> {
    if p.is_zero() && q.is_zero() {
        return Err(CfError::ZeroPair);
    }
    let d = rad.half_degree() as i64;
    let top = p.deg_i64().max(if q.is_zero() { i64::MIN } else { q.deg_i64() + d });
    let bottom = top - terms as i64 + 1;
    let coeffs = residual(p, q, rad, top, bottom);
    coeffs
        .iter()
        .position(|c| !c.is_zero())
        .map(|i| -(top - i as i64))
        .ok_or(CfError::SeriesExhausted { terms })
}

/// Exact order at `t = ∞` of `p − q√D`.
///
/// For `q ≠ 0` the order never exceeds `deg q + d`, so the search depth is
/// fixed in advance and the series cannot run dry.
pub fn vanishing_order(p: &Poly, q: &Poly, rad: &Radicand) -> Result<i64, CfError> {
    let d = rad.half_degree() as i64;
    let top = p.deg_i64().max(if q.is_zero() { p.deg_i64() } else { q.deg_i64() + d });
    let bottom = if q.is_zero() { top } else { -(q.deg_i64() + d) };
    vanishing_order_with_terms(p, q, rad, (top - bottom + 1) as usize)
}

/// Whether `p/q` is a convergent of `√D`: `ord_∞(p − q√D) > deg q`.
pub fn check_convergent(p: &Poly, q: &Poly, rad: &Radicand) -> Result<bool, CfError> {
    if q.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    if !p.gcd(q).map_err(|_| CfError::ZeroPair)?.is_constant() {
        return Err(CfError::NotCoprime);
    }
    let d = rad.half_degree() as i64;
    if p.deg_i64() != q.deg_i64() + d {
        return Ok(false);
    }
    let top = p.deg_i64();
    let coeffs = residual(p, q, rad, top, -q.deg_i64());
    Ok(coeffs.iter().all(Zero::is_zero))
}
