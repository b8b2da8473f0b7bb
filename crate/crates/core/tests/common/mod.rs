//! Test oracles that share nothing with the library's engine.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pellcf::poly::Poly;
use proptest::prelude::*;

type Q = BigRational;

/// `Σ c[i] t^{top − i}`, known through exponent `top − c.len() + 1`.
#[derive(Clone, Debug)]
struct Laurent {
    top: i64,
    c: Vec<Q>,
}

impl Laurent {
    fn strip(mut self) -> Option<Laurent> {
        let lead = self.c.iter().position(|x| !x.is_zero())?;
        self.c.drain(..lead);
        self.top -= lead as i64;
        Some(self)
    }

    fn recip(&self) -> Laurent {
        let x0 = &self.c[0];
        let mut y: Vec<Q> = Vec::with_capacity(self.c.len());
        y.push(Q::one() / x0);
        for k in 1..self.c.len() {
            let s = (1..=k).fold(Q::zero(), |acc, i| acc + &self.c[i] * &y[k - i]);
            y.push(-s / x0);
        }
        Laurent { top: -self.top, c: y }
    }
}

fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

fn rat_sqrt(x: &Q) -> Option<Q> {
    Some(Q::new(exact_sqrt(x.numer())?, exact_sqrt(x.denom())?))
}

/// `√D` in `t^{−1}` to `len` coefficients, by the coefficient recurrence of
/// `s² = D`.
fn sqrt_laurent(coeffs_low_first: &[Q], len: usize) -> Option<Laurent> {
    let deg = coeffs_low_first.len() - 1;
    if deg % 2 == 1 {
        return None;
    }
    let dc = |k: usize| -> Q {
        // coefficient of t^{deg − k}
        if k <= deg { coeffs_low_first[deg - k].clone() } else { Q::zero() }
    };
    let s0 = rat_sqrt(&dc(0))?;
    let two_s0 = &s0 * Q::from_integer(2.into());
    let mut s = vec![s0];
    for k in 1..len {
        let cross = (1..k).fold(Q::zero(), |acc, i| acc + &s[i] * &s[k - i]);
        s.push((dc(k) - cross) / &two_s0);
    }
    Some(Laurent { top: (deg / 2) as i64, c: s })
}

/// Degrees of the first `n` partial quotients of `√D`, or `None` when the
/// series ran out before `n` quotients were certain.
pub fn laurent_cf_degrees_at(d: &Poly, n: usize, len: usize) -> Option<Vec<usize>> {
    let coeffs: Vec<Q> = d.coeffs().to_vec();
    let mut x = sqrt_laurent(&coeffs, len)?;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if x.top < 0 {
            return None;
        }
        let deg = x.top as usize;
        // the polynomial part uses deg + 1 coefficients; the rest must survive
        if x.c.len() <= deg + 1 {
            return None;
        }
        out.push(deg);
        let frac = Laurent { top: -1, c: x.c[deg + 1..].to_vec() };
        x = frac.strip()?.recip();
    }
    Some(out)
}

/// As [`laurent_cf_degrees_at`], lengthening the series until the answer is
/// determined. Every retained coefficient is exact, so the first complete
/// answer is final.
pub fn laurent_cf_degrees(d: &Poly, n: usize) -> Vec<usize> {
    let half = d.degree().unwrap_or(0) / 2;
    let mut len = n * (half + 1) + 2;
    loop {
        if let Some(out) = laurent_cf_degrees_at(d, n, len) {
            return out;
        }
        len += n + 2;
        assert!(len < 1 << 12, "oracle did not converge");
    }
}

/// `c·A² + (lower terms)` of degree `2d`, not a perfect square: always an
/// admissible radicand.
pub fn admissible_radicand(max_half: usize) -> impl Strategy<Value = Poly> {
    (1..=max_half)
        .prop_flat_map(|d| {
            (
                1i64..=4,
                prop::collection::vec(-5i64..=5, 2 * d),
                Just(d),
            )
        })
        .prop_filter_map("perfect square", |(lead, low, _)| {
            let mut c = low;
            c.push(lead * lead);
            let p = Poly::from_ints(&c);
            pellcf::cf::Radicand::new(p.clone()).ok().map(|_| p)
        })
}

/// Rational `ρ` values whose `b` are or are not roots of unity.
pub const RHO_POOL: [(i64, i64); 7] = [(0, 1), (1, 2), (-1, 2), (2, 1), (3, 1), (5, 4), (7, 5)];

/// `(t² − 1)∏(t − ρ)²` for distinct picks from [`RHO_POOL`].
pub fn rational_rho_radicand(picks: &[usize]) -> Poly {
    let mut d = Poly::from_ints(&[-1, 0, 1]);
    for &i in picks {
        let (n, m) = RHO_POOL[i];
        let lin = Poly::from_coeffs(vec![pellcf::poly::rat(-n, m), pellcf::poly::int(1)]);
        d = &d * &(&lin * &lin);
    }
    d
}
