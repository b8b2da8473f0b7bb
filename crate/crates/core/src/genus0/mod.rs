//! Genus-zero radicands `D = c·(t² − 1)·D₁²`.
//!
//! Each root `ρ` of `D₁` gives `b = ρ + √(ρ² − 1)`, and `b` is a root of
//! unity of order dividing `N` exactly when `T_N(ρ) = 1`, because
//! `T_N(ρ) = (b^N + b^{−N})/2`. The census of such roots therefore needs
//! only gcds with Chebyshev polynomials, never a factorization over ℚ.

mod example;
mod ln;
mod scalar;
mod verify;
mod wequation;

pub use example::{default_tolerance, gen_example, Example, Witness};
pub use ln::{degrees_from_ln, ln_from_degrees};
pub use scalar::Scalar;
pub use verify::{verify_consistency, verify_consistency_with, PellianMatch, VerifyReport, WCheck, CENSUS_WARMUP};
pub use wequation::{delta_power, eval_psi, h_antisym, Point, WEquation};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cf::CfError;
use crate::poly::{complex_roots, AppComplex, Poly, Rat, RootError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Genus0Error {
    #[error("the zero polynomial has no decomposition")]
    Zero,
    #[error("not divisible by t^2 - 1")]
    NotDivisible,
    #[error("D / (c·(t^2 - 1)) is not the square of a polynomial")]
    NotSquare,
    #[error("D1 vanishes at t = {0}; D must be exactly divisible by the first power of t^2 - 1")]
    RootAtUnit(i8),
    #[error("b_{index} is 0 or ±1")]
    DegenerateB { index: usize },
    #[error("b_{i} and b_{j} coincide up to inversion")]
    RepeatedB { i: usize, j: usize },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("point z_{point} hits b_{index} or its inverse")]
    PsiCollision { point: usize, index: usize },
    #[error("{0}")]
    Constraint(String),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// `D = c·(t² − 1)·D₁²` with `D₁` monic and `D₁(±1) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub c: Rat,
    pub d1: Poly,
}

pub fn decompose(d: &Poly) -> Result<Decomposition, Genus0Error> {
    let c = d.leading().cloned().ok_or(Genus0Error::Zero)?;
    let unit = Poly::from_ints(&[-1, 0, 1]);
    let e = d
        .scale(&c.recip())
        .exact_div(&unit)
        .ok_or(Genus0Error::NotDivisible)?;
    let d1 = poly_sqrt(&e).ok_or(Genus0Error::NotSquare)?;
    if d1.eval(&Rat::one()).is_zero() {
        return Err(Genus0Error::RootAtUnit(1));
    }
    if d1.eval(&-Rat::one()).is_zero() {
        return Err(Genus0Error::RootAtUnit(-1));
    }
    Ok(Decomposition { c, d1 })
}

/// Monic `s` with `s² = e` for monic `e`, if it exists.
fn poly_sqrt(e: &Poly) -> Option<Poly> {
    let n = e.degree()?;
    if n % 2 == 1 {
        return None;
    }
    if n == 0 {
        return e.is_one().then(Poly::one);
    }
    let s = crate::poly::sqrt_floor(e).ok()?;
    (&(&s * &s) == e).then_some(s)
}

fn euler_phi(mut n: usize) -> usize {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Largest `N` with `φ(N) ≤ 2m`, scanning up to `8m² + 8` where `φ(n) ≥ √(n/2)`
/// rules out anything larger.
pub fn order_bound(m: usize) -> usize {
    let limit = 8 * m * m + 8;
    (1..=limit).filter(|&n| euler_phi(n) <= 2 * m).max().unwrap_or(1)
}

/// Monic product of the factors `t − ρ` of `sq` whose `b` is a root of unity.
/// `sq` must be squarefree.
pub fn cyclotomic_part(sq: &Poly, bound: usize) -> Poly {
    let mut u = Poly::one();
    if sq.is_constant() {
        return u;
    }
    let one = Poly::one();
    let (mut prev, mut cur) = (Poly::one(), Poly::t());
    for _ in 1..=bound {
        // cur = T_n for the current index
        let g = sq.gcd(&(&cur - &one)).expect("sq ≠ 0");
        if !g.is_constant() {
            u = u.lcm(&g).expect("both nonzero");
        }
        let next = &(&Poly::monomial(Rat::from_integer(2.into()), 1) * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    u
}

#[derive(Debug, Clone)]
pub struct Genus0Analysis {
    pub c: Rat,
    pub d1: Poly,
    /// Half the degree of `D`: `deg D₁ + 1`.
    pub d: usize,
    /// Number of distinct roots of `D₁`.
    pub g: usize,
    /// Squarefree decomposition of `D₁`: factor and multiplicity.
    pub multiplicities: Vec<(Poly, usize)>,
    pub is_squarefree: bool,
    /// Sweep bound: largest `N` with `φ(N) ≤ 2·deg D₁`.
    pub order_bound: usize,
    /// Monic factor of `D₁` collecting the `ρ` with `b` a root of unity.
    pub cyclotomic: Poly,
    pub r: usize,
    /// Pellian part `(t² − 1)·U²` with `U` the cyclotomic factor.
    pub d_p: Poly,
    /// Distinct roots of `D₁`: the `r` cyclotomic ones first.
    pub rho: Vec<AppComplex>,
    /// `b_i = ρ_i + √(ρ_i² − 1)` with `|b_i| ≥ 1`, and `Im b_i ≥ 0` when
    /// `|b_i| = 1`.
    pub b: Vec<AppComplex>,
    pub precision: usize,
    pub pellian: bool,
    /// Degrees above this bound occur only finitely often.
    pub max_recurring_degree_bound: usize,
}

impl Genus0Analysis {
    /// The squarefree factor of `D₁` whose `b` are not roots of unity.
    pub fn non_cyclotomic(&self) -> Poly {
        self.squarefree()
            .exact_div(&self.cyclotomic)
            .expect("the cyclotomic part divides D1")
    }

    pub fn squarefree(&self) -> Poly {
        self.d1.squarefree_part().expect("D1 is monic").0
    }
}

/// Roots of a monic polynomial, empty for a constant.
fn roots_of(p: &Poly, prec: usize) -> Result<Vec<AppComplex>, RootError> {
    if p.is_constant() {
        Ok(Vec::new())
    } else {
        complex_roots(p, prec)
    }
}

/// `ρ + √(ρ² − 1)` on the branch `|b| ≥ 1`, ties broken towards `Im b ≥ 0`.
pub fn b_from_rho(rho: &AppComplex) -> AppComplex {
    let prec = rho.precision();
    let one = AppComplex::one(prec);
    let s = (&(rho * rho) - &one).sqrt();
    let (b1, b2) = (rho + &s, rho - &s);
    // |b1·b2| = 1, so |b1| and |b2| are equal only on the unit circle
    let gap = (&b1.norm_sqr() - &b2.norm_sqr()).to_f64().value();
    let tie = gap.abs() <= 2f64.powi(-((prec / 2).min(1000) as i32));
    if tie {
        if b1.im_nonneg() {
            b1
        } else {
            b2
        }
    } else if gap > 0.0 {
        b1
    } else {
        b2
    }
}

pub fn analyze(d: &Poly, precision_bits: usize) -> Result<Genus0Analysis, Genus0Error> {
    let Decomposition { c, d1 } = decompose(d)?;
    let (sq, is_squarefree) = if d1.is_constant() {
        (Poly::one(), true)
    } else {
        d1.squarefree_part().expect("nonzero")
    };
    let multiplicities = if d1.is_constant() {
        Vec::new()
    } else {
        d1.squarefree_decomposition().expect("nonzero")
    };
    let deg_d1 = d1.degree().unwrap_or(0);
    let order_bound = order_bound(deg_d1);
    let cyclotomic = cyclotomic_part(&sq, order_bound);
    let r = cyclotomic.degree().unwrap_or(0);
    let g = sq.degree().unwrap_or(0);
    let unit = Poly::from_ints(&[-1, 0, 1]);
    let d_p = &unit * &(&cyclotomic * &cyclotomic);
    let rest = sq.exact_div(&cyclotomic).expect("U divides sq");
    let mut rho = roots_of(&cyclotomic, precision_bits)?;
    rho.extend(roots_of(&rest, precision_bits)?);
    let b = rho.iter().map(b_from_rho).collect();
    Ok(Genus0Analysis {
        c,
        d: deg_d1 + 1,
        g,
        multiplicities,
        is_squarefree,
        order_bound,
        r,
        d_p,
        rho,
        b,
        precision: precision_bits,
        pellian: is_squarefree && r == g,
        max_recurring_degree_bound: r + 1,
        cyclotomic,
        d1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_poly};

    fn pp(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    const EXAMPLE: &str = "1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2";

    #[test]
    fn decompositions() {
        let dec = decompose(&pp("(t^2-1)*(t-2)^2")).unwrap();
        assert_eq!((dec.c, dec.d1), (int(1), pp("t-2")));
        let dec = decompose(&pp(EXAMPLE)).unwrap();
        assert_eq!(dec.d1, pp("(t^2-1/4)*(t^2+5*t/4+13/16)"));
        let dec = decompose(&pp("9*(t^2-1)")).unwrap();
        assert_eq!((dec.c, dec.d1), (int(9), Poly::one()));
        assert_eq!(decompose(&pp("t^2+1")), Err(Genus0Error::NotDivisible));
        assert_eq!(decompose(&pp("(t^2-1)*(t-2)")), Err(Genus0Error::NotSquare));
        assert_eq!(decompose(&pp("(t^2-1)*(t-1)^2")), Err(Genus0Error::RootAtUnit(1)));
        assert_eq!(decompose(&pp("(t^2-1)*(t+1)^2")), Err(Genus0Error::RootAtUnit(-1)));
        assert_eq!(decompose(&Poly::zero()), Err(Genus0Error::Zero));
    }

    #[test]
    fn phi_bound() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        // φ(N) ≤ 2 holds for N ∈ {1, 2, 3, 4, 6}
        assert_eq!(order_bound(1), 6);
        // φ(N) ≤ 8 up to N = 30
        assert_eq!(order_bound(4), 30);
    }

    #[test]
    fn chebyshev_census() {
        let a = analyze(&pp("(t^2-1)*(t-2)^2"), 128).unwrap();
        assert_eq!((a.r, a.pellian, a.g, a.d), (0, false, 1, 2));
        assert!(a.b[0].log2_abs() > 1.0);
        let a = analyze(&pp("(t^2-1)*(t-1/2)^2"), 128).unwrap();
        assert_eq!((a.r, a.pellian), (1, true));
        let a = analyze(&pp(EXAMPLE), 256).unwrap();
        assert_eq!((a.r, a.g, a.d, a.pellian), (2, 4, 5, false));
        assert_eq!(a.cyclotomic, pp("t^2-1/4"));
        assert_eq!(a.d_p, pp("(t^2-1)*(t^2-1/4)^2"));
        assert_eq!(a.max_recurring_degree_bound, 3);
        // complex pair: |b| = 2
        assert!((a.b[2].log2_abs() - 1.0).abs() < 1e-12);
        assert!((a.b[3].log2_abs() - 1.0).abs() < 1e-12);
        // ρ = 0 gives b = i
        let a = analyze(&pp("(t^2-1)*t^2"), 128).unwrap();
        assert_eq!(a.r, 1);
        assert!(a.b[0].re_f64().abs() < 1e-30 && (a.b[0].im_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn non_squarefree_is_never_pellian() {
        let a = analyze(&pp("(t^2-1)*(t-1/2)^4"), 128).unwrap();
        assert!(!a.is_squarefree);
        assert_eq!((a.r, a.g, a.pellian), (1, 1, false));
        assert_eq!(a.multiplicities, vec![(pp("t-1/2"), 2)]);
    }

    #[test]
    fn b_satisfies_its_quadratic() {
        let a = analyze(&pp("(t^2-1)*(t-3)^2*(t^2+t+7)^2*(t-1/3)^2"), 256).unwrap();
        let two = AppComplex::from_rat(&int(2), 256);
        for (rho, b) in a.rho.iter().zip(&a.b) {
            assert!(b.log2_abs() >= -1e-60);
            let lhs = b + &b.recip();
            assert!((&lhs - &(&two * rho)).log2_abs() < -200.0);
        }
        // ρ = 1/3 lies on the unit circle branch but is not a root of unity
        assert_eq!(a.r, 0);
        let idx = a.rho.iter().position(|z| (z.re_f64() - 1.0 / 3.0).abs() < 1e-12).unwrap();
        assert!(a.b[idx].im_f64() > 0.0 && a.b[idx].log2_abs().abs() < 1e-30);
    }

    #[test]
    fn census_matches_numeric_modulus() {
        // every ρ = cos(πk/m) gives |b| = 1; the exact sweep flags exactly the
        // rational ones of this kind
        for (s, r) in [("(t^2-1)*t^2*(t-1/2)^2*(t+1/2)^2", 3), ("(t^2-1)*(t-5/4)^2*(t-7/5)^2", 0)] {
            let a = analyze(&pp(s), 192).unwrap();
            assert_eq!(a.r, r, "{s}");
            for (i, b) in a.b.iter().enumerate() {
                let on_circle = b.log2_abs().abs() < 1e-20;
                assert_eq!(on_circle, i < a.r, "{s}, b_{i}");
            }
        }
    }
}
