//! Dense univariate polynomials over exact rationals, the Laurent expansion
//! of `√D` at infinity, and a numeric root layer at arbitrary precision.

mod complex;
mod parse;
mod rat;
mod roots;
mod series;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use complex::{AppComplex, AppFloat, MIN_PRECISION};
pub use parse::{parse_poly, ParseError};
pub use rat::{int, pow2, rat, rat_sqrt_exact, reconstruct, Rat};
pub(crate) use rat::{gcd_int, rat_add, rat_mul, rat_reduced};
pub use roots::{complex_poly_roots, complex_roots, RootError};
pub use series::{sqrt_floor, sqrt_series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
}

/// Univariate polynomial in `t` with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`. The leading coefficient is never
/// zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

// `Ratio`'s own hash walks the continued fraction of each value, which
// overflows the stack on the large coefficients of deep expansions. Stored
// coefficients are reduced with positive denominators, so hashing the pair
// agrees with equality.
impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.len().hash(state);
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `(c, den)` with `self = c/den`, integral `c` and the least positive
    /// common denominator `den`.
    pub(crate) fn to_integral(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            let g = gcd_int(&acc, c.denom());
            acc / g * c.denom()
        });
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    /// `c/den` for integral `c` and nonzero `den`.
    pub(crate) fn from_integral(c: Vec<BigInt>, den: &BigInt) -> Self {
        if den.is_one() {
            return Poly::from_coeffs(c.into_iter().map(Rat::from_integer).collect());
        }
        Poly::from_coeffs(c.into_iter().map(|x| rat_reduced(x, den.clone())).collect())
    }

    /// Convenience constructor from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::from_coeffs(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree, with `None` standing for the `-∞` degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, `-1` for the zero polynomial. Handy in
    /// valuation arithmetic where the zero case is excluded anyway.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| rat_mul(x, c)).collect(),
        }
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rat_mul(&rem[k + dd], &inv_lead);
            if c.is_zero() {
                continue;
            }
            let neg = -&c;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rat_add(&rem[k + j], &rat_mul(&neg, dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        // primitive remainder sequence over ℤ keeps coefficient growth linear
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_rem(a, &b));
            a = std::mem::replace(&mut b, r);
        }
        Ok(Poly::from_coeffs(a.into_iter().map(Rat::from_integer).collect()).monic())
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let g = self.gcd(other)?;
        let q = self.exact_div(&g).expect("gcd divides its argument");
        Ok((&q * other).monic())
    }

    /// `self / gcd(self, self')` made monic, plus whether `self` was already
    /// squarefree.
    pub fn squarefree_part(&self) -> Result<(Poly, bool), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let g = self.gcd(&self.derivative())?;
        let sq = self.exact_div(&g).expect("gcd divides its argument").monic();
        Ok((sq, g.is_constant()))
    }

    /// Yun's squarefree decomposition of a nonzero polynomial: monic,
    /// pairwise coprime squarefree factors `f_i` with multiplicity `i`, such
    /// that `self = lc · ∏ f_i^i`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Remainder of `self` modulo `m`.
    pub fn rem(&self, m: &Poly) -> Result<Poly, PolyError> {
        Ok(self.div_rem(m)?.1)
    }
}

/// Integer coefficients with unit content, same roots as `p`.
/// Product of integer coefficient vectors, lowest degree first.
pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn primitive_int(p: &Poly) -> Vec<BigInt> {
    primitive(p.to_integral().0)
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let g = content(&c);
    if !g.is_zero() && !g.is_one() {
        for x in &mut c {
            *x /= &g;
        }
    }
    c
}

/// Nonnegative gcd of all entries, zero for an empty or all-zero slice.
pub(crate) fn content(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in c {
        if g.is_one() {
            break;
        }
        g = gcd_int(&g, x);
    }
    g
}

/// Remainder of `lc(b)^k · a` by `b` over ℤ, for nonempty `b`.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        let g = la.gcd(lb);
        let (ma, mb) = (lb / &g, &la / &g);
        for x in a.iter_mut() {
            *x *= &ma;
        }
        for (j, y) in b.iter().enumerate() {
            a[da - db + j] -= &mb * y;
        }
        a.pop();
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
    }
    a
}

/// Chebyshev polynomial `T_k` or `U_k` via `X_{k+1} = 2t·X_k − X_{k−1}`.
pub fn chebyshev(kind: ChebyshevKind, k: usize) -> Poly {
    let two_t = Poly::monomial(int(2), 1);
    let mut prev = Poly::one();
    let mut cur = match kind {
        ChebyshevKind::First => Poly::t(),
        ChebyshevKind::Second => two_t.clone(),
    };
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&two_t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl fmt::Display for Poly {
    /// Canonical form: descending powers, `t^k`, explicit rational coefficients,
    /// e.g. `t^10 + 5/2*t^9 - 169/4096`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let m = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{m}")?;
            } else if m.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{m}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => rat_add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // over a common denominator, so only the result needs reducing
        let (a, da) = self.to_integral();
        let (b, db) = rhs.to_integral();
        Poly::from_integral(int_mul(&a, &b), &(da * db))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
