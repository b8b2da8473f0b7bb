//! Complex numbers with binary floating-point parts at a fixed working
//! precision. Both parts of every value carry the same precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign as DSign, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{One, ToPrimitive, Zero};

use super::Rat;

pub type AppFloat = FBig<HalfEven, 2>;

/// Lowest working precision accepted anywhere in the crate.
pub const MIN_PRECISION: usize = 64;

#[derive(Clone, PartialEq)]
pub struct AppComplex {
    re: AppFloat,
    im: AppFloat,
    prec: usize,
}

pub(crate) fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let s = if sign == Sign::Minus {
        DSign::Negative
    } else {
        DSign::Positive
    };
    IBig::from_parts(s, mag)
}

pub(crate) fn to_bigint(n: &IBig) -> BigInt {
    let (sign, mag) = n.clone().into_parts();
    let s = if sign == DSign::Negative {
        Sign::Minus
    } else {
        Sign::Plus
    };
    BigInt::from_bytes_le(s, &mag.to_le_bytes())
}

fn fixed(x: AppFloat, prec: usize) -> AppFloat {
    x.with_precision(prec).value()
}

pub(crate) fn float_zero(prec: usize) -> AppFloat {
    fixed(AppFloat::ZERO, prec)
}

pub(crate) fn float_is_zero(x: &AppFloat) -> bool {
    x.repr().significand().is_zero()
}

pub(crate) fn float_from_rat(x: &Rat, prec: usize) -> AppFloat {
    let n = fixed(AppFloat::from(to_ibig(x.numer())), prec);
    if x.denom().is_one() {
        return n;
    }
    let d = fixed(AppFloat::from(to_ibig(x.denom())), prec);
    n / d
}

/// Exact rational value of a binary float.
pub(crate) fn float_to_rat(x: &AppFloat) -> Rat {
    let sig = to_bigint(x.repr().significand());
    let e = x.repr().exponent();
    if e >= 0 {
        Rat::from_integer(sig << e as usize)
    } else {
        Rat::new(sig, BigInt::one() << e.unsigned_abs())
    }
}

/// `log2 |x|`, or `-inf` at zero; valid far outside the `f64` exponent range.
pub(crate) fn float_log2(x: &AppFloat) -> f64 {
    let sig = to_bigint(x.repr().significand());
    if sig.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = sig.magnitude();
    let shift = mag.bits().saturating_sub(53);
    let top = (mag >> shift).to_u64().expect("53 bits fit");
    (top as f64).log2() + shift as f64 + x.repr().exponent() as f64
}

impl AppComplex {
    pub fn new(re: AppFloat, im: AppFloat, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        AppComplex {
            re: fixed(re, prec),
            im: fixed(im, prec),
            prec,
        }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_rat(&Rat::zero(), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_rat(&Rat::one(), prec)
    }

    pub fn from_rat(x: &Rat, prec: usize) -> Self {
        Self::from_rats(x, &Rat::zero(), prec)
    }

    pub fn from_rats(re: &Rat, im: &Rat, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        AppComplex {
            re: float_from_rat(re, prec),
            im: float_from_rat(im, prec),
            prec,
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        let f = |x: f64| AppFloat::try_from(x).unwrap_or(AppFloat::ZERO);
        Self::new(f(re), f(im), prec)
    }

    /// `e^{2πi k/n}`.
    pub fn root_of_unity(k: i64, n: usize, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let k = k.rem_euclid(n as i64);
        let x = fixed(AppFloat::from(k), prec + 16);
        let (s, c) = x.sin_cos_unit(n);
        Self::new(c, s, prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &AppFloat {
        &self.re
    }

    pub fn im(&self) -> &AppFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64().value()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64().value()
    }

    /// Exact rational values of the two parts.
    pub fn to_rats(&self) -> (Rat, Rat) {
        (float_to_rat(&self.re), float_to_rat(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        float_is_zero(&self.re) && float_is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        AppComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
            prec: self.prec,
        }
    }

    pub fn norm_sqr(&self) -> AppFloat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> AppFloat {
        self.re.hypot(&self.im)
    }

    /// `log2 |z|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        float_log2(&self.abs())
    }

    /// `|z| ≤ tol`.
    pub fn abs_le(&self, tol: &Rat) -> bool {
        let t = float_from_rat(tol, self.prec);
        self.norm_sqr() <= &t * &t
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        AppComplex {
            re: &self.re / &n,
            im: -(&self.im / &n),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &AppFloat) -> Self {
        AppComplex {
            re: &self.re * c,
            im: &self.im * c,
            prec: self.prec,
        }
    }

    /// Principal square root (nonnegative real part, cut along the negative
    /// real axis with the upper half chosen on the cut).
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let zero = float_zero(self.prec);
        let two = fixed(AppFloat::from(2), self.prec);
        let r = self.abs();
        if self.re >= zero {
            let u = ((&r + &self.re) / &two).sqrt();
            let v = &self.im / (&u * &two);
            AppComplex::new(u, v, self.prec)
        } else {
            let v = ((&r - &self.re) / &two).sqrt();
            let (u, v) = if self.im < zero {
                (-(&self.im / (&v * &two)), -v)
            } else {
                (&self.im / (&v * &two), v)
            };
            AppComplex::new(u, v, self.prec)
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.prec);
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

    /// Reduce to a lower working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        Self::new(self.re.clone(), self.im.clone(), prec)
    }

    /// Total order on `|z|`.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.norm_sqr()
            .partial_cmp(&other.norm_sqr())
            .unwrap_or(Ordering::Equal)
    }

    /// Whether the imaginary part is `≥ 0`.
    pub fn im_nonneg(&self) -> bool {
        self.im >= float_zero(self.prec)
    }

    pub fn is_real_negative(&self) -> bool {
        float_is_zero(&self.im) && self.re < float_zero(self.prec)
    }
}

impl fmt::Debug for AppComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for AppComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re_f64(), self.im_f64());
        if im < 0.0 {
            write!(f, "{re:e} - {:e}i", -im)
        } else {
            write!(f, "{re:e} + {im:e}i")
        }
    }
}

impl Add for &AppComplex {
    type Output = AppComplex;
    fn add(self, rhs: &AppComplex) -> AppComplex {
        AppComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
            prec: self.prec.max(rhs.prec),
        }
    }
}

impl Sub for &AppComplex {
    type Output = AppComplex;
    fn sub(self, rhs: &AppComplex) -> AppComplex {
        AppComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
            prec: self.prec.max(rhs.prec),
        }
    }
}

impl Mul for &AppComplex {
    type Output = AppComplex;
    fn mul(self, rhs: &AppComplex) -> AppComplex {
        AppComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
            prec: self.prec.max(rhs.prec),
        }
    }
}

impl Div for &AppComplex {
    type Output = AppComplex;
    fn div(self, rhs: &AppComplex) -> AppComplex {
        let n = rhs.norm_sqr();
        AppComplex {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &n,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &n,
            prec: self.prec.max(rhs.prec),
        }
    }
}

impl Neg for &AppComplex {
    type Output = AppComplex;
    fn neg(self) -> AppComplex {
        AppComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AppComplex {
            type Output = AppComplex;
            fn $m(self, rhs: AppComplex) -> AppComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AppComplex> for AppComplex {
            type Output = AppComplex;
            fn $m(self, rhs: &AppComplex) -> AppComplex {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for AppComplex {
    type Output = AppComplex;
    fn neg(self) -> AppComplex {
        -&self
    }
}
