//! Helpers on arbitrary-precision rationals.

use dashu_int::{ops::Gcd, IBig};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator, and zero is `0/1`.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nonnegative gcd. Large operands go through dashu's Lehmer gcd, which is
/// far faster than the binary gcd of `num-bigint` beyond a few words.
pub(crate) fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    if a.bits() < 192 && b.bits() < 192 {
        return a.gcd(b);
    }
    let (x, y) = (super::complex::to_ibig(a), super::complex::to_ibig(b));
    super::complex::to_bigint(&IBig::from(Gcd::gcd(&x, &y)))
}

/// `n/d` in lowest terms with a positive denominator. `d` must be nonzero.
pub(crate) fn rat_reduced(n: BigInt, d: BigInt) -> Rat {
    debug_assert!(!d.is_zero());
    if n.is_zero() {
        return Rat::zero();
    }
    let g = gcd_int(&n, &d);
    let (n, d) = if g.is_one() { (n, d) } else { (n / &g, d / &g) };
    if d.is_negative() {
        Rat::new_raw(-n, -d)
    } else {
        Rat::new_raw(n, d)
    }
}

/// `a + b`, reduced with [`gcd_int`].
pub(crate) fn rat_add(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.denom() == b.denom() {
        return rat_reduced(a.numer() + b.numer(), a.denom().clone());
    }
    rat_reduced(
        a.numer() * b.denom() + b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

/// `a · b`, reduced with [`gcd_int`].
pub(crate) fn rat_mul(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    if a.denom().is_one() && b.denom().is_one() {
        return Rat::from_integer(a.numer() * b.numer());
    }
    rat_reduced(a.numer() * b.numer(), a.denom() * b.denom())
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// The positive square root of `x` when `x` is the square of a rational.
pub fn rat_sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rat {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Rational `r` with `|r - x| <= tol` and the smallest possible denominator not
/// exceeding `max_den`, found along the continued fraction of `x`. Returns
/// `None` when no convergent or semiconvergent within the denominator bound
/// is close enough.
pub fn reconstruct(x: &Rat, max_den: &BigInt, tol: &Rat) -> Option<Rat> {
    // Walk the convergents h/k of x; every best approximation with bounded
    // denominator is a convergent or a semiconvergent between two of them.
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            // largest admissible semiconvergent
            let m = (max_den - &k0) / &k1;
            if m.sign() == Sign::Plus {
                let cand = Rat::new(&m * &h1 + &h0, &m * &k1 + &k0);
                let prev = Rat::new(h1.clone(), k1.clone());
                let best = if (&cand - x).abs() < (&prev - x).abs() {
                    cand
                } else {
                    prev
                };
                return ((&best - x).abs() <= *tol).then_some(best);
            }
            let prev = Rat::new(h1, k1);
            return ((&prev - x).abs() <= *tol).then_some(prev);
        }
        let conv = Rat::new(h2.clone(), k2.clone());
        if (&conv - x).abs() <= *tol {
            return Some(conv);
        }
        let frac = &rest - Rat::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        assert_eq!(rat_sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt_exact(&rat(1, 4096)), Some(rat(1, 64)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rat_sqrt_exact(&rat(-1, 1)), None);
    }

    #[test]
    fn reconstruct_finds_small_denominators() {
        let x = rat(-169, 4096) + pow2(-200);
        let r = reconstruct(&x, &BigInt::from(1u64 << 32), &pow2(-100)).unwrap();
        assert_eq!(r, rat(-169, 4096));
        let third = rat(1, 3) - pow2(-90);
        assert_eq!(
            reconstruct(&third, &BigInt::from(1000), &pow2(-60)),
            Some(rat(1, 3))
        );
        // 1/3 + 2^-10 has no close rational with denominator <= 10
        assert_eq!(
            reconstruct(&(rat(1, 3) + pow2(-10)), &BigInt::from(10), &pow2(-40)),
            None
        );
    }
}
