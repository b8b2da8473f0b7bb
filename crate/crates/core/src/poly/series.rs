//! Laurent expansion of `√D` at `t = ∞`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{rat_sqrt_exact, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("D must have positive even degree, got degree {0}")]
    OddDegree(i64),
    #[error(
        "leading coefficient {0} of D is not the square of a rational; \
         scale D by a rational square (e.g. multiply by the leading coefficient) first"
    )]
    NonSquareLeading(Rat),
    #[error("at least one series term must be requested")]
    NoTerms,
}

/// Half the degree of `D` and the positive square root of its leading
/// coefficient, after checking that `√D` has a rational Laurent expansion.
pub(crate) fn admissible(d: &Poly) -> Result<(usize, Rat), SeriesError> {
    let deg = d.deg_i64();
    if deg <= 0 || deg % 2 != 0 {
        return Err(SeriesError::OddDegree(deg));
    }
    let lc = d.leading().expect("positive degree");
    if lc.is_negative() {
        return Err(SeriesError::NonSquareLeading(lc.clone()));
    }
    let s = rat_sqrt_exact(lc).ok_or_else(|| SeriesError::NonSquareLeading(lc.clone()))?;
    Ok(((deg / 2) as usize, s))
}

/// First `n_terms` coefficients of `√D`, starting at `t^d` and descending.
///
/// Writing `√D = Σ f_k t^{d−k}` with `f_0 > 0`, squaring gives
/// `2 f_0 f_k = e_k − Σ_{0<i<k} f_i f_{k−i}` where `e_k` is the coefficient of
/// `t^{2d−k}` in `D`.
pub fn sqrt_series(d: &Poly, n_terms: usize) -> Result<Vec<Rat>, SeriesError> {
    if n_terms == 0 {
        return Err(SeriesError::NoTerms);
    }
    let (half, s) = admissible(d)?;
    let two_s = &s + &s;
    let mut f = Vec::with_capacity(n_terms);
    f.push(s);
    for k in 1..n_terms {
        let mut acc = if k <= 2 * half {
            d.coeff(2 * half - k)
        } else {
            Rat::zero()
        };
        for i in 1..k {
            acc -= &f[i] * &f[k - i];
        }
        f.push(acc / &two_s);
    }
    Ok(f)
}

/// Polynomial part `A` of `√D`: `deg A = d` and `deg(A² − D) < d`.
pub fn sqrt_floor(d: &Poly) -> Result<Poly, SeriesError> {
    let (half, _) = admissible(d)?;
    let mut f = sqrt_series(d, half + 1)?;
    f.reverse();
    Ok(Poly::from_coeffs(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_poly, rat};
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        let p = |c: &[i64]| Poly::from_ints(c);
        assert_eq!(sqrt_series(&p(&[1, 0, 1]), 3).unwrap(), vec![int(1), int(0), rat(1, 2)]);
        assert_eq!(sqrt_series(&p(&[0, 0, 1]), 2).unwrap(), vec![int(1), int(0)]);
        assert_eq!(sqrt_series(&p(&[-1, 0, 1]), 3).unwrap(), vec![int(1), int(0), rat(-1, 2)]);
        // (1 + x)^{1/2} = 1 + x/2 − x²/8 + x³/16 − 5x⁴/128
        assert_eq!(
            sqrt_series(&p(&[1, 0, 1]), 9).unwrap()[8],
            rat(-5, 128)
        );
    }

    #[test]
    fn floors() {
        assert_eq!(sqrt_floor(&Poly::from_ints(&[1, 0, 1])).unwrap(), Poly::t());
        assert_eq!(sqrt_floor(&Poly::from_ints(&[0, 0, 1])).unwrap(), Poly::t());
        let d = parse_poly("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2").unwrap();
        let a = sqrt_floor(&d).unwrap();
        assert_eq!(a.degree(), Some(5));
        assert_eq!(a.leading(), Some(&int(1)));
        assert!((&(&a * &a) - &d).deg_i64() < 5);
        // leading coefficient 4 is a square: floor of 2t
        assert_eq!(sqrt_floor(&Poly::from_ints(&[1, 0, 4])).unwrap(), Poly::from_ints(&[0, 2]));
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(matches!(sqrt_series(&Poly::from_ints(&[0, 1]), 2), Err(SeriesError::OddDegree(1))));
        assert!(matches!(sqrt_series(&Poly::from_ints(&[3]), 2), Err(SeriesError::OddDegree(0))));
        let err = sqrt_series(&Poly::from_ints(&[1, 0, 2]), 2).unwrap_err();
        assert!(err.to_string().contains("scale D by a rational square"));
        assert!(matches!(sqrt_series(&Poly::from_ints(&[1, 0, -1]), 2), Err(SeriesError::NonSquareLeading(_))));
        assert_eq!(sqrt_series(&Poly::from_ints(&[1, 0, 1]), 0), Err(SeriesError::NoTerms));
    }

    fn arb_admissible() -> impl Strategy<Value = Poly> {
        (1usize..6, 1i64..5, 1i64..4, prop::collection::vec(-9i64..10, 10)).prop_map(
            |(half, sn, sd, rest)| {
                let mut c: Vec<Rat> = rest[..2 * half].iter().map(|&x| rat(x, 3)).collect();
                c.push(rat(sn * sn, sd * sd));
                Poly::from_coeffs(c)
            },
        )
    }

    proptest! {
        #[test]
        fn floor_is_close(d in arb_admissible()) {
            let half = d.degree().unwrap() / 2;
            let a = sqrt_floor(&d).unwrap();
            prop_assert_eq!(a.degree(), Some(half));
            prop_assert!((&(&a * &a) - &d).deg_i64() < half as i64);
        }

        #[test]
        fn series_squares_back(d in arb_admissible(), extra in 0usize..6) {
            let half = d.degree().unwrap() / 2;
            let n = 2 * half + 1 + extra;
            let f = sqrt_series(&d, n).unwrap();
            // coefficient of t^{2d−k} in the square of the truncation is exact for k < n
            for k in 0..n {
                let mut sq = Rat::zero();
                for i in 0..=k {
                    sq += &f[i] * &f[k - i];
                }
                let expect = if k <= 2 * half { d.coeff(2 * half - k) } else { Rat::zero() };
                prop_assert_eq!(sq, expect);
            }
        }
    }
}
