mod common;

use common::{admissible_radicand, laurent_cf_degrees, rational_rho_radicand};
use pellcf::cf::{expand, pell_solution};
use pellcf::poly::{chebyshev, int, parse_poly, ChebyshevKind, Poly};
use proptest::prelude::*;

fn pp(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

#[test]
fn fixed_radicands_agree_with_the_series_oracle() {
    for (src, n) in [
        ("t^2+1", 8),
        ("t^2-1", 8),
        ("(t^2-1)*(t-2)^2", 12),
        ("t^4+t+1", 10),
        ("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2", 11),
        ("(t^2-1)*(t-1/2)^2*(t+1/2)^2", 10),
    ] {
        let d = pp(src);
        let exp = expand(&d, n - 1).unwrap();
        assert_eq!(exp.degrees, laurent_cf_degrees(&d, n), "{src}");
    }
}

#[test]
fn rational_rho_family_agrees_with_the_series_oracle() {
    for picks in [vec![0], vec![3], vec![1, 4], vec![5, 6], vec![0, 2, 3]] {
        let d = rational_rho_radicand(&picks);
        let exp = expand(&d, 9).unwrap();
        assert_eq!(exp.degrees, laurent_cf_degrees(&d, 10), "{picks:?}");
    }
}

#[test]
fn main_example_degree_pattern() {
    let d = pp("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2");
    let exp = expand(&d, 11).unwrap();
    assert_eq!(exp.degrees[..11], [5, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]);
    let dp = exp.degree_period.expect("pattern repeats within the window");
    assert_eq!((dp.preperiod, dp.period), (1, 2));
}

#[test]
fn chebyshev_pell_identities() {
    let d = pp("t^2-1");
    for k in 1..=10 {
        let tk = chebyshev(ChebyshevKind::First, k);
        let uk = chebyshev(ChebyshevKind::Second, k - 1);
        assert_eq!(&(&tk * &tk) - &(&(&d * &uk) * &uk), Poly::one(), "k = {k}");
    }
}

#[test]
fn euler_identity() {
    let s = pell_solution(&pp("t^2+1"), 10).unwrap().unwrap();
    assert_eq!(s.x, pp("2*t^2+1"));
    assert_eq!(s.y, pp("2*t"));
    assert_eq!(s.c, int(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_radicands_agree_with_the_series_oracle(d in admissible_radicand(3)) {
        let exp = expand(&d, 7).unwrap();
        prop_assert_eq!(exp.degrees, laurent_cf_degrees(&d, 8));
    }
}
