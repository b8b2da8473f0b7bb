//! Two independent routes to Pellianity on rational-`ρ` radicands: the
//! Chebyshev census of `analyze`, and a repeated state in the expansion.
mod common;

use common::{rational_rho_radicand, RHO_POOL};
use pellcf::cf::{expand, pell_solution};
use pellcf::genus0::analyze;

/// Thirty distinct subsets of the pool, sizes 1 to 4, by a fixed walk.
pub fn corpus_picks() -> Vec<Vec<usize>> {
    let n = RHO_POOL.len();
    let mut masks: Vec<u32> = (1u32..1 << n).filter(|m| (1..=4).contains(&m.count_ones())).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let step = masks.len() / 30;
    (0..30)
        .map(|i| masks[i * step])
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn census_agrees_with_period_detection() {
    let picks = corpus_picks();
    assert_eq!(picks.len(), 30);
    let mut pellian = 0;
    for p in &picks {
        let d = rational_rho_radicand(p);
        let a = analyze(&d, 128).unwrap();
        let exp = expand(&d, 100).unwrap();
        assert_eq!(a.pellian, exp.cf_period.is_some(), "{p:?}: {d}");
        pellian += a.pellian as usize;
    }
    // both outcomes are represented
    assert!(pellian > 0 && pellian < picks.len());
}

#[test]
fn pellian_solutions_satisfy_the_equation() {
    for p in [vec![0], vec![1], vec![1, 2], vec![0, 1, 2]] {
        let d = rational_rho_radicand(&p);
        let s = pell_solution(&d, 40).unwrap().expect("pellian");
        assert_eq!(&(&s.x * &s.x) - &(&(&d * &s.y) * &s.y), pellcf::poly::Poly::constant(s.c.clone()));
    }
}
