//! Periodicity of states and of partial-quotient degrees, and Pell solutions.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{CfEngine, CfError, CfExpansion, Radicand};
use crate::poly::{rat_sqrt_exact, Poly, Rat};

pub const DEFAULT_VALIDATE_REPEATS: usize = 3;

/// Least `(preperiod, period)` with `α_{n+period} = α_n` for all
/// `n ≥ preperiod`, if a repeat occurs among the computed states.
///
/// A repeated state is a proof of periodicity: the recurrence is
/// deterministic. States are matched on `(P, Q̂)` first; the scalars `λ` are
/// compared only for those candidates.
pub fn detect_period(exp: &CfExpansion) -> Option<(usize, usize)> {
    let mut seen: HashMap<(&Poly, &Poly), Vec<usize>> = HashMap::new();
    for j in 0..exp.p_states.len() {
        let key = (&exp.p_states[j], &exp.q_monic[j]);
        if let Some(earlier) = seen.get(&key) {
            let (nj, dj) = exp.lambda_raw(j);
            for &i in earlier {
                let (ni, di) = exp.lambda_raw(i);
                if &ni * &dj == &nj * &di {
                    return Some((i, j - i));
                }
            }
        }
        seen.entry(key).or_default().push(j);
    }
    None
}

/// Eventual period of `deg a_n` observed on a finite window.
///
/// This is evidence, not proof: the window may end before the true pattern
/// shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreePeriod {
    pub preperiod: usize,
    pub period: usize,
    pub validated_repeats: usize,
}

/// Smallest period, then smallest preperiod `≥ 1`, such that the degree
/// window is periodic from `preperiod` on and covers at least
/// `validate_repeats` full periods.
pub fn detect_degree_period(exp: &CfExpansion, validate_repeats: usize) -> Option<DegreePeriod> {
    let deg = &exp.degrees;
    let k = validate_repeats.max(1);
    let len = deg.len();
    for period in 1..len {
        // the latest index breaking periodicity bounds the preperiod from below
        let mut pre = 1;
        for n in (1..len - period).rev() {
            if deg[n] != deg[n + period] {
                pre = n + 1;
                break;
            }
        }
        if len >= pre + k * period {
            return Some(DegreePeriod {
                preperiod: pre,
                period,
                validated_repeats: (len - pre) / period,
            });
        }
    }
    None
}

/// `x² − D y² = c` with `c` a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: Poly,
    pub y: Poly,
    pub c: Rat,
    /// Index `k` of the convergent `(p_k, q_k)` the solution comes from.
    pub index: usize,
}

impl PellSolution {
    pub fn is_normalized(&self) -> bool {
        self.c.is_one()
    }
}

/// First convergent `(p_k, q_k)`, `k ≥ 1`, whose norm `(−1)^k Q_k` is a
/// constant rational square, rescaled to norm 1.
///
/// Constant norms that are not squares in `ℚ` are skipped; if only those
/// occur within `max_steps`, the first is returned unnormalized. `None`
/// means no constant norm appeared in the window.
pub fn pell_solution(d: &Poly, max_steps: usize) -> Result<Option<PellSolution>, CfError> {
    pell_solution_with(Radicand::new(d.clone())?, max_steps, |_| false)
}

pub fn pell_solution_with(
    rad: Radicand,
    max_steps: usize,
    mut stop: impl FnMut(usize) -> bool,
) -> Result<Option<PellSolution>, CfError> {
    let d = rad.poly().clone();
    let mut engine = CfEngine::new(rad);
    let mut fallback = None;
    for k in 0..=max_steps {
        if k > 0 && stop(k) {
            break;
        }
        let term = engine.next_term()?;
        if k == 0 || !term.q_monic.is_one() {
            continue;
        }
        // the stored convergent is exact up to a common factor, so its norm is
        // (−1)^k Q_k up to a rational square
        let norm = &(&term.p * &term.p) - &(&d * &(&term.q * &term.q));
        debug_assert!(norm.is_constant());
        let c = norm.coeff(0);
        if let Some(s) = rat_sqrt_exact(&c).filter(|s| !s.is_zero()) {
            let inv = s.recip();
            return Ok(Some(PellSolution {
                x: term.p.scale(&inv),
                y: term.q.scale(&inv),
                c: Rat::one(),
                index: k,
            }));
        }
        if fallback.is_none() {
            fallback = Some(PellSolution {
                x: term.p,
                y: term.q,
                c,
                index: k,
            });
        }
    }
    Ok(fallback)
}
