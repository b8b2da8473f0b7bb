//! Continued fraction of `√D` in `ℚ((t⁻¹))`, run exactly on quadratic-surd
//! states.
//!
//! The complete quotient `α_n` is kept as `(P_n + √D)/Q_n` with polynomial
//! `P_n, Q_n`. Since `√D − A = O(t⁻¹)` for the polynomial part `A`, the floor
//! of `α_n` is the polynomial quotient of `P_n + A` by `Q_n`.
//!
//! Convergents follow `p_0 = 1, p_1 = a_0, p_{n+1} = a_n p_n + p_{n−1}` and
//! `q_0 = 0, q_1 = 1, q_{n+1} = a_n q_n + q_{n−1}`, so that
//! `p_n² − D q_n² = (−1)^n Q_n`.

mod convergent;
mod period;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{content, gcd_int, int_mul, rat_reduced, sqrt_floor, Poly, Rat, SeriesError};

pub use convergent::{check_convergent, vanishing_order, vanishing_order_with_terms};
pub use period::{
    detect_degree_period, detect_period, pell_solution, pell_solution_with, DegreePeriod, PellSolution,
    DEFAULT_VALIDATE_REPEATS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("D is the square of a polynomial: √D is rational and the continued fraction terminates")]
    PerfectSquare,
    #[error("p and q must be coprime")]
    NotCoprime,
    #[error("q must be nonzero")]
    ZeroDenominator,
    #[error("p and q are both zero")]
    ZeroPair,
    #[error("series of p − q√D is zero through {terms} terms; retry with more terms")]
    SeriesExhausted { terms: usize },
}

/// A polynomial `D` whose square root has an infinite continued fraction:
/// positive even degree `2d`, square leading coefficient, not a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radicand {
    d: Poly,
    a: Poly,
    half: usize,
}

impl Radicand {
    pub fn new(d: Poly) -> Result<Self, CfError> {
        let a = sqrt_floor(&d)?;
        if &a * &a == d {
            return Err(CfError::PerfectSquare);
        }
        let half = a.degree().expect("positive degree");
        Ok(Radicand { d, a, half })
    }

    pub fn poly(&self) -> &Poly {
        &self.d
    }

    /// The polynomial part `A` of `√D`.
    pub fn floor(&self) -> &Poly {
        &self.a
    }

    /// `d = deg D / 2`.
    pub fn half_degree(&self) -> usize {
        self.half
    }
}

/// Complete quotient `α_n = (P + √D)/Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdState {
    pub p: Poly,
    pub q: Poly,
    pub index: usize,
}

impl SurdState {
    /// `α_0 = √D`.
    pub fn initial() -> Self {
        SurdState {
            p: Poly::zero(),
            q: Poly::one(),
            index: 0,
        }
    }
}

/// One step `a_n = ⌊α_n⌋`, `α_{n+1} = 1/(α_n − a_n)`.
pub fn cf_step(rad: &Radicand, state: &SurdState) -> Result<(Poly, SurdState), CfError> {
    let (a, _) = (&state.p + &rad.a)
        .div_rem(&state.q)
        .map_err(|_| CfError::PerfectSquare)?;
    let p = &(&a * &state.q) - &state.p;
    let q = (&rad.d - &(&p * &p))
        .exact_div(&state.q)
        .expect("Q_n divides D − P_{n+1}²");
    if q.is_zero() {
        return Err(CfError::PerfectSquare);
    }
    Ok((
        a,
        SurdState {
            p,
            q,
            index: state.index + 1,
        },
    ))
}

/// One term of the expansion in normalized form.
///
/// Writing `Q_n = λ_n Q̂_n` with `Q̂_n` monic, the partial quotient is
/// `a_n = â_n / λ_n`. The scalars `λ_n` have heights growing quadratically in
/// `n` while `P_n`, `Q̂_n` and `â_n` grow linearly, so the engine never forms
/// `λ_n`; it records `μ_n = λ_n λ_{n+1}` instead. Convergents are kept as the
/// primitive integral representative of the pair `(p_n, q_n)` up to a common
/// rational factor, with positive leading coefficient of `q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfTerm {
    pub index: usize,
    pub a_scaled: Poly,
    pub p_state: Poly,
    pub q_monic: Poly,
    pub mu: Rat,
    pub p: Poly,
    pub q: Poly,
}

/// Incremental expansion in normalized form.
#[derive(Debug, Clone)]
pub struct CfEngine {
    rad: Radicand,
    index: usize,
    p_state: Poly,
    q_monic: Poly,
    // τ_n = σ_n / (σ_{n−1} λ_n) where p_n = σ_n p̃_n
    tau: Rat,
    p: (Vec<BigInt>, Vec<BigInt>),
    q: (Vec<BigInt>, Vec<BigInt>),
}

/// Primitive integral representative of `(v, w)`, with positive leading
/// coefficient on `w`, and the factor `g` it was divided by.
fn normalize_pair(mut v: Vec<BigInt>, mut w: Vec<BigInt>) -> (Vec<BigInt>, Vec<BigInt>, BigInt) {
    for x in [&mut v, &mut w] {
        while x.last().is_some_and(Zero::is_zero) {
            x.pop();
        }
    }
    let g = gcd_int(&content(&v), &content(&w));
    let lead_neg = w.last().or(v.last()).is_some_and(|c| c.is_negative());
    let g = if lead_neg { -g } else { g };
    if !g.is_one() {
        for x in v.iter_mut().chain(w.iter_mut()) {
            *x /= &g;
        }
    }
    (v, w, g)
}

fn int_poly(c: &[BigInt]) -> Poly {
    Poly::from_integral(c.to_vec(), &BigInt::one())
}

/// `a·x + y` on coefficient vectors.
fn mul_add(a: &[BigInt], x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut out = int_mul(a, x);
    if out.len() < y.len() {
        out.resize(y.len(), BigInt::zero());
    }
    for (o, c) in out.iter_mut().zip(y) {
        *o += c;
    }
    out
}

impl CfEngine {
    pub fn new(rad: Radicand) -> Self {
        CfEngine {
            rad,
            index: 0,
            p_state: Poly::zero(),
            q_monic: Poly::one(),
            tau: Rat::one(),
            p: (Vec::new(), vec![BigInt::one()]),
            q: (vec![BigInt::one()], Vec::new()),
        }
    }

    pub fn radicand(&self) -> &Radicand {
        &self.rad
    }

    /// Index, `P`, `Q̂` and convergent of the next term, before stepping.
    pub fn peek(&self) -> (usize, &Poly, &Poly, Poly, Poly) {
        (self.index, &self.p_state, &self.q_monic, int_poly(&self.p.1), int_poly(&self.q.1))
    }

    pub fn next_term(&mut self) -> Result<CfTerm, CfError> {
        let (a, _) = (&self.p_state + &self.rad.a)
            .div_rem(&self.q_monic)
            .expect("Q̂ is monic");
        let p_next = &(&a * &self.q_monic) - &self.p_state;
        let r = (&self.rad.d - &(&p_next * &p_next))
            .exact_div(&self.q_monic)
            .expect("Q̂_n divides D − P_{n+1}²");
        let mu = r.leading().cloned().ok_or(CfError::PerfectSquare)?;
        let q_next = r.scale(&mu.recip());

        // τ·a = ta/δ with ta integral; then v = δ·κ·p̃_{n+1}
        let (ta, delta) = a.scale(&self.tau).to_integral();
        let scale_prev = |c: &[BigInt]| -> Vec<BigInt> { c.iter().map(|x| x * &delta).collect() };
        let v = mul_add(&ta, &self.p.1, &scale_prev(&self.p.0));
        let w = mul_add(&ta, &self.q.1, &scale_prev(&self.q.0));
        let (pn, qn, g) = normalize_pair(v, w);
        let kappa = rat_reduced(g, delta);
        let tau_next = kappa / (&self.tau * &mu);

        let p_cur = std::mem::replace(&mut self.p.1, pn);
        let q_cur = std::mem::replace(&mut self.q.1, qn);
        self.p.0 = p_cur.clone();
        self.q.0 = q_cur.clone();
        let (p_cur, q_cur) = (int_poly(&p_cur), int_poly(&q_cur));
        let term = CfTerm {
            index: self.index,
            a_scaled: a,
            p_state: std::mem::replace(&mut self.p_state, p_next),
            q_monic: std::mem::replace(&mut self.q_monic, q_next),
            mu,
            p: p_cur,
            q: q_cur,
        };
        self.tau = tau_next;
        self.index += 1;
        Ok(term)
    }
}

/// A computed window of the expansion, in the normalized form of
/// [`CfTerm`].
///
/// `a_scaled`, `degrees` and `mu` have entries `0..=N`; `p_states`,
/// `q_monic`, `p` and `q` run one index further, to `N + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub radicand: Radicand,
    pub a_scaled: Vec<Poly>,
    pub p_states: Vec<Poly>,
    pub q_monic: Vec<Poly>,
    pub mu: Vec<Rat>,
    pub p: Vec<Poly>,
    pub q: Vec<Poly>,
    pub degrees: Vec<usize>,
    pub cf_period: Option<(usize, usize)>,
    pub degree_period: Option<DegreePeriod>,
    /// Set when `stop` cut the window short of the requested `N`.
    pub truncated: bool,
}

impl CfExpansion {
    pub fn len(&self) -> usize {
        self.a_scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_scaled.is_empty()
    }

    pub fn d(&self) -> usize {
        self.radicand.half
    }

    /// `λ_n` as an unreduced fraction, from `λ_0 = 1`, `λ_{n+1} = μ_n / λ_n`.
    pub(crate) fn lambda_raw(&self, n: usize) -> (BigInt, BigInt) {
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for mu in &self.mu[..n] {
            let next_num = mu.numer() * &den;
            den = mu.denom() * &num;
            num = next_num;
        }
        (num, den)
    }

    /// Leading coefficient `λ_n` of `Q_n`, for `n ≤ N + 1`.
    pub fn lambda(&self, n: usize) -> Rat {
        let (num, den) = self.lambda_raw(n);
        Rat::new(num, den)
    }

    /// Exact partial quotient `a_n`.
    pub fn partial_quotient(&self, n: usize) -> Poly {
        self.a_scaled[n].scale(&self.lambda(n).recip())
    }

    /// Exact complete quotient `α_n = (P_n + √D)/Q_n`.
    pub fn state(&self, n: usize) -> SurdState {
        SurdState {
            p: self.p_states[n].clone(),
            q: self.q_monic[n].scale(&self.lambda(n)),
            index: n,
        }
    }
}

/// First `N + 1` partial quotients of `√D`.
pub fn expand(d: &Poly, n: usize) -> Result<CfExpansion, CfError> {
    expand_with(Radicand::new(d.clone())?, n, DEFAULT_VALIDATE_REPEATS, |_| false)
}

/// As [`expand`], with an explicit degree-period validation depth and a stop
/// predicate polled before each step with the index about to be computed.
pub fn expand_with(
    rad: Radicand,
    n: usize,
    validate_repeats: usize,
    mut stop: impl FnMut(usize) -> bool,
) -> Result<CfExpansion, CfError> {
    let mut engine = CfEngine::new(rad.clone());
    let mut out = CfExpansion {
        radicand: rad,
        a_scaled: Vec::with_capacity(n + 1),
        p_states: Vec::with_capacity(n + 2),
        q_monic: Vec::with_capacity(n + 2),
        mu: Vec::with_capacity(n + 1),
        p: Vec::with_capacity(n + 2),
        q: Vec::with_capacity(n + 2),
        degrees: Vec::with_capacity(n + 1),
        cf_period: None,
        degree_period: None,
        truncated: false,
    };
    for k in 0..=n {
        if k > 0 && stop(k) {
            out.truncated = true;
            break;
        }
        let term = engine.next_term()?;
        out.degrees.push(term.a_scaled.degree().expect("partial quotients are nonzero"));
        out.a_scaled.push(term.a_scaled);
        out.p_states.push(term.p_state);
        out.q_monic.push(term.q_monic);
        out.mu.push(term.mu);
        out.p.push(term.p);
        out.q.push(term.q);
    }
    let (_, ps, qm, p, q) = engine.peek();
    out.p_states.push(ps.clone());
    out.q_monic.push(qm.clone());
    out.p.push(p);
    out.q.push(q);
    out.cf_period = detect_period(&out);
    out.degree_period = detect_degree_period(&out, validate_repeats);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_poly, Rat};
    use proptest::prelude::*;

    fn pp(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn euler_steps() {
        let rad = Radicand::new(pp("t^2+1")).unwrap();
        let (a, s1) = cf_step(&rad, &SurdState::initial()).unwrap();
        assert_eq!((a, &s1.p, &s1.q), (Poly::t(), &Poly::t(), &Poly::one()));
        let (a, s2) = cf_step(&rad, &s1).unwrap();
        assert_eq!((a, &s2.p, &s2.q), (pp("2*t"), &Poly::t(), &Poly::one()));
        assert_eq!(s2.index, 2);
    }

    #[test]
    fn squares_are_rejected() {
        assert_eq!(Radicand::new(pp("t^2")), Err(CfError::PerfectSquare));
        assert_eq!(Radicand::new(pp("(t^2+t+1)^2/4")), Err(CfError::PerfectSquare));
        assert!(matches!(Radicand::new(pp("t^3+1")), Err(CfError::Series(_))));
    }

    #[test]
    fn euler_expansion() {
        let e = expand(&pp("t^2+1"), 3).unwrap();
        let a: Vec<Poly> = (0..4).map(|n| e.partial_quotient(n)).collect();
        assert_eq!(a, vec![pp("t"), pp("2*t"), pp("2*t"), pp("2*t")]);
        assert_eq!((&e.p[2], &e.q[2]), (&pp("2*t^2+1"), &pp("2*t")));
        assert_eq!(e.cf_period, Some((1, 1)));
    }

    #[test]
    fn minus_one_alternates_sign() {
        let e = expand(&pp("t^2-1"), 4).unwrap();
        let a: Vec<Poly> = (0..5).map(|n| e.partial_quotient(n)).collect();
        assert_eq!(a, vec![pp("t"), pp("-2*t"), pp("2*t"), pp("-2*t"), pp("2*t")]);
        assert_eq!(e.cf_period, Some((1, 2)));
    }

    #[test]
    fn main_example_degrees() {
        let d = pp("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2");
        let e = expand(&d, 10).unwrap();
        assert_eq!(e.degrees, vec![5, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]);
    }

    #[test]
    fn engine_matches_exact_steps() {
        for src in ["(t^2-1)*(t-2)^2", "t^6 - 3*t^4 + 2*t - 1", "4*t^4 + t/3 - 2"] {
            let d = pp(src);
            let e = expand(&d, 12).unwrap();
            let rad = &e.radicand;
            let mut st = SurdState::initial();
            let (mut p0, mut p1) = (Poly::zero(), Poly::one());
            let (mut q0, mut q1) = (Poly::one(), Poly::zero());
            for n in 0..=12 {
                assert_eq!(e.state(n), st, "{src}, n = {n}");
                let (a, next) = cf_step(rad, &st).unwrap();
                assert_eq!(e.partial_quotient(n), a, "{src}, n = {n}");
                // exact convergents agree with the stored ones up to a factor
                let k = e.p[n].leading().or(e.q[n].leading()).unwrap().clone()
                    / p1.leading().or(q1.leading()).unwrap();
                assert_eq!((p1.scale(&k), q1.scale(&k)), (e.p[n].clone(), e.q[n].clone()));
                let lhs = &(&p1 * &p1) - &(&d * &(&q1 * &q1));
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(lhs, st.q.scale(&sign), "{src}, n = {n}");
                let p2 = &(&a * &p1) + &p0;
                let q2 = &(&a * &q1) + &q0;
                (p0, p1, q0, q1) = (p1, p2, q1, q2);
                st = next;
            }
        }
    }

    #[test]
    fn stop_truncates() {
        let e = expand_with(Radicand::new(pp("t^2+2")).unwrap(), 10, 3, |k| k > 4).unwrap();
        assert!(e.truncated);
        assert_eq!(e.len(), 5);
        assert_eq!(e.p_states.len(), 6);
    }

    fn arb_radicand() -> impl Strategy<Value = Poly> {
        (1usize..6, 1i64..4, prop::collection::vec(-6i64..7, 10)).prop_filter_map(
            "square",
            |(half, s, rest)| {
                let mut c: Vec<Rat> = rest[..2 * half].iter().map(|&x| int(x)).collect();
                c.push(int(s * s));
                let d = Poly::from_coeffs(c);
                Radicand::new(d.clone()).ok().map(|_| d)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn surd_state_invariants(d in arb_radicand()) {
            let rad = Radicand::new(d.clone()).unwrap();
            let half = rad.half_degree();
            let mut engine = CfEngine::new(rad);
            for _ in 0..50 {
                let term = engine.next_term().unwrap();
                let (_, p, q, _, _) = engine.peek();
                prop_assert!(q.leading().is_some_and(|c| c.is_one()));
                prop_assert!(q.divides(&(&d - &(p * p))));
                prop_assert!(p.degree().unwrap_or(0) <= half);
                prop_assert!(!term.mu.is_zero());
                let da = term.a_scaled.degree().unwrap();
                prop_assert!(da <= half);
                if term.index >= 1 {
                    prop_assert!(da >= 1);
                }
            }
        }

        #[test]
        fn convergent_recurrences(d in arb_radicand()) {
            let e = expand(&d, 25).unwrap();
            for n in 0..e.p.len() - 1 {
                let det = &(&e.p[n + 1] * &e.q[n]) - &(&e.p[n] * &e.q[n + 1]);
                prop_assert!(det.is_constant() && !det.is_zero());
                if n >= 1 {
                    prop_assert_eq!(
                        e.q[n + 1].degree().unwrap(),
                        e.q[n].degree().unwrap() + e.degrees[n]
                    );
                    prop_assert!(e.p[n].gcd(&e.q[n]).unwrap().is_one());
                }
            }
        }
    }
}
