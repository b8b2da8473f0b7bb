//! Additive coordinates for a non-squarefree `D₁`.
//!
//! With `s = t + u` on the conic `u² = t² − 1`, the derivations are
//! `𝒟₊ = s·d/ds` and `𝒟₋ = s^{−1}·d/d(s^{−1})`. A point `z` contributes
//! `F_k = 𝒟₊^k(𝒟₊(s − z)/(s − z))`, always of the form
//! `N_k(s, z)/(s − z)^{k+1}` with `N_k` homogeneous of degree `k + 1`.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{int, Rat};

/// Dense polynomial in two variables; `coeff(i, j)` multiplies `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    // rows indexed by the power of the first variable
    grid: Vec<Vec<Rat>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { grid: Vec::new() }
    }

    pub fn monomial(c: Rat, i: usize, j: usize) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.grid
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, i: usize, j: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        if self.grid.len() <= i {
            self.grid.resize(i + 1, Vec::new());
        }
        let row = &mut self.grid[i];
        if row.len() <= j {
            row.resize(j + 1, Rat::zero());
        }
        row[j] += c;
        self.trim();
    }

    fn trim(&mut self) {
        for row in &mut self.grid {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.grid.last().is_some_and(Vec::is_empty) {
            self.grid.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    /// Nonzero terms `(i, j, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.grid.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    /// Degree in the first variable; `None` for zero.
    pub fn degree_x(&self) -> Option<usize> {
        self.grid.len().checked_sub(1)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms().map(|(_, j, _)| j).max()
    }

    /// Total degree when every term has it.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms().map(|(i, j, _)| i + j);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, x) in self.terms() {
            out.add_term(i, j, x * c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// `∂/∂x`.
    pub fn d_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.add_term(i - 1, j, c * int(i as i64));
            }
        }
        out
    }

    /// `p(y, x)`.
    pub fn swap(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(j, i, c.clone());
        }
        out
    }

    /// `x^a y^b · p(1/x, 1/y)`; needs `a ≥ deg_x p` and `b ≥ deg_y p`.
    pub fn invert_vars(&self, a: usize, b: usize) -> Option<BiPoly> {
        let mut out = BiPoly::zero();
        for (i, j, c) in self.terms() {
            out.add_term(a.checked_sub(i)?, b.checked_sub(j)?, c.clone());
        }
        Some(out)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.terms().fold(Rat::zero(), |acc, (i, j, c)| {
            acc + c * x.pow(i as i32) * y.pow(j as i32)
        })
    }

    /// `x − y`.
    pub fn difference() -> BiPoly {
        BiPoly::monomial(Rat::one(), 1, 0).add(&BiPoly::monomial(-Rat::one(), 0, 1))
    }
}

impl fmt::Display for BiPoly {
    /// Printed in `s`, `z`, highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|&(i, j, _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (k, (i, j, c)) in terms.into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = [("s", i), ("z", j)]
                .into_iter()
                .filter(|&(_, e)| e > 0)
                .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `numerator / (s − z)^{pole_order}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun2 {
    pub numerator: BiPoly,
    pub pole_order: usize,
}

impl RatFun2 {
    /// Whether `(s − z)` divides the numerator, i.e. `N(s, s) = 0`.
    pub fn numerator_divisible_by_pole(&self) -> bool {
        let mut diag: Vec<Rat> = Vec::new();
        for (i, j, c) in self.numerator.terms() {
            let k = i + j;
            if diag.len() <= k {
                diag.resize(k + 1, Rat::zero());
            }
            diag[k] += c;
        }
        diag.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (s - z)^{}", self.numerator, self.pole_order)
    }
}

/// One step of `x·∂_x` on `N/(x − y)^k`: the new numerator is
/// `x·(∂_x N·(x − y) − k·N)` over `(x − y)^{k+1}`.
fn derive(f: &RatFun2) -> RatFun2 {
    let n = &f.numerator;
    let k = int(f.pole_order as i64);
    let inner = n.d_x().mul(&BiPoly::difference()).add(&n.scale(&-k));
    RatFun2 {
        numerator: BiPoly::monomial(Rat::one(), 1, 0).mul(&inner),
        pole_order: f.pole_order + 1,
    }
}

/// `F_0, …, F_{k_max}` with `F_0 = s/(s − z)` and `F_{k+1} = s·∂_s F_k`.
pub fn fk_sequence(k_max: usize) -> Vec<RatFun2> {
    let mut out = vec![RatFun2 {
        numerator: BiPoly::monomial(Rat::one(), 1, 0),
        pole_order: 1,
    }];
    while out.len() <= k_max {
        let next = derive(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// `G_k = 𝒟₋^k(𝒟₋(s − z)/(s − z))`, computed in `w = 1/s`, `v = 1/z`.
///
/// There `s − z = −(w − v)/(wv)`, so the seed is `w·∂_w log(s − z) =
/// v/(w − v)` and `𝒟₋ = w·∂_w` acts like `𝒟₊` does in `(s, z)`. Each
/// `M_k(w, v)/(w − v)^{k+1}` is brought back to `(s, z)` by multiplying
/// numerator and denominator by `(sz)^{k+1}`; the denominator becomes
/// `(z − s)^{k+1}`, and its sign is moved into the numerator.
pub fn gk_sequence(k_max: usize) -> Vec<RatFun2> {
    let mut in_wv = vec![RatFun2 {
        numerator: BiPoly::monomial(Rat::one(), 0, 1),
        pole_order: 1,
    }];
    while in_wv.len() <= k_max {
        let next = derive(in_wv.last().expect("nonempty"));
        in_wv.push(next);
    }
    in_wv
        .into_iter()
        .map(|m| {
            let e = m.pole_order;
            let back = m
                .numerator
                .invert_vars(e, e)
                .expect("numerator degrees stay within the pole order");
            let sign = if e % 2 == 1 { -Rat::one() } else { Rat::one() };
            RatFun2 { numerator: back.scale(&sign), pole_order: e }
        })
        .collect()
}

/// One coordinate of `i(δ)` for a root of multiplicity `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaComponent {
    /// `b_i^2`.
    Multiplicative { root: usize },
    /// `𝒟₊^k(𝒟₊s/s) − (−1)^k 𝒟₋^k(𝒟₋s/s)` at the points over `ρ_i`.
    Additive { root: usize, order: usize, value: Rat },
}

impl fmt::Display for DeltaComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaComponent::Multiplicative { root } => write!(f, "b_{root}^2"),
            DeltaComponent::Additive { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Where the two accounts of the first additive slot disagree.
pub const I_DELTA_NOTE: &str = "the first additive coordinate of i(delta) is emitted as 2, \
     from D+(s)/s - D-(s)/s = 1 - (-1); one derivation elsewhere states it as 1";

/// `i(δ)` for `δ = [∞₋] − [∞₊]`, which is the divisor of `s`.
///
/// `𝒟₊s/s = 1` and `𝒟₋s/s = −1` are constants, so the first additive slot
/// of each root is `1 − (−1) = 2` and all further derivatives vanish.
pub fn i_delta_components(e: &[usize]) -> Vec<DeltaComponent> {
    let mut out = Vec::new();
    for (i, &ei) in e.iter().enumerate() {
        let root = i + 1;
        out.push(DeltaComponent::Multiplicative { root });
        for k in 0..ei.saturating_sub(1) {
            let (plus, minus) = if k == 0 { (int(1), int(-1)) } else { (int(0), int(0)) };
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            out.push(DeltaComponent::Additive { root, order: k, value: plus - sign * minus });
        }
    }
    out
}
