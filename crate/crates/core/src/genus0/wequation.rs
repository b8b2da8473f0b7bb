//! Coordinates on `G ≅ 𝔾_m^g`: the point maps `ψ_l`, powers of `δ`, and the
//! multilinear equation `f` of the closure of `W_{g−1}`.

use super::scalar::Scalar;
use super::Genus0Error;

/// `∏_{i<j} (u_i − u_j)`; the empty product is 1.
pub fn h_antisym<S: Scalar>(u: &[S]) -> S {
    let Some(first) = u.first() else {
        panic!("h_antisym needs at least one value");
    };
    let mut acc = first.one_like();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            acc = acc.mul(&u[i].sub(&u[j]));
        }
    }
    acc
}

/// The equation `f(x_1, …, x_g) = Σ_A (−1)^{|A|} H(b^{1−2A}) x^A`.
///
/// Coefficients are indexed by bitmask: bit `i` of `A` set means `x_{i+1}`
/// occurs, with `b_{i+1}` inverted inside `H`.
#[derive(Debug, Clone)]
pub struct WEquation<S> {
    g: usize,
    coeffs: Vec<S>,
    b: Vec<S>,
}

fn check_b<S: Scalar>(b: &[S]) -> Result<Vec<S>, Genus0Error> {
    let mut inv = Vec::with_capacity(b.len());
    for (i, bi) in b.iter().enumerate() {
        let one = bi.one_like();
        if bi.is_zero_like() || bi.near(&one) || bi.near(&one.neg()) {
            return Err(Genus0Error::DegenerateB { index: i + 1 });
        }
        inv.push(bi.recip().expect("nonzero"));
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if b[i].near(&b[j]) || b[i].near(&inv[j]) {
                return Err(Genus0Error::RepeatedB { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(inv)
}

impl<S: Scalar> WEquation<S> {
    /// All `2^g` coefficients. Needs `g ≥ 1`, `b_i ∉ {0, ±1}` and the
    /// `b_i^{±1}` pairwise distinct.
    pub fn build(b: &[S]) -> Result<Self, Genus0Error> {
        let g = b.len();
        if g == 0 {
            return Err(Genus0Error::Length { expected: 1, got: 0 });
        }
        if g >= usize::BITS as usize {
            return Err(Genus0Error::Length { expected: usize::BITS as usize - 1, got: g });
        }
        let inv = check_b(b)?;
        let coeffs = (0..1usize << g)
            .map(|mask| {
                let u: Vec<S> = (0..g)
                    .map(|i| if mask >> i & 1 == 1 { inv[i].clone() } else { b[i].clone() })
                    .collect();
                let h = h_antisym(&u);
                if mask.count_ones() % 2 == 1 {
                    h.neg()
                } else {
                    h
                }
            })
            .collect();
        Ok(WEquation { g, coeffs, b: b.to_vec() })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    /// Coefficients by bitmask, `coeffs()[0]` being the constant term.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coefficient(&self, mask: usize) -> &S {
        &self.coeffs[mask]
    }

    pub fn eval(&self, x: &[S]) -> Result<S, Genus0Error> {
        if x.len() != self.g {
            return Err(Genus0Error::Length { expected: self.g, got: x.len() });
        }
        let mut acc = self.coeffs[0].zero_like();
        for (mask, c) in self.coeffs.iter().enumerate() {
            let mut term = c.clone();
            for (i, xi) in x.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    term = term.mul(xi);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `Σ_A |coefficient(A)·x^A|` as a `log2`, the scale against which a
    /// numeric zero of `f` is judged.
    pub fn log2_term_scale(&self, x: &[S], log2_abs: impl Fn(&S) -> f64) -> f64 {
        let lx: Vec<f64> = x.iter().map(&log2_abs).collect();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                log2_abs(c)
                    + lx
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, l)| l)
                        .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
            + (self.coeffs.len() as f64).log2()
    }
}

/// A point of `ℙ¹` in the `z`-coordinate; `∞` contributes the factor 1 to
/// every coordinate of `ψ_l`.
#[derive(Debug, Clone)]
pub enum Point<S> {
    Finite(S),
    Infinity,
}

/// `ψ_l(z)_i = ∏_j (z_j − b_i)/(z_j − b_i^{−1})`.
pub fn eval_psi<S: Scalar>(z: &[Point<S>], b: &[S]) -> Result<Vec<S>, Genus0Error> {
    let mut out = Vec::with_capacity(b.len());
    for (i, bi) in b.iter().enumerate() {
        let inv = bi.recip().ok_or(Genus0Error::DegenerateB { index: i + 1 })?;
        let mut acc = bi.one_like();
        for (j, zj) in z.iter().enumerate() {
            let Point::Finite(zj) = zj else { continue };
            let num = zj.sub(bi);
            let den = zj.sub(&inv);
            if num.is_zero_like() || den.is_zero_like() {
                return Err(Genus0Error::PsiCollision { point: j + 1, index: i + 1 });
            }
            acc = acc.mul(&num).mul(&den.recip().expect("nonzero"));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Coordinates `b_i^{2n}` of `i(δ^n)`.
pub fn delta_power<S: Scalar>(b: &[S], n: i64) -> Result<Vec<S>, Genus0Error> {
    b.iter()
        .enumerate()
        .map(|(i, bi)| {
            bi.powi(2 * n)
                .ok_or(Genus0Error::DegenerateB { index: i + 1 })
        })
        .collect()
}
