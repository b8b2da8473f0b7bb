//! Cross-checks between the continued fraction of `√D` and the geometry of
//! `δ`: vanishing of `f` at `i(δ^n)`, the census of large degrees, and the
//! Pellian-part origin of degrees `≥ d − r`.

use super::wequation::{delta_power, WEquation};
use super::{analyze, ln_from_degrees, Genus0Analysis, Genus0Error};
use crate::cf::{
    check_convergent, expand_with, CfError, DegreePeriod, Radicand, DEFAULT_VALIDATE_REPEATS,
};
use crate::poly::{AppComplex, Poly, Rat};

/// `f(i(δ^n))` at the convergent position of a partial quotient of degree
/// `≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct WCheck {
    pub index: usize,
    pub degree: usize,
    /// `n = deg p_index`.
    pub n: usize,
    pub log2_abs_f: f64,
    /// `log2` of the largest term of `f` at the point; cancellation below it
    /// is what the zero test measures.
    pub log2_scale: f64,
    pub passed: bool,
}

/// Whether `p_index = p·R` with `(p, q_index)` a convergent of the Pellian
/// part, `R` the non-cyclotomic squarefree factor of `D₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellianMatch {
    pub index: usize,
    pub degree: usize,
    pub divisible: bool,
    /// `None` when `R ∤ p_index` or the quotient is not coprime to `q_index`.
    pub convergent: Option<bool>,
}

impl PellianMatch {
    pub fn matched(&self) -> bool {
        self.convergent == Some(true)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub analysis: Genus0Analysis,
    /// Set when a hypothesis fails and the geometric checks are skipped.
    pub declined: Option<String>,
    pub degrees: Vec<usize>,
    pub cf_period: Option<(usize, usize)>,
    pub degree_period: Option<DegreePeriod>,
    /// Set when a stop request cut the window short.
    pub truncated: bool,
    /// Precision used for `f`: the requested one plus the bits that the
    /// size of `b_i^{2n}` would otherwise eat.
    pub working_precision: usize,
    pub tolerance: Rat,
    pub w_checks: Vec<WCheck>,
    /// First index counted by the census.
    pub warmup: usize,
    /// Census threshold `r + 2`.
    pub census_threshold: usize,
    /// `(index, degree)` with `degree ≥ r + 2` and `index ≥ warmup`.
    pub census: Vec<(usize, usize)>,
    /// Threshold `d − r` for the Pellian-part check.
    pub pellian_threshold: usize,
    pub pellian_matches: Vec<PellianMatch>,
    pub ln: Vec<usize>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn w_checks_pass(&self) -> bool {
        self.w_checks.iter().all(|c| c.passed)
    }

    pub fn unmatched_pellian(&self) -> usize {
        self.pellian_matches.iter().filter(|m| !m.matched()).count()
    }
}

pub const CENSUS_WARMUP: usize = 1;

pub fn verify_consistency(
    d: &Poly,
    n: usize,
    precision_bits: usize,
    tolerance: &Rat,
) -> Result<VerifyReport, Genus0Error> {
    verify_consistency_with(d, n, precision_bits, tolerance, |_| false)
}

/// As [`verify_consistency`], polling `stop` before each expansion step.
pub fn verify_consistency_with(
    d: &Poly,
    n: usize,
    precision_bits: usize,
    tolerance: &Rat,
    stop: impl FnMut(usize) -> bool,
) -> Result<VerifyReport, Genus0Error> {
    let analysis = analyze(d, precision_bits)?;
    let exp = expand_with(Radicand::new(d.clone())?, n, DEFAULT_VALIDATE_REPEATS, stop)?;
    let mut warnings = Vec::new();
    let ln = match ln_from_degrees(&exp.degrees, analysis.g, analysis.d) {
        Ok(ln) => ln,
        Err(e) => {
            warnings.push(format!("l_n sequence unavailable: {e}"));
            Vec::new()
        }
    };
    let mut report = VerifyReport {
        declined: None,
        degrees: exp.degrees.clone(),
        cf_period: exp.cf_period,
        degree_period: exp.degree_period,
        truncated: exp.truncated,
        working_precision: precision_bits,
        tolerance: tolerance.clone(),
        w_checks: Vec::new(),
        warmup: CENSUS_WARMUP,
        census_threshold: analysis.r + 2,
        census: Vec::new(),
        pellian_threshold: analysis.d - analysis.r,
        pellian_matches: Vec::new(),
        ln,
        warnings,
        analysis,
    };
    if !report.analysis.is_squarefree {
        report.declined = Some("D1 is not squarefree; the genus-0 analysis assumes distinct roots".into());
        return Ok(report);
    }

    report.census = exp
        .degrees
        .iter()
        .enumerate()
        .skip(CENSUS_WARMUP)
        .filter(|&(_, &deg)| deg >= report.census_threshold)
        .map(|(k, &deg)| (k, deg))
        .collect();

    pellian_part_matches(&mut report, &exp.p, &exp.q)?;

    if report.analysis.g == 0 {
        report
            .warnings
            .push("g = 0: there is no W-equation to check".into());
        return Ok(report);
    }
    let positions: Vec<(usize, usize, usize)> = exp
        .degrees
        .iter()
        .enumerate()
        .filter(|&(_, &deg)| deg >= 2)
        .map(|(k, &deg)| (k, deg, exp.p[k].degree().expect("p_k ≠ 0")))
        .collect();
    let n_max = positions.iter().map(|p| p.2).max().unwrap_or(0);
    let working = precision_bits + guard_bits(&report.analysis, n_max);
    report.working_precision = working;
    let hi = if working == precision_bits {
        report.analysis.clone()
    } else {
        analyze(d, working)?
    };
    let w = match WEquation::build(&hi.b) {
        Ok(w) => w,
        Err(e) => {
            report.declined = Some(format!("W-equation unavailable: {e}"));
            return Ok(report);
        }
    };
    for (index, degree, n) in positions {
        let x = delta_power(&hi.b, n as i64)?;
        let f = w.eval(&x)?;
        report.w_checks.push(WCheck {
            index,
            degree,
            n,
            log2_abs_f: f.log2_abs(),
            log2_scale: w.log2_term_scale(&x, AppComplex::log2_abs),
            passed: f.abs_le(tolerance),
        });
    }
    Ok(report)
}

/// Bits lost to the magnitude of the terms of `f(b^{2n})` for `n ≤ n_max`.
fn guard_bits(a: &Genus0Analysis, n_max: usize) -> usize {
    let logs: Vec<f64> = a.b.iter().map(|b| b.log2_abs().max(0.0)).collect();
    let top = logs.iter().copied().fold(0.0, f64::max);
    let g = a.g as f64;
    // coordinates, coefficients (∏ of g(g−1)/2 differences), 2^g terms
    let bits = 2.0 * n_max as f64 * logs.iter().sum::<f64>()
        + g * (g - 1.0) / 2.0 * (top + 1.0)
        + g
        + (2.0 * n_max as f64 + 2.0).log2();
    bits.ceil() as usize + 32
}

fn pellian_part_matches(
    report: &mut VerifyReport,
    p: &[Poly],
    q: &[Poly],
) -> Result<(), Genus0Error> {
    let a = &report.analysis;
    let rest = a.non_cyclotomic();
    let rad_p = Radicand::new(a.d_p.scale(&a.c))?;
    let threshold = report.pellian_threshold;
    for (k, &deg) in report.degrees.iter().enumerate().skip(1) {
        if deg < threshold {
            continue;
        }
        let (quot, rem) = p[k].div_rem(&rest).expect("R ≠ 0");
        let divisible = rem.is_zero();
        let convergent = if divisible {
            match check_convergent(&quot, &q[k], &rad_p) {
                Ok(b) => Some(b),
                Err(CfError::NotCoprime) => None,
                Err(e) => return Err(e.into()),
            }
        } else {
            None
        };
        report.pellian_matches.push(PellianMatch { index: k, degree: deg, divisible, convergent });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, pow2};

    fn pp(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn main_example_is_consistent() {
        let d = pp("1/4096*(t^2-1)*(4*t^2-1)^2*(16*t^2+20*t+13)^2");
        let rep = verify_consistency(&d, 11, 256, &pow2(-64)).unwrap();
        assert_eq!(rep.degrees, vec![5, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1]);
        assert!(rep.declined.is_none());
        // a_0 and the five degree-2 quotients
        assert_eq!(rep.w_checks.len(), 6);
        assert!(rep.w_checks_pass(), "{:?}", rep.w_checks);
        assert_eq!(
            rep.w_checks.iter().map(|c| c.n).collect::<Vec<_>>(),
            vec![0, 6, 9, 12, 15, 18]
        );
        assert!(rep.census.is_empty());
        assert_eq!(rep.pellian_threshold, 3);
        assert!(rep.pellian_matches.is_empty());
    }

    #[test]
    fn pellian_example_matches_itself() {
        let d = pp("(t^2-1)*(t-1/2)^2*(t+1/2)^2");
        let rep = verify_consistency(&d, 12, 128, &pow2(-64)).unwrap();
        assert!(rep.analysis.pellian);
        assert_eq!(rep.analysis.r, rep.analysis.g);
        assert!(rep.cf_period.is_some());
        assert!(rep.pellian_matches.iter().all(PellianMatch::matched));
        assert!(rep.w_checks_pass());
    }

    #[test]
    fn no_roots_of_unity() {
        let d = pp("(t^2-1)*(t-2)^2*(t-3)^2");
        let rep = verify_consistency(&d, 30, 128, &pow2(-64)).unwrap();
        assert_eq!(rep.analysis.r, 0);
        assert!(rep.cf_period.is_none());
        assert!(rep.degrees[1..].iter().all(|&a| a <= rep.analysis.d));
        assert!(rep.w_checks_pass());
        // degrees ≥ 2 occur only finitely often; within the window the tail is 1
        assert!(rep.degrees[20..].iter().all(|&a| a == 1), "{:?}", rep.degrees);
    }

    #[test]
    fn declines_non_squarefree() {
        let rep = verify_consistency(&pp("(t^2-1)*(t-2)^4"), 8, 128, &pow2(-64)).unwrap();
        assert!(rep.declined.is_some());
        assert!(rep.w_checks.is_empty());
    }
}
