//! JSON results for each command. Exact rationals and polynomials are
//! strings; only approximate quantities are JSON numbers.

use std::time::Instant;

use pellcf::cf::{expand_with, pell_solution_with, CfExpansion, DegreePeriod, Radicand};
use pellcf::genus0::{
    analyze, gen_example, verify_consistency_with, Genus0Analysis, VerifyReport,
};
use pellcf::gjns::{i_delta_components, I_DELTA_NOTE};
use pellcf::poly::{AppComplex, Poly, Rat};
use serde_json::{json, Map, Value};

use crate::args::Common;
use crate::CliError;

pub const CONJECTURAL: &str = "CONJECTURAL";

/// Results and warnings of one command.
pub struct Outcome {
    pub results: Value,
    pub warnings: Vec<String>,
}

/// Stop predicate for the time budget.
pub fn budget(common: &Common) -> impl FnMut(usize) -> bool + Clone {
    let deadline = common
        .time_budget
        .map(|s| Instant::now() + std::time::Duration::from_secs_f64(s.max(0.0)));
    move |_| deadline.is_some_and(|d| Instant::now() >= d)
}

pub fn rat_str(x: &Rat) -> String {
    x.to_string()
}

/// Finite values as numbers; infinities as strings so the report stays JSON.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("inf")
    } else if x < 0.0 {
        json!("-inf")
    } else {
        json!("nan")
    }
}

fn complex(z: &AppComplex) -> Value {
    json!({ "re": num(z.re_f64()), "im": num(z.im_f64()) })
}

/// `5, (1, 2)*` when a degree period is known, else the plain window.
pub fn degree_display(degrees: &[usize], period: Option<&DegreePeriod>) -> String {
    let join = |s: &[usize]| s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
    match period {
        Some(dp) if dp.preperiod + dp.period <= degrees.len() => {
            let head = join(&degrees[..dp.preperiod]);
            let cycle = join(&degrees[dp.preperiod..dp.preperiod + dp.period]);
            if head.is_empty() {
                format!("({cycle})*")
            } else {
                format!("{head}, ({cycle})*")
            }
        }
        _ => format!("{}, ...", join(degrees)),
    }
}

fn cf_period_json(exp: &CfExpansion) -> Value {
    match exp.cf_period {
        Some((pre, per)) => json!({
            "found": true,
            "preperiod": pre,
            "period": per,
            "status": "PROVED: a complete quotient repeats",
        }),
        None => json!({
            "found": false,
            "status": format!(
                "{CONJECTURAL}: no repeated complete quotient among the first {} terms; \
                 this is not a proof of non-periodicity",
                exp.len()
            ),
        }),
    }
}

fn degree_period_json(dp: Option<&DegreePeriod>, validate: usize) -> Value {
    match dp {
        Some(dp) => json!({
            "found": true,
            "preperiod": dp.preperiod,
            "period": dp.period,
            "validated_repeats": dp.validated_repeats,
            "status": format!("{CONJECTURAL}: periodic over the computed window only"),
        }),
        None => json!({
            "found": false,
            "status": format!("window too short for {validate} validated repeats"),
        }),
    }
}

fn truncation_warning(exp: &CfExpansion, asked: usize, warnings: &mut Vec<String>) {
    if exp.truncated {
        warnings.push(format!(
            "time budget exhausted after {} of {} terms",
            exp.len(),
            asked + 1
        ));
    }
}

pub fn expand_cmd(d: &Poly, common: &Common, quotients: bool) -> Result<Outcome, CliError> {
    let rad = Radicand::new(d.clone())?;
    let exp = expand_with(rad.clone(), common.steps, common.window_validate, budget(common))?;
    let mut warnings = Vec::new();
    truncation_warning(&exp, common.steps, &mut warnings);
    let pell = match exp.cf_period {
        Some(_) => pell_json(pell_solution_with(rad, exp.len(), budget(common))?.as_ref()),
        None => Value::Null,
    };
    let mut results = Map::new();
    results.insert("terms".into(), json!(exp.len()));
    results.insert("degrees".into(), json!(exp.degrees));
    results.insert(
        "degree_display".into(),
        json!(degree_display(&exp.degrees, exp.degree_period.as_ref())),
    );
    results.insert("cf_period".into(), cf_period_json(&exp));
    results.insert(
        "degree_period".into(),
        degree_period_json(exp.degree_period.as_ref(), common.window_validate),
    );
    results.insert("pell".into(), pell);
    if quotients {
        let a: Vec<String> = (0..exp.len()).map(|n| exp.partial_quotient(n).to_string()).collect();
        results.insert("partial_quotients".into(), json!(a));
    }
    results.insert("truncated".into(), json!(exp.truncated));
    Ok(Outcome { results: Value::Object(results), warnings })
}

fn pell_json(sol: Option<&pellcf::cf::PellSolution>) -> Value {
    match sol {
        Some(s) => json!({
            "status": "found",
            "x": s.x.to_string(),
            "y": s.y.to_string(),
            "c": rat_str(&s.c),
            "index": s.index,
            "normalized": s.is_normalized(),
        }),
        None => json!({ "status": "inconclusive (window exhausted)" }),
    }
}

pub fn pell_cmd(d: &Poly, common: &Common) -> Result<Outcome, CliError> {
    let rad = Radicand::new(d.clone())?;
    let sol = pell_solution_with(rad, common.max_steps, budget(common))?;
    let mut warnings = Vec::new();
    match &sol {
        Some(s) if !s.is_normalized() => warnings.push(format!(
            "c = {} is not a rational square; x² − D y² = 1 is solvable only after leaving ℚ",
            s.c
        )),
        None => warnings.push(format!(
            "{CONJECTURAL}: no constant norm within {} steps; D may still be Pellian",
            common.max_steps
        )),
        _ => {}
    }
    Ok(Outcome { results: pell_json(sol.as_ref()), warnings })
}

pub fn analysis_json(a: &Genus0Analysis) -> Value {
    json!({
        "c": rat_str(&a.c),
        "d1": a.d1.to_string(),
        "d": a.d,
        "g": a.g,
        "multiplicities": a.multiplicities.iter()
            .map(|(f, e)| json!({ "factor": f.to_string(), "multiplicity": e }))
            .collect::<Vec<_>>(),
        "is_squarefree": a.is_squarefree,
        "order_bound": a.order_bound,
        "cyclotomic_factor": a.cyclotomic.to_string(),
        "r": a.r,
        "d_p": a.d_p.to_string(),
        "rho": a.rho.iter().map(complex).collect::<Vec<_>>(),
        "b": a.b.iter().map(complex).collect::<Vec<_>>(),
        "precision_bits": a.precision,
        "pellian": a.pellian,
        "max_recurring_degree_bound": a.max_recurring_degree_bound,
    })
}

fn analysis_warnings(a: &Genus0Analysis, warnings: &mut Vec<String>) -> Option<Value> {
    if a.is_squarefree {
        return None;
    }
    warnings.push(
        "D1 is not squarefree: D is not Pellian, and the roots-of-unity census describes \
         only the squarefree part"
            .into(),
    );
    warnings.push(format!("open question: {I_DELTA_NOTE}"));
    let e: Vec<usize> = a
        .multiplicities
        .iter()
        .flat_map(|(f, m)| std::iter::repeat_n(*m, f.degree().unwrap_or(0)))
        .collect();
    Some(json!(i_delta_components(&e).iter().map(|c| c.to_string()).collect::<Vec<_>>()))
}

pub fn analyze_cmd(d: &Poly, common: &Common) -> Result<Outcome, CliError> {
    let a = analyze(d, common.precision)?;
    let mut warnings = Vec::new();
    let mut results = analysis_json(&a);
    if let Some(idelta) = analysis_warnings(&a, &mut warnings) {
        results["i_delta"] = idelta;
    }
    Ok(Outcome { results, warnings })
}

fn verify_json(rep: &VerifyReport, common: &Common) -> Value {
    json!({
        "analysis": analysis_json(&rep.analysis),
        "declined": rep.declined,
        "terms": rep.degrees.len(),
        "degrees": rep.degrees,
        "degree_display": degree_display(&rep.degrees, rep.degree_period.as_ref()),
        "cf_period": match rep.cf_period {
            Some((pre, per)) => json!({ "found": true, "preperiod": pre, "period": per }),
            None => json!({ "found": false, "status": format!("{CONJECTURAL}: none within the window") }),
        },
        "degree_period": degree_period_json(rep.degree_period.as_ref(), common.window_validate),
        "working_precision_bits": rep.working_precision,
        "tolerance": rat_str(&rep.tolerance),
        "w_checks": rep.w_checks.iter().map(|c| json!({
            "index": c.index,
            "degree": c.degree,
            "n": c.n,
            "log2_abs_f": num(c.log2_abs_f),
            "log2_scale": num(c.log2_scale),
            "passed": c.passed,
        })).collect::<Vec<_>>(),
        "w_checks_pass": rep.w_checks_pass(),
        "census": {
            "threshold": rep.census_threshold,
            "from_index": rep.warmup,
            "hits": rep.census.iter().map(|(k, d)| json!({ "index": k, "degree": d })).collect::<Vec<_>>(),
            "status": format!(
                "{CONJECTURAL}: degrees ≥ {} recur only finitely often; the window shows {} hits",
                rep.census_threshold,
                rep.census.len()
            ),
        },
        "pellian_part": {
            "threshold": rep.pellian_threshold,
            "matches": rep.pellian_matches.iter().map(|m| json!({
                "index": m.index,
                "degree": m.degree,
                "divisible": m.divisible,
                "convergent": m.convergent,
                "matched": m.matched(),
            })).collect::<Vec<_>>(),
            "unmatched": rep.unmatched_pellian(),
        },
        "l_n": rep.ln,
        "truncated": rep.truncated,
    })
}

pub fn verify_cmd(d: &Poly, common: &Common) -> Result<Outcome, CliError> {
    let rep = verify_consistency_with(d, common.steps, common.precision, &common.tolerance, budget(common))?;
    let mut warnings = rep.warnings.clone();
    if let Some(why) = &rep.declined {
        warnings.push(format!("checks declined: {why}"));
    }
    if rep.truncated {
        warnings.push(format!("time budget exhausted after {} terms", rep.degrees.len()));
    }
    if !rep.w_checks_pass() {
        warnings.push("some W-equation checks exceed the tolerance".into());
    }
    if rep.unmatched_pellian() > 0 {
        warnings.push(format!(
            "{} large partial quotients are not explained by the Pellian part",
            rep.unmatched_pellian()
        ));
    }
    Ok(Outcome { results: verify_json(&rep, common), warnings })
}

pub fn gen_example_cmd(
    l: usize,
    p: usize,
    q: usize,
    h: &Rat,
    witness: Option<usize>,
    common: &Common,
) -> Result<Outcome, CliError> {
    let ex = gen_example(l, p, q, h, common.precision)?;
    let mut warnings = Vec::new();
    let mut results = json!({
        "l": ex.l,
        "p": ex.p,
        "q": ex.q,
        "h": rat_str(&ex.h),
        "g": ex.g,
        "d": ex.d,
        "d_exact": ex.d_exact.as_ref().map(|d| d.to_string()),
        "b": ex.b.iter().map(complex).collect::<Vec<_>>(),
        "rho": ex.rho.iter().map(complex).collect::<Vec<_>>(),
    });
    match &ex.d_exact {
        Some(d) => {
            let a = analyze(d, common.precision)?;
            results["analysis"] = analysis_json(&a);
        }
        None => {
            warnings.push("coefficients are not rational; D is reported numerically".into());
            results["d_numeric"] = json!(ex.d_numeric.iter().map(complex).collect::<Vec<_>>());
        }
    }
    if let Some(m) = witness {
        let w = ex.witness(m)?;
        results["witness"] = json!({
            "m": m,
            "n": w.n,
            "t": complex(&w.t),
            "z": w.z.iter().map(complex).collect::<Vec<_>>(),
            "log2_residual": num(w.log2_residual),
        });
    }
    Ok(Outcome { results, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_strings() {
        let dp = DegreePeriod { preperiod: 1, period: 2, validated_repeats: 5 };
        assert_eq!(degree_display(&[5, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2], Some(&dp)), "5, (1, 2)*");
        assert_eq!(degree_display(&[3, 1, 1], None), "3, 1, 1, ...");
    }

    #[test]
    fn non_finite_numbers_stay_json() {
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
        assert_eq!(num(1.5), json!(1.5));
    }
}
