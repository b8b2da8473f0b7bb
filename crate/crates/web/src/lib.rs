//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document; failures come back as `{"error": "..."}`.

use pellcf::cf::{expand, pell_solution, DegreePeriod};
use pellcf::genus0::{analyze, gen_example};
use pellcf::poly::{parse_poly, AppComplex, MIN_PRECISION};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Upper bounds that keep a page responsive.
const MAX_STEPS: u32 = 200;
const MAX_PRECISION: u32 = 1024;

fn complex(z: &AppComplex) -> Value {
    json!({ "re": z.re_f64(), "im": z.im_f64() })
}

fn degree_display(degrees: &[usize], period: Option<&DegreePeriod>) -> String {
    let join = |s: &[usize]| s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
    match period {
        Some(dp) if dp.preperiod + dp.period <= degrees.len() => format!(
            "{}, ({})*",
            join(&degrees[..dp.preperiod]),
            join(&degrees[dp.preperiod..dp.preperiod + dp.period])
        ),
        _ => format!("{}, ...", join(degrees)),
    }
}

fn precision(bits: u32) -> usize {
    bits.clamp(MIN_PRECISION as u32, MAX_PRECISION) as usize
}

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn expand_value(poly: &str, steps: u32) -> Result<Value, String> {
    let d = parse_poly(poly).map_err(|e| e.to_string())?;
    let steps = steps.min(MAX_STEPS) as usize;
    let exp = expand(&d, steps).map_err(|e| e.to_string())?;
    let pell = match exp.cf_period {
        Some(_) => pell_solution(&d, exp.len())
            .map_err(|e| e.to_string())?
            .map(|s| json!({ "x": s.x.to_string(), "y": s.y.to_string(), "c": s.c.to_string() })),
        None => None,
    };
    Ok(json!({
        "input": d.to_string(),
        "degrees": exp.degrees,
        "degree_display": degree_display(&exp.degrees, exp.degree_period.as_ref()),
        "cf_period": exp.cf_period.map(|(pre, per)| json!({ "preperiod": pre, "period": per })),
        "degree_period": exp.degree_period.map(|p| json!({
            "preperiod": p.preperiod,
            "period": p.period,
            "validated_repeats": p.validated_repeats,
        })),
        "pell": pell,
    }))
}

fn analyze_value(poly: &str, bits: u32) -> Result<Value, String> {
    let d = parse_poly(poly).map_err(|e| e.to_string())?;
    let a = analyze(&d, precision(bits)).map_err(|e| e.to_string())?;
    Ok(json!({
        "input": d.to_string(),
        "c": a.c.to_string(),
        "d1": a.d1.to_string(),
        "g": a.g,
        "is_squarefree": a.is_squarefree,
        "cyclotomic_factor": a.cyclotomic.to_string(),
        "r": a.r,
        "d_p": a.d_p.to_string(),
        "pellian": a.pellian,
        "max_recurring_degree_bound": a.max_recurring_degree_bound,
        "b": a.b.iter().map(complex).collect::<Vec<_>>(),
    }))
}

fn gen_example_value(l: u32, p: u32, q: u32, h: &str, bits: u32) -> Result<Value, String> {
    let h = parse_poly(h).map_err(|e| e.to_string())?;
    if !h.is_constant() {
        return Err("h must be a rational number".into());
    }
    let ex = gen_example(l as usize, p as usize, q as usize, &h.coeff(0), precision(bits))
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "g": ex.g,
        "d_exact": ex.d_exact.as_ref().map(|d| d.to_string()),
        "b": ex.b.iter().map(complex).collect::<Vec<_>>(),
        "rho": ex.rho.iter().map(complex).collect::<Vec<_>>(),
    }))
}

/// Degrees of the partial quotients of `√D`, both period detectors and, for
/// a repeat, the Pell solution.
#[wasm_bindgen]
pub fn expand_json(poly: &str, steps: u32) -> String {
    finish(expand_value(poly, steps))
}

/// `D = c(t² − 1)D₁²` and its roots-of-unity census.
#[wasm_bindgen]
pub fn analyze_json(poly: &str, precision_bits: u32) -> String {
    finish(analyze_value(poly, precision_bits))
}

/// A radicand with `p` roots of unity and `q` multiples of `h` among its `b`.
#[wasm_bindgen]
pub fn gen_example_json(l: u32, p: u32, q: u32, h: &str, precision_bits: u32) -> String {
    finish(gen_example_value(l, p, q, h, precision_bits))
}
