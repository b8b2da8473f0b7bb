//! Plain-text rendering of a report.

use std::fmt::Write;

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn line(out: &mut String, key: &str, value: impl AsRef<str>) {
    let _ = writeln!(out, "{key:<24}{}", value.as_ref());
}

fn period(out: &mut String, key: &str, p: &Value) {
    if p["found"] == Value::Bool(true) {
        line(out, key, format!("preperiod {}, period {}  [{}]", p["preperiod"], p["period"], s(&p["status"])));
    } else {
        line(out, key, s(&p["status"]));
    }
}

fn pell(out: &mut String, p: &Value) {
    if p.is_null() {
        return;
    }
    if p["status"] == "found" {
        line(out, "pell", format!("x = {}, y = {}, c = {} (convergent {})", s(&p["x"]), s(&p["y"]), s(&p["c"]), p["index"]));
    } else {
        line(out, "pell", s(&p["status"]));
    }
}

fn analysis(out: &mut String, a: &Value) {
    line(out, "c", s(&a["c"]));
    line(out, "D1", s(&a["d1"]));
    line(out, "d, g", format!("{}, {}", a["d"], a["g"]));
    line(out, "squarefree", s(&a["is_squarefree"]));
    line(out, "order bound", s(&a["order_bound"]));
    line(out, "roots-of-unity factor", s(&a["cyclotomic_factor"]));
    line(out, "r", s(&a["r"]));
    line(out, "Pellian part", s(&a["d_p"]));
    line(out, "pellian", s(&a["pellian"]));
    line(out, "recurring degree bound", s(&a["max_recurring_degree_bound"]));
    if let Some(bs) = a["b"].as_array() {
        for (i, b) in bs.iter().enumerate() {
            let im = b["im"].as_f64().unwrap_or(f64::NAN);
            let sign = if im < 0.0 { '-' } else { '+' };
            line(out, &format!("b_{}", i + 1), format!("{} {sign} {}i", b["re"], im.abs()));
        }
    }
}

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    let r = &report["results"];
    line(&mut out, "command", s(&report["command"]));
    if !report["input"].is_null() {
        line(&mut out, "input", s(&report["input"]));
    }
    match report["command"].as_str().unwrap_or("") {
        "expand" => {
            line(&mut out, "degrees", s(&r["degree_display"]));
            period(&mut out, "cf period", &r["cf_period"]);
            period(&mut out, "degree period", &r["degree_period"]);
            pell(&mut out, &r["pell"]);
            if let Some(a) = r["partial_quotients"].as_array() {
                for (n, q) in a.iter().enumerate() {
                    line(&mut out, &format!("a_{n}"), s(q));
                }
            }
        }
        "pell" => pell(&mut out, r),
        "analyze" => {
            analysis(&mut out, r);
            if let Some(c) = r["i_delta"].as_array() {
                line(&mut out, "i(delta)", c.iter().map(s).collect::<Vec<_>>().join(", "));
            }
        }
        "verify" => {
            line(&mut out, "degrees", s(&r["degree_display"]));
            period(&mut out, "cf period", &r["cf_period"]);
            period(&mut out, "degree period", &r["degree_period"]);
            line(&mut out, "r, g", format!("{}, {}", r["analysis"]["r"], r["analysis"]["g"]));
            if !r["declined"].is_null() {
                line(&mut out, "declined", s(&r["declined"]));
            }
            line(&mut out, "working precision", format!("{} bits", r["working_precision_bits"]));
            line(&mut out, "tolerance", s(&r["tolerance"]));
            for c in r["w_checks"].as_array().into_iter().flatten() {
                line(
                    &mut out,
                    &format!("f at n = {}", c["n"]),
                    format!(
                        "log2|f| = {:.1} (terms up to 2^{:.1}), deg a_{} = {}: {}",
                        c["log2_abs_f"].as_f64().unwrap_or(f64::NEG_INFINITY),
                        c["log2_scale"].as_f64().unwrap_or(f64::NAN),
                        c["index"],
                        c["degree"],
                        if c["passed"] == true { "pass" } else { "FAIL" }
                    ),
                );
            }
            line(&mut out, "census", s(&r["census"]["status"]));
            let pm = &r["pellian_part"];
            line(
                &mut out,
                "Pellian part",
                format!(
                    "{} quotients of degree ≥ {}, {} unmatched",
                    pm["matches"].as_array().map_or(0, Vec::len),
                    pm["threshold"],
                    pm["unmatched"]
                ),
            );
        }
        "gen-example" => {
            line(&mut out, "l, p, q, h", format!("{}, {}, {}, {}", r["l"], r["p"], r["q"], s(&r["h"])));
            line(&mut out, "D", s(&r["d_exact"]));
            if r["analysis"].is_object() {
                analysis(&mut out, &r["analysis"]);
            }
            if r["witness"].is_object() {
                let w = &r["witness"];
                line(&mut out, "witness", format!("n = {}, log2 residual {}", w["n"], w["log2_residual"]));
            }
        }
        "corpus" => {
            for e in r["entries"].as_array().into_iter().flatten() {
                let verdict = match &e["analysis"] {
                    Value::Object(a) => format!(
                        "pellian = {}, repeat = {}, {}",
                        a["pellian"], e["cf_period"]["found"], s(&e["agreement"])
                    ),
                    _ => format!("{}", s(e.get("analysis_error").or(e.get("error")).unwrap_or(&Value::Null))),
                };
                line(&mut out, &s(&e["label"]), verdict);
            }
            let a = &r["aggregate"];
            line(
                &mut out,
                "aggregate",
                format!("{} entries: {} agree, {} disagree, {} n/a", a["entries"], a["agree"], a["disagree"], a["not_applicable"]),
            );
        }
        _ => {}
    }
    for w in report["warnings"].as_array().into_iter().flatten() {
        line(&mut out, "warning", s(w));
    }
    out
}
