//! `label: polynomial` files and the per-entry Pellianity comparison.

use pellcf::cf::{expand_with, Radicand};
use pellcf::genus0::analyze;
use pellcf::poly::{parse_poly, Poly};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::Common;
use crate::report::{budget, Outcome, CONJECTURAL};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub label: String,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// Entries in file order and the lines that failed, numbered from 1.
pub fn parse_corpus(text: &str) -> (Vec<Entry>, Vec<LineError>) {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((label, expr)) = content.split_once(':') else {
            errors.push(LineError { line, message: "expected `label: polynomial`".into() });
            continue;
        };
        let label = label.trim();
        if label.is_empty() {
            errors.push(LineError { line, message: "empty label".into() });
            continue;
        }
        match parse_poly(expr.trim()) {
            Ok(poly) => entries.push(Entry { line, label: label.to_string(), poly }),
            Err(e) => errors.push(LineError { line, message: e.to_string() }),
        }
    }
    (entries, errors)
}

pub fn load_corpus(path: &str) -> Result<(Vec<Entry>, Vec<LineError>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    Ok(parse_corpus(&text))
}

/// Whether the census and the state repeat agree on one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    NotApplicable,
}

impl Agreement {
    fn as_str(self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::NotApplicable => "n/a",
        }
    }
}

fn process(entry: &Entry, common: &Common) -> (Value, Agreement) {
    let base = json!({ "line": entry.line, "label": entry.label, "input": entry.poly.to_string() });
    let mut out = base;
    let rad = match Radicand::new(entry.poly.clone()) {
        Ok(r) => r,
        Err(e) => {
            out["error"] = json!(e.to_string());
            return (out, Agreement::NotApplicable);
        }
    };
    let exp = match expand_with(rad, common.steps, common.window_validate, budget(common)) {
        Ok(x) => x,
        Err(e) => {
            out["error"] = json!(e.to_string());
            return (out, Agreement::NotApplicable);
        }
    };
    out["degrees"] = json!(exp.degrees);
    out["cf_period"] = match exp.cf_period {
        Some((pre, per)) => json!({ "found": true, "preperiod": pre, "period": per }),
        None => json!({ "found": false }),
    };
    out["truncated"] = json!(exp.truncated);
    let agreement = match analyze(&entry.poly, common.precision) {
        Ok(a) => {
            out["analysis"] = json!({
                "g": a.g,
                "r": a.r,
                "is_squarefree": a.is_squarefree,
                "pellian": a.pellian,
                "d_p": a.d_p.to_string(),
            });
            if a.pellian == exp.cf_period.is_some() {
                Agreement::Agree
            } else {
                Agreement::Disagree
            }
        }
        Err(e) => {
            out["analysis_error"] = json!(e.to_string());
            Agreement::NotApplicable
        }
    };
    out["agreement"] = json!(agreement.as_str());
    (out, agreement)
}

pub fn corpus_cmd(path: &str, common: &Common) -> Result<Outcome, CliError> {
    let (entries, errors) = load_corpus(path)?;
    if entries.is_empty() && !errors.is_empty() {
        let lines: Vec<String> = errors.iter().map(|e| format!("line {}: {}", e.line, e.message)).collect();
        return Err(CliError::Input(format!("no line of {path} parsed: {}", lines.join("; "))));
    }
    let mut warnings = Vec::new();
    if entries.is_empty() {
        warnings.push(format!("{path} contains no entries"));
    }
    for e in &errors {
        warnings.push(format!("line {}: {}", e.line, e.message));
    }
    // collect keeps input order whatever the completion order
    let processed: Vec<(Value, Agreement)> = entries.par_iter().map(|e| process(e, common)).collect();
    let count = |a: Agreement| processed.iter().filter(|(_, x)| *x == a).count();
    let (agree, disagree, na) = (count(Agreement::Agree), count(Agreement::Disagree), count(Agreement::NotApplicable));
    if disagree > 0 {
        warnings.push(format!(
            "{disagree} entries disagree; a missing repeat within {} terms is {CONJECTURAL} evidence only",
            common.steps + 1
        ));
    }
    Ok(Outcome {
        results: json!({
            "entries": processed.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
            "parse_errors": errors.iter().map(|e| json!({ "line": e.line, "message": e.message })).collect::<Vec<_>>(),
            "aggregate": {
                "entries": entries.len(),
                "agree": agree,
                "disagree": disagree,
                "not_applicable": na,
            },
        }),
        warnings,
    })
}
