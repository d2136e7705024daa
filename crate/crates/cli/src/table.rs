//! Table emitters: the per-prime minimal-height table and the abelian
//! table, in CSV, JSON, markdown, or aligned text.

use std::fmt::Write as _;

use tau3_core::abelian::AbelianRecord;
use tau3_core::corpus::TauResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
    Text,
}

/// Format a positive height to `sig` significant figures, plain decimal.
/// Defaults everywhere to 5, matching how the results are quoted.
pub fn format_sig(value: f64, sig: usize) -> String {
    assert!(value.is_finite() && value > 0.0, "heights are positive");
    let sig = sig.max(1);
    let mut decimals = decimals_for(value, sig);
    let mut s = format!("{value:.decimals$}");
    // Rounding can carry across a power of ten (0.099999 -> "0.10000");
    // recompute the decimal count against the rounded value once.
    let rounded: f64 = s.parse().unwrap_or(value);
    if rounded > 0.0 && decimals_for(rounded, sig) != decimals {
        decimals = decimals_for(rounded, sig);
        s = format!("{value:.decimals$}");
    }
    s
}

fn decimals_for(value: f64, sig: usize) -> usize {
    let magnitude = value.abs().log10().floor() as i64;
    (sig as i64 - 1 - magnitude).max(0) as usize
}

/// One emitted row for the minimal-height table.
pub struct TauRow {
    pub p: u64,
    pub tau: String,
    pub polynomial: String,
}

pub fn tau_rows(results: &[TauResult], sig: usize) -> Vec<TauRow> {
    results
        .iter()
        .map(|r| TauRow {
            p: r.p,
            tau: format_sig(r.tau, sig),
            polynomial: r.witness.to_string(),
        })
        .collect()
}

pub fn emit_tau_table(results: &[TauResult], format: TableFormat, sig: usize) -> String {
    let rows = tau_rows(results, sig);
    match format {
        TableFormat::Csv => {
            let mut out = String::from("p,tau,polynomial\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.p, r.tau, r.polynomial);
            }
            out
        }
        TableFormat::Json => {
            let mut out = String::from("[\n");
            for (i, r) in rows.iter().enumerate() {
                let sep = if i + 1 == rows.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "  {{\"p\": {}, \"tau\": \"{}\", \"polynomial\": \"{}\"}}{sep}",
                    r.p,
                    r.tau,
                    json_escape(&r.polynomial)
                );
            }
            out.push_str("]\n");
            out
        }
        TableFormat::Markdown | TableFormat::Text => {
            let mut out = String::from("| p | tau | polynomial |\n|---|-----|------------|\n");
            for r in &rows {
                let _ = writeln!(out, "| {} | {} | {} |", r.p, r.tau, r.polynomial);
            }
            out
        }
    }
}

pub fn emit_abelian_table(records: &[AbelianRecord], format: TableFormat, sig: usize) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("polynomial,height,modulus,classes\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{},\"{}\"",
                    r.poly,
                    format_sig(r.height, sig),
                    r.conductor,
                    classes_string(r)
                );
            }
            out
        }
        TableFormat::Json => {
            let mut out = String::from("[\n");
            for (i, r) in records.iter().enumerate() {
                let sep = if i + 1 == records.len() { "" } else { "," };
                let classes: Vec<String> = r.classes.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(
                    out,
                    "  {{\"polynomial\": \"{}\", \"height\": \"{}\", \"modulus\": {}, \"classes\": [{}]}}{sep}",
                    json_escape(&r.poly.to_string()),
                    format_sig(r.height, sig),
                    r.conductor,
                    classes.join(", ")
                );
            }
            out.push_str("]\n");
            out
        }
        TableFormat::Markdown => {
            let mut out =
                String::from("| polynomial | height | modulus | classes |\n|---|---|---|---|\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    r.poly,
                    format_sig(r.height, sig),
                    r.conductor,
                    classes_string(r)
                );
            }
            out
        }
        TableFormat::Text => {
            // Aligned columns: polynomial, height, splitting condition.
            let lines: Vec<(String, String, String, String)> = records
                .iter()
                .map(|r| {
                    (
                        r.poly.to_string(),
                        format_sig(r.height, sig),
                        r.conductor.to_string(),
                        classes_string(r),
                    )
                })
                .collect();
            let w_poly = lines.iter().map(|l| l.0.len()).max().unwrap_or(10).max(10);
            let w_height = lines.iter().map(|l| l.1.len()).max().unwrap_or(6).max(6);
            let w_mod = lines.iter().map(|l| l.2.len()).max().unwrap_or(7).max(7);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<w_poly$}  {:>w_height$}  {:>w_mod$}  splits iff p mod modulus in",
                "polynomial", "height", "modulus"
            );
            for (poly, height, modulus, classes) in &lines {
                let _ = writeln!(
                    out,
                    "{poly:<w_poly$}  {height:>w_height$}  {modulus:>w_mod$}  {classes}"
                );
            }
            out
        }
    }
}

fn classes_string(r: &AbelianRecord) -> String {
    let v: Vec<String> = r.classes.iter().map(|c| c.to_string()).collect();
    v.join(" ")
}

fn json_escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            c => vec![c],
        })
        .collect()
}
