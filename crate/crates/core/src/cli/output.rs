use std::fmt::Write as _;
use std::io::Write as _;

use serde::Serialize;

use crate::algebra::LaurentTail;
use crate::error::Result;

use super::{Format, RunConfig};

/// A command result in the three output formats.
pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

pub fn emit<R: Report>(config: &RunConfig, report: &R) -> Result<()> {
    let body = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Text => report.text(),
        Format::Csv => report.csv(),
    };
    match &config.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Certified nonzero terms as `[degree, "p/q"]` pairs, highest first.
pub fn tail_terms(tail: &LaurentTail) -> Vec<(i32, String)> {
    let mut terms: Vec<(i32, String)> = tail.exact_terms().into_iter().map(|(d, c)| (d, c.to_string())).collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.0));
    terms
}

/// `c1*u^d1 + … + O(u^k)` from certified terms.
pub fn tail_text(terms: &[(i32, String)], exact_above: i32) -> String {
    let mut out = String::new();
    for (deg, c) in terms {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match deg {
            0 => out.push_str(c),
            _ => {
                let _ = write!(out, "({c})*u^{deg}");
            }
        }
    }
    if !out.is_empty() {
        out.push_str(" + ");
    }
    let _ = write!(out, "O(u^{exact_above})");
    out
}
