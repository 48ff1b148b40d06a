use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Manifest;

/// One checked identity with both sides in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub internal: bool,
}

impl IdentityCheck {
    pub fn compared(identity: &str, ell: Option<u64>, lhs: String, rhs: String, passed: bool) -> Self {
        IdentityCheck {
            identity: identity.to_string(),
            ell,
            passed,
            lhs,
            rhs,
            error: None,
            internal: false,
        }
    }

    pub fn failed(identity: &str, ell: Option<u64>, err: &Error) -> Self {
        IdentityCheck {
            identity: identity.to_string(),
            ell,
            passed: false,
            lhs: String::new(),
            rhs: String::new(),
            error: Some(err.to_string()),
            internal: err.is_internal(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub parameters: Parameters,
    pub conventions: Vec<String>,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
    pub manifest: Manifest,
    /// Wall-clock seconds per stage; omitted unless requested so that
    /// reports are reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn has_internal_error(&self) -> bool {
        self.checks.iter().any(|c| c.internal)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let Parameters { p, q, n } = self.parameters;
        let mut out = String::new();
        writeln!(out, "p = {p}, q = {q}, N = {n}").unwrap();
        let name_width = self.checks.iter().map(|c| c.identity.len()).max().unwrap_or(8).max(8);
        writeln!(out, "{:<name_width$}  {:>3}  {:<4}  lhs | rhs", "identity", "ell", "ok").unwrap();
        for c in &self.checks {
            let ell = c.ell.map_or_else(|| "-".to_string(), |l| l.to_string());
            let status = if c.passed { "pass" } else { "FAIL" };
            match &c.error {
                Some(e) => writeln!(out, "{:<name_width$}  {ell:>3}  {status:<4}  error: {e}", c.identity),
                None => writeln!(out, "{:<name_width$}  {ell:>3}  {status:<4}  {} | {}", c.identity, c.lhs, c.rhs),
            }
            .unwrap();
        }
        writeln!(out, "overall: {}", if self.passed { "pass" } else { "FAIL" }).unwrap();
        if let Some(t) = &self.timings {
            for (stage, secs) in t {
                writeln!(out, "  {stage}: {secs:.3}s").unwrap();
            }
        }
        out
    }
}
