//! Structured report objects shared by the library and the CLI.
//!
//! Every CLI subcommand builds one of these and renders it either as JSON
//! (stable field order, no floats, no timestamps — byte-identical across
//! runs with the same seed) or as derived human-readable text.

use serde::Serialize;

use crate::audit::{Certificate, LatticeViolation};

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub method: String,
    /// `refuted`, `witnessed`, `inconclusive`, `pass`, `fail`
    pub verdict: String,
    pub certificates: Vec<Certificate>,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub violations: Vec<LatticeViolation>,
    pub finite: bool,
    pub cells_checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub summary: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GalleryReport {
    pub cases: Vec<CaseReport>,
}

impl GalleryReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization")
}
