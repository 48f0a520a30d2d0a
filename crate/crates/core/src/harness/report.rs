//! Experiment reports: the JSON document and its text rendering.
//!
//! The JSON form is the machine schema. Field order is fixed by the
//! struct definitions and cells are sorted, so identical configs give
//! byte-identical documents.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{AdversaryExpect, Expect, Scope};
use crate::adversary::{AdversaryId, Witness};
use crate::evidence::{DataSequence, Informant};
use crate::hypothesis::Hypothesis;
use crate::interaction::HypSequence;
use crate::restrictions::{Certificate, Restriction, Verdict};
use crate::upset::UpSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub tool: String,
    pub version: String,
    pub seeds: Vec<u64>,
    pub horizon: usize,
}

/// The data and conjectures a violated verdict was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTrace {
    pub data: DataSequence,
    pub conjectures: Vec<Hypothesis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub target: String,
    pub set: UpSet,
    pub scope: Scope,
    pub informant: String,
    pub restriction: Restriction,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<CellTrace>,
}

impl Cell {
    /// Re-checks a violation from the embedded trace alone.
    pub fn revalidate(&self) -> bool {
        let Some(trace) = &self.trace else { return self.verdict.satisfied };
        let Ok(informant) = Informant::extending(&trace.data, &self.set) else { return false };
        let p = HypSequence::from_items(trace.conjectures.clone());
        trace.conjectures.len() == trace.data.len() + 1 && self.verdict.revalidate(&p, &informant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryRecord {
    pub id: AdversaryId,
    pub opponent: String,
    pub expect: AdversaryExpect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl AdversaryRecord {
    pub fn as_expected(&self) -> bool {
        match &self.witness {
            Some(w) if self.verified => match self.expect {
                AdversaryExpect::Exhausted => w.is_exhausted(),
                AdversaryExpect::Witness => !w.is_exhausted(),
            },
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub name: String,
    pub learner: Option<String>,
    pub fingerprint: Fingerprint,
    pub expect: Expect,
    pub cells: Vec<Cell>,
    pub adversaries: Vec<AdversaryRecord>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Text,
    Machine,
}

impl Report {
    pub fn violations(&self) -> usize {
        self.cells.iter().filter(|c| !c.verdict.satisfied).count()
    }

    /// 0 when everything came out as expected, 1 when not, 2 on errors.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() || self.adversaries.iter().any(|a| a.error.is_some()) {
            return 2;
        }
        let cells_ok = self.cells.is_empty()
            || match self.expect {
                Expect::Satisfied => self.violations() == 0,
                Expect::Witness => self.violations() > 0,
            };
        if cells_ok && self.adversaries.iter().all(AdversaryRecord::as_expected) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let fp = &self.fingerprint;
        let _ = writeln!(out, "report {} ({} {}, schema {})", self.name, fp.tool, fp.version, self.schema);
        if let Some(l) = &self.learner {
            let _ = writeln!(out, "learner  {l}");
        }
        let seeds: Vec<String> = fp.seeds.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "horizon  {}   seeds [{}]", fp.horizon, seeds.join(", "));
        let _ = writeln!(out, "cells    {}   violations {}", self.cells.len(), self.violations());
        for c in &self.cells {
            let status = if c.verdict.satisfied { "ok" } else { "VIOLATED" };
            let cert = c.verdict.certificate.as_ref().map(ToString::to_string).unwrap_or_default();
            let scope = if c.scope == Scope::GlobalSampled { " [global (sampled)]" } else { "" };
            let _ = writeln!(
                out,
                "  {:<8} {:<9} {} on {}{} via {}  {}",
                c.restriction.id(),
                status,
                cert,
                c.target,
                scope,
                c.informant,
                c.verdict.detail
            );
            if let (Some(trace), Some(cert)) = (&c.trace, &c.verdict.certificate) {
                for i in certificate_indices(cert) {
                    if let Some(h) = trace.conjectures.get(i) {
                        let _ = writeln!(out, "      [{i}] label={} ext={}", h.label(), h.extension());
                    }
                }
            }
        }
        if !self.adversaries.is_empty() {
            let _ = writeln!(out, "adversaries {}", self.adversaries.len());
        }
        for a in &self.adversaries {
            let what = match (&a.witness, &a.error) {
                (_, Some(e)) => format!("error: {e}"),
                (Some(w), None) => w.summary(),
                (None, None) => "no result".to_string(),
            };
            let mark = if a.as_expected() { "as expected" } else { "UNEXPECTED" };
            let verified = if a.verified { "verified" } else { "unverified" };
            let _ = writeln!(out, "  {} vs {}: {what} ({verified}, {mark})", a.id, a.opponent);
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(out, "exit {}", self.exit_code());
        out
    }
}

fn certificate_indices(cert: &Certificate) -> Vec<usize> {
    match *cert {
        Certificate::Index { n, .. } | Certificate::Wrong { n } => vec![n],
        Certificate::Pair { s, t, .. } => vec![s, t],
        Certificate::LabelChange { n } => vec![n.saturating_sub(1), n],
        Certificate::StableFrom { .. } | Certificate::EmptyHorizon => Vec::new(),
    }
}

pub fn render_report(report: &Report, mode: RenderMode) -> String {
    match mode {
        RenderMode::Text => report.render_text(),
        RenderMode::Machine => report.to_json(),
    }
}
