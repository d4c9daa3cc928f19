//! Command reports, rendered either as text or as JSON with the same content.

use std::fmt::Write as _;

use halg_core::superalgebra::{CheckReport, Witness};
use serde::Serialize;

use crate::spec::SCHEMA;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    pub axiom: String,
    pub args: Vec<String>,
    /// `(basis element or monomial label, coefficient)`.
    pub residual: Vec<(String, String)>,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        WitnessOut {
            axiom: w.axiom.clone(),
            args: w.args.clone(),
            residual: w
                .residual
                .iter()
                .map(|(b, c)| (b.clone(), c.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictOut {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub verdict: VerdictOut,
    pub witnesses: Vec<WitnessOut>,
}

impl Section {
    pub fn from_report(name: &str, r: &CheckReport) -> Self {
        Section {
            name: name.into(),
            verdict: if r.passed() {
                VerdictOut::Pass
            } else {
                VerdictOut::Fail
            },
            witnesses: r.witnesses().iter().map(WitnessOut::from).collect(),
        }
    }
}

/// A named table of `(entry, value)` lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solutions {
    pub dimension: usize,
    pub unknowns: Vec<String>,
    /// One basis vector per row, aligned with `unknowns`.
    pub basis: Vec<Vec<String>>,
    /// Each basis vector rendered as a table.
    pub rendered: Vec<Table>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub verdict: Option<VerdictOut>,
    pub checks: Vec<Section>,
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Solutions>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn check(&mut self, name: &str, r: &CheckReport) {
        self.checks.push(Section::from_report(name, r));
    }

    pub fn table(&mut self, name: impl Into<String>, entries: Vec<(String, String)>) {
        self.tables.push(Table {
            name: name.into(),
            entries,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Fail if any section failed, unless a verdict was set explicitly.
    pub fn settle(&mut self) {
        if self.verdict.is_none() {
            let failed = self.checks.iter().any(|c| c.verdict == VerdictOut::Fail);
            self.verdict = Some(if failed {
                VerdictOut::Fail
            } else {
                VerdictOut::Pass
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Some(VerdictOut::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Some(VerdictOut::Pass) => "PASS",
            Some(VerdictOut::Fail) => "FAIL",
            None => "-",
        };
        let _ = writeln!(out, "{}: {verdict}", self.command);
        for c in &self.checks {
            let v = if c.verdict == VerdictOut::Pass {
                "pass"
            } else {
                "fail"
            };
            let _ = writeln!(out, "  [{v}] {}", c.name);
            for w in &c.witnesses {
                let res: Vec<String> = w
                    .residual
                    .iter()
                    .map(|(b, k)| format!("({k})·{b}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "    {} at ({}): residual {}",
                    w.axiom,
                    w.args.join(", "),
                    res.join(" + ")
                );
            }
        }
        for t in &self.tables {
            write_table(&mut out, t, "  ");
        }
        if let Some(s) = &self.solutions {
            let _ = writeln!(out, "  solution dimension: {}", s.dimension);
            for (k, t) in s.rendered.iter().enumerate() {
                let _ = writeln!(out, "  basis vector {}:", k + 1);
                write_table(&mut out, t, "    ");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "  elapsed: {} ms", self.elapsed_ms);
        out
    }
}

fn write_table(out: &mut String, t: &Table, indent: &str) {
    let _ = writeln!(out, "{indent}{}:", t.name);
    for (k, v) in &t.entries {
        let _ = writeln!(out, "{indent}  {k} = {v}");
    }
}
