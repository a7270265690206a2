use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::ainfinity::Cohomology;
use crate::error::Error;
use crate::suspension::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl From<&Stage> for Check {
    fn from(s: &Stage) -> Self {
        Check {
            name: s.name.clone(),
            passed: s.passed,
            detail: s.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDim {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub label: String,
    pub by_degree: BTreeMap<i64, usize>,
    pub blocks: Vec<BlockDim>,
}

impl CohomologyTable {
    pub fn new(label: &str, h: &Cohomology) -> Self {
        let blocks = h
            .blocks
            .iter()
            .filter(|b| b.dim > 0)
            .map(|b| BlockDim {
                degree: b.degree,
                source: b.source,
                target: b.target,
                dim: b.dim,
            })
            .collect();
        Self {
            label: label.to_string(),
            by_degree: h.dims_by_degree(),
            blocks,
        }
    }
}

/// Everything a command reports. Apart from `elapsed_ms` the content is a
/// function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cohomology: Vec<CohomologyTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<&'static str>,
    pub elapsed_ms: u128,
}

/// Coarse class of an input error, stable for scripts.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(m) if m.starts_with("malformed") => "malformed-document",
        Error::Input(_) => "input",
        Error::UnknownBasisId(_) | Error::DuplicateBasisId(_) | Error::ObjectOutOfRange { .. } => {
            "basis"
        }
        Error::DegreeMismatch { .. } => "degree-mismatch",
        Error::ArityMismatch { .. } | Error::NotComposable { .. } => "shape",
        Error::FieldMismatch(..) | Error::InvalidPrime(_) | Error::ParseScalar(_) => "field",
        Error::UnitsMissing | Error::InvalidUnits(_) => "units",
        Error::ClosureViolation(_) | Error::NotSubBimodule(_) => "closure",
        Error::RelationsFail(_) => "relations",
        Error::EmptyComplex | Error::NotSubcomplex(_) | Error::InvalidComplex(_) => "complex",
        _ => "semantic",
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &str, input_digest: String) -> Self {
        Self {
            command: command.to_string(),
            input_digest,
            verdict: Verdict::Pass,
            checks: Vec::new(),
            cohomology: Vec::new(),
            error: None,
            error_kind: None,
            elapsed_ms: 0,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn stages(&mut self, stages: &[Stage]) {
        self.checks.extend(stages.iter().map(Check::from));
    }

    /// Pass iff every check passed; errors stay errors.
    pub fn settle(&mut self) {
        if self.verdict != Verdict::Error {
            self.verdict = if self.checks.iter().all(|c| c.passed) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
        }
    }

    pub fn fail_with(&mut self, error: &Error) {
        self.verdict = Verdict::Error;
        self.error = Some(error.to_string());
        self.error_kind = Some(error_kind(error));
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{mark}  {}\n", c.name));
            } else {
                out.push_str(&format!("{mark}  {} ({})\n", c.name, c.detail));
            }
        }
        for t in &self.cohomology {
            let dims: Vec<String> = t
                .by_degree
                .iter()
                .map(|(d, n)| format!("{d}:{n}"))
                .collect();
            out.push_str(&format!("H*({}) = {{{}}}\n", t.label, dims.join(", ")));
            for b in &t.blocks {
                out.push_str(&format!(
                    "  degree {} hom({}, {}): {}\n",
                    b.degree, b.source, b.target, b.dim
                ));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        };
        out.push_str(&format!(
            "{}: {verdict} [{} ms]\n",
            self.command, self.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_follow_checks() {
        let mut r = Report::new("validate", digest(b""));
        r.check("relations", true, "");
        r.settle();
        assert_eq!(r.verdict, Verdict::Pass);
        r.check("units", false, "missing");
        r.settle();
        assert_eq!(r.verdict.exit_code(), 1);
        r.fail_with(&Error::UnitsMissing);
        r.settle();
        assert_eq!((r.verdict, r.error_kind), (Verdict::Error, Some("units")));
    }

    #[test]
    fn text_form() {
        let mut r = Report::new("verify", String::new());
        r.check("a", true, "");
        r.check("b", false, "why");
        r.settle();
        assert_eq!(r.to_text(), "PASS  a\nFAIL  b (why)\nverify: fail [0 ms]\n");
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn error_kinds() {
        assert_eq!(
            error_kind(&Error::Input("malformed document: x".into())),
            "malformed-document"
        );
        assert_eq!(
            error_kind(&Error::ClosureViolation(String::new())),
            "closure"
        );
        assert_eq!(error_kind(&Error::BaseMismatch), "semantic");
    }
}
