//! Verdict records shared by every verifier and by the command-line reports.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, verdict: Verdict) -> Check {
        Check { id: id.into(), verdict, witness: None, timing_ms: None }
    }

    pub fn pass(id: impl Into<String>) -> Check {
        Check::new(id, Verdict::Pass)
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Check {
        Check { witness: Some(witness.into()), ..Check::new(id, Verdict::Fail) }
    }

    pub fn from_bool(id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Check {
        if ok {
            Check::pass(id)
        } else {
            Check::fail(id, witness())
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }
}

/// A list of checks. Passes when nothing failed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every id in `other` before appending it.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }
}
