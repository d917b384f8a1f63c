//! Suite reports.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SemiDecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SemiDecided => "SEMI",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    /// Wall-clock time; only recorded on request so reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// The outcome of one verification suite. Checks are kept sorted by name.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {}): {}", self.suite, self.seed, if self.passed { "ok" } else { "FAILED" })?;
        for c in &self.checks {
            write!(f, "  {} {}", c.status, c.name)?;
            if let Some(ms) = c.runtime_ms {
                write!(f, " [{ms} ms]")?;
            }
            if let (Status::Fail, Some(w)) = (c.status, &c.witness) {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// What a single check produced.
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { status: Status::Pass, witness: None }
    }

    pub fn fail(witness: impl Serialize) -> Self {
        Outcome { status: Status::Fail, witness: Some(serde_json::to_value(witness).unwrap_or(Value::Null)) }
    }

    pub fn semi(bound: usize) -> Self {
        Outcome { status: Status::SemiDecided, witness: Some(serde_json::json!({ "bound": bound })) }
    }

    /// Passes when `ok`, otherwise fails with `witness`.
    pub fn check(ok: bool, witness: impl Serialize) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(witness)
        }
    }
}

/// Collects checks, timing each one.
pub struct SuiteBuilder {
    suite: String,
    seed: u64,
    timings: bool,
    checks: Vec<CheckReport>,
}

impl SuiteBuilder {
    pub fn new(suite: &str, seed: u64, timings: bool) -> Self {
        SuiteBuilder { suite: suite.to_string(), seed, timings, checks: Vec::new() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> scx_core::Result<Outcome>) {
        let start = Instant::now();
        let out = f().unwrap_or_else(|e| Outcome::fail(serde_json::json!({ "error": e.to_string() })));
        let runtime_ms = self.timings.then(|| start.elapsed().as_millis());
        self.checks.push(CheckReport { name: name.into(), status: out.status, runtime_ms, witness: out.witness });
    }

    pub fn finish(mut self) -> SuiteReport {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = self.checks.iter().all(|c| c.status != Status::Fail);
        SuiteReport { suite: self.suite, seed: self.seed, passed, checks: self.checks }
    }
}
