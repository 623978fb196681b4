//! Run configuration and the JSON report with its determinism hash.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Witness-degree budget `N` for basis sweeps.
    pub degree: u32,
    pub trials: usize,
    pub tolerance: f64,
    pub cap: u32,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            degree: 8,
            trials: 200,
            tolerance: 1e-10,
            cap: 4096,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("degree budget {0} is above the supported maximum of 64")]
    Degree(u32),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(ConfigError::Tolerance(self.tolerance));
        }
        if self.degree > 64 {
            return Err(ConfigError::Degree(self.degree));
        }
        Ok(())
    }

    pub fn echo(&self) -> Value {
        json!({
            "seed": self.seed,
            "degree": self.degree,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "cap": self.cap,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub inputs: Value,
    pub detail: Value,
    pub wall_ms: f64,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, status: Status, inputs: Value, detail: Value) -> Self {
        CheckRecord {
            id: id.into(),
            status,
            inputs,
            detail,
            wall_ms: 0.0,
        }
    }

    pub fn timed(mut self, wall_ms: f64) -> Self {
        self.wall_ms = wall_ms;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: &RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            suite: suite.into(),
            config: config.clone(),
            checks,
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    /// Exit contract: failures always fail; inconclusive results fail only
    /// under `strict`.
    pub fn succeeded(&self, strict: bool) -> bool {
        let s = self.summary();
        s.fail == 0 && (!strict || s.inconclusive == 0)
    }

    /// Report body without timing.
    pub fn body(&self) -> Value {
        let s = self.summary();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "status": c.status.name(),
                    "inputs": c.inputs,
                    "detail": c.detail,
                })
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "suite": self.suite,
            "config": self.config.echo(),
            "summary": {"pass": s.pass, "fail": s.fail, "inconclusive": s.inconclusive},
            "checks": checks,
        })
    }

    /// SHA-256 of the canonical body text.
    pub fn determinism_hash(&self) -> String {
        let text = serde_json::to_string(&self.body()).expect("serializable");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut out = match self.body() {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        out.insert("determinism_hash".into(), json!(self.determinism_hash()));
        let timing: BTreeMap<&str, f64> =
            self.checks.iter().map(|c| (c.id.as_str(), c.wall_ms)).collect();
        out.insert(
            "timing".into(),
            json!({
                "total_ms": self.checks.iter().map(|c| c.wall_ms).sum::<f64>(),
                "checks_ms": timing,
            }),
        );
        Value::Object(out)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,status,detail\n");
        for c in &self.checks {
            let detail = serde_json::to_string(&c.detail).expect("serializable");
            out.push_str(&format!("{},{},\"{}\"\n", c.id, c.status.name(), detail.replace('"', "\"\"")));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let s = self.summary();
        let mut out = format!(
            "suite {}: {} pass, {} fail, {} inconclusive\n",
            self.suite, s.pass, s.fail, s.inconclusive
        );
        for c in &self.checks {
            if c.status != Status::Pass {
                out.push_str(&format!("  {} {}: {}\n", c.status.name(), c.id, c.detail));
            }
        }
        out.push_str(&format!("hash {}\n", self.determinism_hash()));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}
