use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
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

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub evidence: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, evidence: Value) -> Self {
        Check { name: name.into(), status: Status::from_bool(ok), evidence }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite_id: String,
    pub status: Status,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteResult {
    pub fn new(suite_id: &str, parameters: BTreeMap<String, String>, checks: Vec<Check>, wall_time: Duration) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        SuiteResult { suite_id: suite_id.to_string(), status, parameters, checks, wall_time }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut v = serde_json::to_value(self).expect("suite results serialize");
        if timings {
            v["wall_time_ms"] = Value::from(self.wall_time.as_millis() as u64);
        }
        serde_json::to_string_pretty(&v).expect("json value serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,status\n");
        for c in &self.checks {
            out.push_str(&format!("{},{},{}\n", csv_field(&self.suite_id), csv_field(&c.name), c.status.as_str()));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
