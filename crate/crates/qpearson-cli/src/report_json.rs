//! JSON rendering of suite results and band dumps.
//!
//! Reports are deterministic for a fixed config and seed; the timestamp
//! field (unix seconds) is the only run-dependent piece and is dropped
//! under `--no-timestamps` so byte-level golden comparison works.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use qpearson::linform::LinearForm;
use qpearson::report::{Check, CheckStatus, SuiteResult};
use qpearson::structure::BandRelation;

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> CheckJson {
        CheckJson {
            name: c.name.clone(),
            status: match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
            },
            n_range: c.n_range,
            first_failure: c.first_failure,
            witness: c.witness.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ReportJson {
    pub suite: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckJson>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<Vec<BandRowJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<BTreeMap<String, String>>,
}

#[derive(Serialize)]
pub struct BandRowJson {
    pub n: usize,
    pub offset: i64,
    pub value: String,
}

#[derive(Serialize)]
pub struct ClassJson {
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_naive: Option<i64>,
    pub r_common: usize,
    pub class: usize,
    pub verdict: String,
}

impl ReportJson {
    pub fn new(suite: &SuiteResult, config: BTreeMap<String, String>, stamp: bool) -> ReportJson {
        ReportJson {
            suite: suite.suite.clone(),
            config,
            checks: suite.checks.iter().map(CheckJson::from).collect(),
            pass: suite.pass(),
            timestamp: stamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
            band: None,
            class: None,
            moments: None,
            extra: None,
        }
    }

    pub fn with_band(mut self, band: &BandRelation) -> ReportJson {
        let rows = band
            .entries()
            .map(|(n, j, v)| BandRowJson {
                n,
                offset: j as i64 - n as i64,
                value: format!("{v}"),
            })
            .collect();
        self.band = Some(rows);
        self
    }

    pub fn with_moments(mut self, u: &LinearForm) -> ReportJson {
        self.moments = Some(u.moments().iter().map(|m| format!("{m}")).collect());
        self
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
