//! Structured verdicts shared by every checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "FIXTURE-CONDITIONAL")]
    FixtureConditional,
    #[serde(rename = "ASSUMED")]
    Assumed,
    #[serde(rename = "ERRATUM-NOTED")]
    ErratumNoted,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::FixtureConditional => "FIXTURE-CONDITIONAL",
            Status::Assumed => "ASSUMED",
            Status::ErratumNoted => "ERRATUM-NOTED",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// One checked claim: what was asserted, the exact data behind the decision,
/// and the outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub id: String,
    /// The statement being replayed, quoted as printed.
    pub reference: String,
    pub status: Status,
    pub quantities: BTreeMap<String, Value>,
    pub summary: String,
}

impl Verdict {
    pub fn new(id: impl Into<String>, reference: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            reference: reference.into(),
            status: Status::Inconclusive,
            quantities: BTreeMap::new(),
            summary: String::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.quantities.insert(
            key.to_string(),
            serde_json::to_value(value).expect("quantities serialize"),
        );
        self
    }

    pub fn status(mut self, status: Status, summary: impl Into<String>) -> Self {
        self.status = status;
        self.summary = summary.into();
        self
    }

    /// `Pass` when `ok`, otherwise `Fail`.
    pub fn decide(self, ok: bool, summary: impl Into<String>) -> Self {
        self.status(if ok { Status::Pass } else { Status::Fail }, summary)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status, self.id, self.summary)
    }
}
