//! Claim assembly for the full replay at `N ∈ {6, 10}`, the registry of
//! single verifiers, and the report with its exit-code contract.

mod claims;
mod registry;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cft::{FixtureSet, SHIPPED_FIELDS};
use crate::discbound::OdlyzkoTable;
use crate::verdict::{Status, Verdict};
use crate::{Error, Result};

pub use claims::{
    audit_claims, block_generation_exhaustive, conductor_cap, setting, unconditional_degree_bound, wild_group_orders,
    Setting,
};
pub use registry::{check_ids, CheckArgs};

/// Environment variable consulted when `--fixtures` is absent.
pub const FIXTURES_ENV: &str = "AUDIT_FIXTURES";

/// Exit codes of the command-line tool.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONDITIONAL: i32 = 10;
pub const EXIT_FAIL: i32 = 20;
pub const EXIT_CONFIG: i32 = 30;

#[derive(Clone, Debug, Default)]
pub struct AuditOptions {
    pub fixtures: Option<PathBuf>,
    pub odlyzko: Option<PathBuf>,
    pub without_grh: bool,
}

/// `--fixtures` wins over the environment; `None` means the shipped copy.
pub fn resolve_fixture_path(flag: Option<PathBuf>, env: Option<OsString>) -> Option<PathBuf> {
    flag.or_else(|| env.filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Fixtures and the discriminant table, with the bytes they came from.
#[derive(Clone, Debug)]
pub struct AuditInputs {
    pub fixtures: Option<FixtureSet>,
    pub table: OdlyzkoTable,
    fixtures_text: String,
    fixtures_source: String,
}

impl AuditInputs {
    /// Reads and verifies the table; fixtures are parsed only when
    /// `with_fixtures` is set.
    pub fn load(opts: &AuditOptions, with_fixtures: bool) -> Result<Self> {
        let table = match &opts.odlyzko {
            Some(p) => OdlyzkoTable::load(p).map_err(|e| config_error(p, e))?,
            None => OdlyzkoTable::default(),
        };
        let (fixtures_text, fixtures_source) = match &opts.fixtures {
            Some(p) => (
                std::fs::read_to_string(p).map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?,
                p.display().to_string(),
            ),
            None => (SHIPPED_FIELDS.to_string(), "shipped".to_string()),
        };
        let fixtures = if with_fixtures { Some(FixtureSet::parse(&fixtures_text)?) } else { None };
        Ok(Self { fixtures, table, fixtures_text, fixtures_source })
    }

    pub fn fixture_set(&self) -> Result<&FixtureSet> {
        self.fixtures.as_ref().ok_or_else(|| Error::Fixture("fixtures were not loaded".into()))
    }

    /// SHA-256 over the fixture bytes, the table rows and the options.
    pub fn digest(&self, options: &str) -> String {
        let mut h = Sha256::new();
        h.update(self.fixtures_text.as_bytes());
        h.update([0]);
        for (d, b) in self.table.rows() {
            h.update(format!("{d} {b}\n").as_bytes());
        }
        h.update([0]);
        h.update(options.as_bytes());
        hex::encode(h.finalize())
    }
}

fn config_error(p: &Path, e: Error) -> Error {
    Error::InvalidArgument(format!("{}: {e}", p.display()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Overall {
    #[serde(rename = "PASS")]
    Pass,
    /// Nothing failed, but some claim rests on fixtures or assumptions.
    #[serde(rename = "CONDITIONAL")]
    Conditional,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Overall {
    pub fn of(claims: &[Verdict]) -> Self {
        if claims.iter().any(|c| c.status == Status::Fail) {
            Overall::Fail
        } else if claims
            .iter()
            .any(|c| matches!(c.status, Status::FixtureConditional | Status::Assumed | Status::Inconclusive))
        {
            Overall::Conditional
        } else {
            Overall::Pass
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Overall::Pass => EXIT_PASS,
            Overall::Conditional => EXIT_CONDITIONAL,
            Overall::Fail => EXIT_FAIL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub tool_version: String,
    pub command: String,
    pub fixtures: String,
    pub config_digest: String,
    pub overall: Overall,
    pub claims: Vec<Verdict>,
}

impl AuditReport {
    fn new(command: String, inputs: &AuditInputs, options: &str, claims: Vec<Verdict>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        if let Some(dup) = claims.iter().find(|c| !seen.insert(c.id.as_str())) {
            return Err(Error::InvalidArgument(format!("duplicate claim id {}", dup.id)));
        }
        Ok(Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            fixtures: inputs.fixtures_source.clone(),
            config_digest: inputs.digest(options),
            overall: Overall::of(&claims),
            claims,
        })
    }

    pub fn exit_code(&self) -> i32 {
        self.overall.exit_code()
    }

    pub fn claim(&self, id: &str) -> Option<&Verdict> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Canonical JSON: stable key order, no timestamps.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per claim followed by the overall status.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {} ({} claims, digest {})\n",
            serde_json::to_value(self.overall).expect("serializes").as_str().unwrap_or("?"),
            self.claims.len(),
            &self.config_digest[..16]
        ));
        out
    }
}

/// The full replay for `n ∈ {6, 10}`.
pub fn cmd_audit(n: u64, opts: &AuditOptions) -> Result<AuditReport> {
    if n != 6 && n != 10 {
        return Err(Error::InvalidArgument(format!("N must be 6 or 10, got {n}")));
    }
    let inputs = AuditInputs::load(opts, true)?;
    let claims = audit_claims(n, &inputs, opts.without_grh)?;
    let command = format!("audit {n}{}", if opts.without_grh { " --without-grh" } else { "" });
    AuditReport::new(command.clone(), &inputs, &command, claims)
}

/// A single verifier from the registry.
pub fn cmd_check(target: &str, args: &CheckArgs, opts: &AuditOptions) -> Result<AuditReport> {
    let entry = registry::lookup(target)?;
    let inputs = AuditInputs::load(opts, entry.needs_fixtures)?;
    let claims = (entry.run)(args, &inputs)?;
    let options = serde_json::to_string(args)?;
    AuditReport::new(format!("check {target}"), &inputs, &options, claims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_path_precedence() {
        let flag = Some(PathBuf::from("a.json"));
        let env = Some(OsString::from("b.json"));
        assert_eq!(resolve_fixture_path(flag.clone(), env.clone()), flag);
        assert_eq!(resolve_fixture_path(None, env), Some(PathBuf::from("b.json")));
        assert_eq!(resolve_fixture_path(None, Some(OsString::new())), None);
        assert_eq!(resolve_fixture_path(None, None), None);
    }

    #[test]
    fn overall_status() {
        let v = |s| Verdict::new("x", "").status(s, "");
        assert_eq!(Overall::of(&[v(Status::Pass), v(Status::ErratumNoted)]), Overall::Pass);
        assert_eq!(Overall::of(&[v(Status::Pass), v(Status::Assumed)]), Overall::Conditional);
        assert_eq!(Overall::of(&[v(Status::FixtureConditional), v(Status::Fail)]), Overall::Fail);
        assert_eq!(Overall::Conditional.exit_code(), EXIT_CONDITIONAL);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let inputs = AuditInputs::load(&AuditOptions::default(), false).unwrap();
        let v = Verdict::new("x", "").status(Status::Pass, "");
        assert!(AuditReport::new("t".into(), &inputs, "", vec![v.clone(), v]).is_err());
    }

    #[test]
    fn digest_depends_on_options_and_table() {
        let inputs = AuditInputs::load(&AuditOptions::default(), false).unwrap();
        assert_ne!(inputs.digest("a"), inputs.digest("b"));
        let mut other = inputs.clone();
        other.table = other.table.with_rows(&[(5000, crate::exactnum::rat(40, 1))]).unwrap();
        assert_ne!(inputs.digest("a"), other.digest("a"));
    }
}
