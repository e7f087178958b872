use serde::Serialize;

use super::claims::{
    block_generation_exhaustive, conductor_cap, degree_bound_claim, disc_window, fontaine_cap_claim, scenario_claim,
    setting, table_claims, tame_bound_claim, tame_chain_erratum, wild_different_exponent, wild_group_orders, K10,
};
use super::AuditInputs;
use crate::cft::{
    golden_unit_image, prime_display_checks, sextic_unit_images, two_splits_in_k, unramified_verdict, PRINTED_TABLE,
};
use crate::galmod::{prank_bound, weil_violation, Branch};
use crate::groupcheck::{
    extension_commutator, order125_verdict, order12_abelianization, order27_derived, order50_extensions,
    small_aut_coprime, unipotent_pair,
};
use crate::verdict::Verdict;
use crate::{Error, Result};

/// Flags accepted by `check`; each verifier reads the ones it needs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckArgs {
    pub n: Option<u64>,
    pub l: Option<u64>,
    pub q: Option<u64>,
    pub power: Option<u64>,
    pub g: Option<u64>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub dual: Option<u64>,
    pub branch: Option<String>,
}

impl CheckArgs {
    fn level(&self) -> u64 {
        self.n.unwrap_or(6)
    }
}

type Runner = fn(&CheckArgs, &AuditInputs) -> Result<Vec<Verdict>>;

pub(super) struct Entry {
    pub id: &'static str,
    pub needs_fixtures: bool,
    pub run: Runner,
}

const fn entry(id: &'static str, needs_fixtures: bool, run: Runner) -> Entry {
    Entry { id, needs_fixtures, run }
}

static REGISTRY: &[Entry] = &[
    entry("fontaine-cap", false, |a, _| Ok(vec![fontaine_cap_claim(&setting(a.level())?)])),
    entry("degree-bound", false, |a, i| Ok(vec![degree_bound_claim(&setting(a.level())?, &i.table, false)])),
    entry("tame-degree-bound", false, |a, i| Ok(vec![tame_bound_claim(&setting(a.level())?, &i.table)])),
    entry("tame-chain-printed", false, |_, _| Ok(vec![tame_chain_erratum(&setting(6)?)])),
    entry("small-aut-coprime", false, |_, _| Ok(vec![small_aut_coprime()])),
    entry("extension-commutator", false, |_, _| Ok(vec![extension_commutator()])),
    entry("order50-extensions", false, |_, _| Ok(vec![order50_extensions()])),
    entry("order125-survey", false, |_, _| Ok(vec![order125_verdict()])),
    entry("order27-derived", false, |_, _| Ok(vec![order27_derived()])),
    entry("order12-abelianization", false, |_, _| Ok(vec![order12_abelianization().0])),
    entry("unipotent-pair", false, |a, _| Ok(vec![unipotent_pair(a.k.unwrap_or(3))?])),
    entry("wild-group-orders", false, |_, _| Ok(vec![wild_group_orders(3, 16)])),
    entry("wild-different-exponent", false, |_, _| Ok(vec![wild_different_exponent(&setting(6)?)])),
    entry("disc-window", false, |_, i| Ok(vec![disc_window(&setting(10)?, &i.table)])),
    entry("conductor-cap", false, |_, _| Ok(vec![conductor_cap(&setting(10)?)])),
    entry("unramified-criterion", false, |_, _| Ok(vec![unramified_verdict()])),
    entry("prank-bound", false, |a, _| {
        let d = a.d.unwrap_or(2) as u64;
        Ok(vec![prank_bound(a.l.unwrap_or(d), d, Some(a.dual.unwrap_or(d)))])
    }),
    entry("block-generation", false, |a, _| {
        let l = a.l.unwrap_or(5);
        let l = u32::try_from(l).map_err(|_| Error::InvalidArgument(format!("l = {l} is too large")))?;
        Ok(vec![block_generation_exhaustive(l, a.d.unwrap_or(2))])
    }),
    entry("weil", false, |a, _| {
        let (l, q, power, g) = (a.l.unwrap_or(5), a.q.unwrap_or(7), a.power.unwrap_or(4), a.g.unwrap_or(1));
        let w = weil_violation(l, power, q, g)?;
        let summary = format!(
            "{l}^({power}·{g}) {} (1 + √{q})^(4·{g}): ({l}^{} − A)² = {} vs {}·B² = {}",
            if w.violated { "exceeds" } else { "does not exceed" },
            w.a,
            w.lhs,
            q,
            w.rhs
        );
        let violated = w.violated;
        Ok(vec![Verdict::new("weil", "#A(F_q) ≤ (1 + √q)^{2g}").with("check", &w).decide(violated, summary)])
    }),
    entry("scenario", false, |a, _| {
        let branch: Branch = a.branch.as_deref().unwrap_or("toric").parse()?;
        Ok(vec![scenario_claim(a.level(), branch, a.d.unwrap_or(1))])
    }),
    entry("golden-unit-image", true, |_, i| Ok(vec![golden_unit_image(i.fixture_set()?)])),
    entry("sextic-unit-images", true, |_, i| Ok(vec![sextic_unit_images(i.fixture_set()?)])),
    entry("prime-display", true, |_, i| Ok(prime_display_checks(i.fixture_set()?))),
    entry("two-splits-in-k", true, |_, i| Ok(vec![two_splits_in_k(i.fixture_set()?)])),
    entry("hilbert-ray-class", true, |_, i| Ok(table_claims(i.fixture_set()?, &[K10]))),
    entry("table", true, |_, i| {
        let labels: Vec<&str> = PRINTED_TABLE.iter().map(|r| r.label).collect();
        Ok(table_claims(i.fixture_set()?, &labels))
    }),
];

/// Ids accepted by `check`.
pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

pub(super) fn lookup(target: &str) -> Result<&'static Entry> {
    REGISTRY.iter().find(|e| e.id == target).ok_or_else(|| Error::UnknownTarget {
        target: target.to_string(),
        available: check_ids().join(", "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::claims::{F24, H2, SEXTIC};
    use crate::audit::{cmd_check, AuditOptions};
    use crate::verdict::Status;

    #[test]
    fn ids_are_unique_and_fixture_labels_known() {
        let ids = check_ids();
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
        for label in [F24, H2, K10] {
            assert!(PRINTED_TABLE.iter().any(|r| r.label == label));
        }
        assert!(crate::cft::FixtureSet::shipped().unwrap().get(SEXTIC).is_ok());
    }

    #[test]
    fn unknown_target_lists_ids() {
        let err = cmd_check("lemma99", &CheckArgs::default(), &AuditOptions::default()).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("lemma99") && text.contains("unipotent-pair"), "{text}");
    }

    #[test]
    fn weil_at_seven() {
        let args = CheckArgs { l: Some(5), q: Some(7), ..Default::default() };
        let r = cmd_check("weil", &args, &AuditOptions::default()).unwrap();
        assert_eq!(r.claims[0].status, Status::Pass);
        assert_eq!(r.claims[0].quantities["check"]["violated"], serde_json::json!(true));
        let args = CheckArgs { l: Some(2), q: Some(7), ..Default::default() };
        assert_eq!(cmd_check("weil", &args, &AuditOptions::default()).unwrap().exit_code(), super::super::EXIT_FAIL);
    }

    #[test]
    fn unipotent_pair_solution_set() {
        let r = cmd_check("unipotent-pair", &CheckArgs::default(), &AuditOptions::default()).unwrap();
        assert_eq!(r.claims[0].quantities["solutions"], serde_json::json!(["0"]));
        assert_eq!(r.exit_code(), 0);
    }
}
