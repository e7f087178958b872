//! Finite groups as Cayley tables, a catalog of every group of the orders
//! used in the argument, and exhaustive verifiers for the group-theoretic
//! steps.

mod catalog;
mod group;
mod matrix;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use catalog::{
    a4, catalog, cyclic, dicyclic, dihedral, direct_product, heisenberg, metacyclic, permutation_group, product_of,
    s4, semidirect, sl2_f3, supported_orders,
};
pub use group::{FiniteGroup, GroupHom, GroupInvariants, Subset, MAX_ORDER};
pub use matrix::{Truncated, TruncatedPolyMatrix};

use crate::discbound::WildCaseFacts;
use crate::exactnum::factor_u64;
use crate::verdict::{Status, Verdict};
use crate::{Error, Result};

/// `|Aut(G)|` by generator-image enumeration.
pub fn automorphism_count(g: &FiniteGroup) -> u64 {
    g.automorphisms().len() as u64
}

fn is_p_group(n: u64, p: u64) -> bool {
    factor_u64(n).iter().all(|(q, _)| *q == p)
}

#[derive(Clone, Debug, Serialize)]
pub struct AutCount {
    pub group: String,
    pub order: usize,
    pub automorphisms: u64,
}

/// Every group of order 2..=9 has automorphism group of order prime to 5,
/// so a group of order below 10 admits no non-trivial action of `Z/5`.
pub fn small_aut_coprime() -> Verdict {
    let mut counts = Vec::new();
    for n in 2..=9 {
        for g in catalog(n).expect("orders 2..9 are catalogued") {
            counts.push(AutCount { group: g.label().to_string(), order: n, automorphisms: automorphism_count(&g) });
        }
    }
    let bad: Vec<&AutCount> = counts.iter().filter(|c| c.automorphisms % 5 == 0).collect();
    let summary = if bad.is_empty() {
        format!("all {} groups of order 2..9 have |Aut| prime to 5", counts.len())
    } else {
        format!("|Aut| divisible by 5 for {:?}", bad.iter().map(|c| &c.group).collect::<Vec<_>>())
    };
    Verdict::new(
        "small-aut-coprime",
        "for all groups G' of order less than 10, |Aut(G')| is coprime to 5",
    )
    .with("counts", &counts)
    .decide(bad.is_empty(), summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub group: String,
    pub order: usize,
    pub sylow5_count: usize,
    pub sylow5_normal: bool,
    pub order5_elements_in_sylow: bool,
    pub automorphisms: usize,
    pub order5_automorphisms: usize,
    pub displacement_in_sylow: bool,
    pub quotient_order: usize,
    pub quotient_aut: u64,
    pub ok: bool,
}

/// For `H` of order 10, 15 or 20: the 5-Sylow `S` is normal, every
/// automorphism `σ` with `σ⁵ = 1` satisfies `σ(h)h⁻¹ ∈ S`, and `|Aut(H/S)|`
/// is prime to 5. Any extension `1 → H → G → Z/5 → 1` then has `[G,G] ⊆ S`,
/// so `G^ab` is not a 5-group.
pub fn extension_commutator_report(h: &FiniteGroup) -> Result<ExtensionReport> {
    let n = h.order();
    if ![10, 15, 20].contains(&n) {
        return Err(Error::InvalidArgument(format!("order {n} is not 10, 15 or 20")));
    }
    let sylows: Vec<Subset> = h.subgroups().into_iter().filter(|s| s.count_ones() == 5).collect();
    let s = sylows[0];
    let normal = (0..n).all(|g| h.elements(s).iter().all(|&x| s >> h.conjugate(g, x) & 1 == 1));
    let order5_in = (0..n).filter(|&x| h.element_order(x) == 5).all(|x| s >> x & 1 == 1);
    let autos = h.automorphisms();
    let order5: Vec<&Vec<usize>> = autos
        .iter()
        .filter(|sigma| (0..n).all(|x| (0..5).fold(x, |y, _| sigma[y]) == x))
        .collect();
    let displaced = order5
        .iter()
        .all(|sigma| (0..n).all(|x| s >> h.mul(sigma[x], h.inv(x)) & 1 == 1));
    let (q, _) = h.quotient(s)?;
    let qa = automorphism_count(&q);
    let ok = sylows.len() == 1 && normal && order5_in && displaced && !qa.is_multiple_of(5);
    Ok(ExtensionReport {
        group: h.label().to_string(),
        order: n,
        sylow5_count: sylows.len(),
        sylow5_normal: normal,
        order5_elements_in_sylow: order5_in,
        automorphisms: autos.len(),
        order5_automorphisms: order5.len(),
        displacement_in_sylow: displaced,
        quotient_order: q.order(),
        quotient_aut: qa,
        ok,
    })
}

pub fn extension_commutator() -> Verdict {
    let reports: Vec<ExtensionReport> = [10, 15, 20]
        .iter()
        .flat_map(|&n| catalog(n).expect("catalogued"))
        .map(|h| extension_commutator_report(&h).expect("order checked"))
        .collect();
    let ok = reports.iter().all(|r| r.ok);
    let v = Verdict::new(
        "extension-commutator",
        "Let H be a group of order 10, 15 or 20. Let G be an extension of Z/5Z by H. Then G^ab is not a 5-group.",
    )
    .with("groups", &reports);
    let summary = format!(
        "{} groups H checked; 5-Sylow normal and σ(h)h⁻¹ in it for every σ with σ⁵ = 1: {}",
        reports.len(),
        if ok { "yes" } else { "no" }
    );
    v.decide(ok, summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct Order50Entry {
    pub group: String,
    pub normal_order10: usize,
    pub abelianization: Vec<u64>,
}

/// Direct check on every group of order 50: those containing a normal
/// subgroup of order 10 (hence extensions of `Z/5` by it) have
/// abelianization that is not a 5-group.
pub fn order50_extensions() -> Verdict {
    let mut entries = Vec::new();
    for g in catalog(50).expect("order 50 catalogued") {
        let k = g.normal_subgroups().iter().filter(|s| s.count_ones() == 10).count();
        entries.push(Order50Entry { group: g.label().to_string(), normal_order10: k, abelianization: g.abelianization() });
    }
    let ext: Vec<&Order50Entry> = entries.iter().filter(|e| e.normal_order10 > 0).collect();
    let ok = !ext.is_empty()
        && ext.iter().all(|e| !is_p_group(e.abelianization.iter().product(), 5));
    let summary = format!(
        "{} of 5 groups of order 50 are such extensions; none has a 5-group abelianization",
        ext.len()
    );
    Verdict::new("order50-extensions", "G^ab is not a 5-group (|H| = 10 instances)")
        .with("groups", &entries)
        .decide(ok, summary)
}

/// Which conditions on `⟨σ, τ⟩` to impose in [`unipotent_pair_solutions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairConditions {
    pub order_divides_27: bool,
    pub commutator_cubed: bool,
    pub commutator_central: bool,
}

impl PairConditions {
    pub const ALL: Self = Self { order_divides_27: true, commutator_cubed: true, commutator_central: true };
    pub const CUBE_ONLY: Self = Self { order_divides_27: false, commutator_cubed: true, commutator_central: false };
}

/// Values `v ∈ F_3[a]/(a^k)` for which `σ = (1 v; 0 1)` and `τ = (1 0; 1 1)`
/// satisfy the selected conditions.
pub fn unipotent_pair_solutions(k: usize, cond: PairConditions) -> Result<Vec<Truncated>> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..=4")));
    }
    let tau = TruncatedPolyMatrix::lower_one(k);
    let id = TruncatedPolyMatrix::identity(k);
    let mut out = Vec::new();
    for v in Truncated::all(k) {
        let sigma = TruncatedPolyMatrix::upper(&v);
        let c = sigma.mul(&tau).mul(&sigma.adjugate()).mul(&tau.adjugate());
        if cond.commutator_cubed && c.pow(3) != id {
            continue;
        }
        if cond.commutator_central && (c.mul(&sigma) != sigma.mul(&c) || c.mul(&tau) != tau.mul(&c)) {
            continue;
        }
        if cond.order_divides_27 {
            let g = FiniteGroup::generate("⟨σ,τ⟩", id.clone(), &[sigma.clone(), tau.clone()], |a, b| a.mul(b), 27)?;
            match g {
                Some((g, _)) if 27 % g.order() == 0 => {}
                _ => continue,
            }
        }
        out.push(v);
    }
    Ok(out)
}

pub fn unipotent_pair(k: usize) -> Result<Verdict> {
    let sols = unipotent_pair_solutions(k, PairConditions::ALL)?;
    let cube = unipotent_pair_solutions(k, PairConditions::CUBE_ONLY)?;
    let ok = sols.len() == 1 && sols[0].is_zero();
    let show = |v: &[Truncated]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(Verdict::new(
        "unipotent-pair",
        "M ⊆ GL_2(F_3[a]/I) of order 27 containing (1 a; 0 1) and (1 0; 1 1) forces a = 0",
    )
    .with("k", k)
    .with("solutions", show(&sols))
    .with("commutator_cube_trivial", show(&cube))
    .decide(ok, format!("over F_3[a]/(a^{k}) the only admissible value is {}", show(&sols).join(", "))))
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelOption {
    /// Size of `ker φ`.
    pub kernel: Vec<usize>,
    /// Index-5 subgroups containing `ker φ` (one per `ψ` up to scaling).
    pub lines: usize,
    /// Those isomorphic to `C5 × C5`.
    pub elementary_lines: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyEntry {
    pub group: String,
    pub surjects_onto_c5xc5: bool,
    pub surjections_up_to_aut: Vec<KernelOption>,
    pub psi_for_every_phi: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Order125Survey {
    pub entries: Vec<SurveyEntry>,
    pub surjecting_groups: usize,
    pub printed_count: usize,
}

fn is_elementary_abelian(g: &FiniteGroup, s: Subset, p: usize) -> bool {
    let el = g.elements(s);
    el.iter().all(|&x| g.pow(x, p as u64) == 0) && el.iter().all(|&x| el.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// For each group of order 125: the surjections onto `C5 × C5` (one per
/// kernel), and for each the index-5 subgroups above that kernel that are
/// elementary abelian.
pub fn order125_survey() -> Order125Survey {
    let mut entries = Vec::new();
    for g in catalog(125).expect("order 125 catalogued") {
        let subs = g.subgroups();
        let mut options = Vec::new();
        for &n in subs.iter().filter(|s| s.count_ones() == 5) {
            if !g.is_normal(n) {
                continue;
            }
            let (q, _) = g.quotient(n).expect("normal");
            if !(q.is_abelian() && (0..q.order()).all(|x| q.pow(x, 5) == 0)) {
                continue;
            }
            let above: Vec<Subset> = subs.iter().copied().filter(|&m| m.count_ones() == 25 && m & n == n).collect();
            options.push(KernelOption {
                kernel: g.elements(n),
                lines: above.len(),
                elementary_lines: above.iter().filter(|&&m| is_elementary_abelian(&g, m, 5)).count(),
            });
        }
        entries.push(SurveyEntry {
            group: g.label().to_string(),
            surjects_onto_c5xc5: !options.is_empty(),
            psi_for_every_phi: options.iter().all(|o| o.elementary_lines > 0),
            surjections_up_to_aut: options,
        });
    }
    let surjecting = entries.iter().filter(|e| e.surjects_onto_c5xc5).count();
    Order125Survey { entries, surjecting_groups: surjecting, printed_count: 3 }
}

pub fn order125_verdict() -> Verdict {
    let s = order125_survey();
    let consequence = s.entries.iter().filter(|e| e.surjects_onto_c5xc5).all(|e| e.psi_for_every_phi);
    let v = Verdict::new(
        "order125-survey",
        "There are three groups up to isomorphism with this property. All of them admit at least one morphism to Z/5Z with kernel Z/5Z ⊕ Z/5Z",
    )
    .with("survey", &s);
    let groups: Vec<&str> = s.entries.iter().filter(|e| e.surjects_onto_c5xc5).map(|e| e.group.as_str()).collect();
    if !consequence {
        return v.status(Status::Fail, "some surjection onto C5×C5 admits no ψ with kernel C5×C5");
    }
    if s.surjecting_groups == s.printed_count {
        v.status(Status::Pass, format!("{} groups surject ({}); each admits ψ", groups.len(), groups.join(", ")))
    } else {
        v.status(
            Status::ErratumNoted,
            format!(
                "{} groups surject onto C5×C5 ({}), printed count {}; every surjection still admits ψ with kernel C5×C5",
                s.surjecting_groups,
                groups.join(", "),
                s.printed_count
            ),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedFacts {
    pub group: String,
    pub abelian: bool,
    pub derived_order: usize,
    pub derived_central: bool,
}

pub fn order27_derived() -> Verdict {
    let facts: Vec<DerivedFacts> = catalog(27)
        .expect("order 27 catalogued")
        .iter()
        .map(|g| {
            let d = g.derived_subgroup();
            DerivedFacts {
                group: g.label().to_string(),
                abelian: g.is_abelian(),
                derived_order: d.count_ones() as usize,
                derived_central: d & g.center() == d,
            }
        })
        .collect();
    let non_ab: Vec<&DerivedFacts> = facts.iter().filter(|f| !f.abelian).collect();
    let ok = non_ab.len() == 2 && non_ab.iter().all(|f| f.derived_order == 3 && f.derived_central);
    Verdict::new("order27-derived", "[M, M] is of order 3 and central")
        .with("groups", &facts)
        .decide(ok, format!("{} non-abelian groups of order 27, each with central commutator subgroup of order 3", non_ab.len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Order12Facts {
    pub abelianizations: BTreeMap<String, Vec<u64>>,
    pub with_c3_abelianization: Vec<String>,
    pub a4_normal_orders: BTreeSet<u64>,
}

/// Among the groups of order 12 only `A4` has abelianization `C3`; `A4` has
/// no normal subgroup of order 6 and no normal 3-Sylow.
pub fn order12_abelianization() -> (Verdict, WildCaseFacts) {
    let groups = catalog(12).expect("order 12 catalogued");
    let abel: BTreeMap<String, Vec<u64>> = groups.iter().map(|g| (g.label().to_string(), g.abelianization())).collect();
    let c3: Vec<&FiniteGroup> = groups.iter().filter(|g| g.abelianization() == [3]).collect();
    let target = a4();
    let normal_orders: BTreeSet<u64> = target.normal_subgroups().iter().map(|s| s.count_ones() as u64).collect();
    let facts = Order12Facts {
        abelianizations: abel,
        with_c3_abelianization: c3.iter().map(|g| g.label().to_string()).collect(),
        a4_normal_orders: normal_orders.clone(),
    };
    let ok = c3.len() == 1
        && c3[0].is_isomorphic(&target)
        && !normal_orders.contains(&6)
        && !normal_orders.contains(&3);
    let v = Verdict::new(
        "order12-abelianization",
        "the only group G of order 12 such that G^ab = Z/3 is the non-trivial extension of Z/3Z by Z/2Z ⊕ Z/2Z",
    )
    .with("facts", &facts)
    .decide(ok, format!("abelianization C3 only for {:?}; normal subgroup orders of A4: {:?}", facts.with_c3_abelianization, normal_orders));
    let wild = WildCaseFacts { group_order: 12, group_label: "A4".into(), normal_subgroup_orders: normal_orders };
    (v, wild)
}
