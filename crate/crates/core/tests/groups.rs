use semistable_audit::groupcheck::*;
use semistable_audit::verdict::Status;

/// Number of groups of order n (OEIS A000001), n = 1..=27.
const GROUP_COUNTS: [usize; 27] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5];

#[test]
fn catalog_counts_match_classification() {
    for n in 1..=27 {
        assert_eq!(catalog(n).unwrap().len(), GROUP_COUNTS[n - 1], "order {n}");
    }
    assert_eq!(catalog(50).unwrap().len(), 5);
    assert_eq!(catalog(125).unwrap().len(), 5);
    assert!(catalog(28).is_err());
}

#[test]
fn catalog_entries_are_pairwise_non_isomorphic() {
    for n in supported_orders() {
        let groups = catalog(n).unwrap();
        for g in &groups {
            assert_eq!(g.order(), n, "{}", g.label());
        }
        for i in 0..groups.len() {
            for j in 0..i {
                let (a, b) = (&groups[i], &groups[j]);
                let distinct = a.invariants() != b.invariants() || a.find_isomorphism(b).is_none();
                assert!(distinct, "{} ≅ {}", a.label(), b.label());
            }
        }
    }
}

/// Backtracking over bijections fixing the identity, pruning on partial
/// multiplicativity.
fn automorphisms_by_permutation_filter(g: &FiniteGroup) -> u64 {
    let n = g.order();
    let order: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    fn go(g: &FiniteGroup, order: &[usize], map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, next: usize) -> u64 {
        let n = g.order();
        if next == n {
            return 1;
        }
        let mut total = 0;
        for img in 0..n {
            if used[img] || order[img] != order[next] {
                continue;
            }
            map[next] = Some(img);
            let ok = (0..=next).all(|a| {
                (0..=next).all(|b| {
                    let ab = g.mul(a, b);
                    match (map[a], map[b], map[ab]) {
                        (Some(x), Some(y), Some(z)) => g.mul(x, y) == z,
                        _ => true,
                    }
                })
            });
            if ok {
                used[img] = true;
                total += go(g, order, map, used, next + 1);
                used[img] = false;
            }
            map[next] = None;
        }
        total
    }
    let mut map = vec![None; n];
    map[0] = Some(0);
    let mut used = vec![false; n];
    used[0] = true;
    go(g, &order, &mut map, &mut used, 1)
}

#[test]
fn automorphism_counts_agree_with_permutation_filter() {
    for n in 1..=12 {
        for g in catalog(n).unwrap() {
            assert_eq!(automorphism_count(&g), automorphisms_by_permutation_filter(&g), "{}", g.label());
        }
    }
}

/// |GL_k(F_p)|.
fn gl_order(k: u32, p: u64) -> u64 {
    (0..k).map(|i| p.pow(k) - p.pow(i)).product()
}

#[test]
fn elementary_abelian_automorphisms_match_general_linear_orders() {
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    assert_eq!(automorphism_count(&product_of("", &[c2.clone(), c2.clone(), c2.clone()])), gl_order(3, 2));
    assert_eq!(automorphism_count(&product_of("", &[c3.clone(), c3.clone()])), gl_order(2, 3));
    assert_eq!(automorphism_count(&product_of("", &[c2.clone(), c2.clone(), c2.clone(), c2])), gl_order(4, 2));
}

#[test]
fn abelian_groups_abelianize_to_themselves() {
    for n in 1..=27 {
        for g in catalog(n).unwrap().into_iter().filter(|g| g.is_abelian()) {
            let inv = g.abelianization();
            assert_eq!(inv.iter().product::<u64>(), n as u64, "{}", g.label());
            assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
            // rebuild from invariant factors and compare
            let rebuilt = if inv.is_empty() {
                cyclic(1)
            } else {
                product_of("", &inv.iter().map(|&q| cyclic(q as usize)).collect::<Vec<_>>())
            };
            assert!(g.is_isomorphic(&rebuilt), "{}", g.label());
        }
    }
}

#[test]
fn group_lemma_verdicts() {
    for v in [small_aut_coprime(), extension_commutator(), order50_extensions(), order27_derived(), order12_abelianization().0] {
        assert_eq!(v.status, Status::Pass, "{v}");
    }
}

#[test]
fn dihedral_and_nonabelian_nine_aut_counts() {
    assert_eq!(automorphism_count(&dihedral(4)), 8);
    assert_eq!(automorphism_count(&product_of("", &[cyclic(3), cyclic(3)])), 48);
    assert_eq!(automorphism_count(&cyclic(15)), 8);
}

#[test]
fn order_12_facts() {
    let (_, facts) = order12_abelianization();
    assert!(!facts.normal_subgroup_orders.contains(&6));
    assert!(!facts.normal_subgroup_orders.contains(&3));
    assert!(facts.normal_subgroup_orders.contains(&4));
}

#[test]
fn order125_survey_counts() {
    let s = order125_survey();
    let cyclic_entry = s.entries.iter().find(|e| e.group == "C125").unwrap();
    assert!(!cyclic_entry.surjects_onto_c5xc5);
    let elementary = s.entries.iter().find(|e| e.group == "C5^3").unwrap();
    assert!(elementary.surjects_onto_c5xc5 && elementary.psi_for_every_phi);
    let heis = s.entries.iter().find(|e| e.group == "Heis(5)").unwrap();
    assert!(heis.surjects_onto_c5xc5 && heis.psi_for_every_phi);
    assert_eq!(s.surjecting_groups, 4);
    assert_eq!(order125_verdict().status, Status::ErratumNoted);
}

#[test]
fn unipotent_pair() {
    for k in 1..=3 {
        let sols = unipotent_pair_solutions(k, PairConditions::ALL).unwrap();
        assert_eq!(sols, vec![Truncated::zero(k)], "k = {k}");
    }
    // the cube condition alone singles out the v with v³ = 0
    let cube = unipotent_pair_solutions(3, PairConditions::CUBE_ONLY).unwrap();
    let nilpotent: Vec<Truncated> = Truncated::all(3).into_iter().filter(|v| v.pow(3).is_zero()).collect();
    assert_eq!(cube, nilpotent);
}

#[test]
fn unipotent_pair_solutions_project_downward() {
    for k in 1..4 {
        let low = unipotent_pair_solutions(k, PairConditions::ALL).unwrap();
        for v in unipotent_pair_solutions(k + 1, PairConditions::ALL).unwrap() {
            assert!(low.contains(&v.truncate(k)));
        }
    }
}
