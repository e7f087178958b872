mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use semistable_audit::cft::{fixture_units, image_of, unramified_criterion, FieldFixture, FixtureSet, Modulus};
use semistable_audit::discbound::{compose_root_disc, fontaine_cap};
use semistable_audit::exactnum::{rat, AlgebraicNumber, RadicalMonomial, Rat};
use semistable_audit::galmod::{
    component_delta, generated_submodule, unipotent_check, unipotent_closure, Filtration, FlMatrix, GaloisModule,
    Subspace,
};

const SEXTIC: &str = "Q(sqrt(-3), 10^(1/3))";

fn sextic() -> &'static FieldFixture {
    static SET: OnceLock<FixtureSet> = OnceLock::new();
    SET.get_or_init(|| FixtureSet::shipped().expect("shipped fixtures verify")).get(SEXTIC).expect("sextic fixture")
}

fn fl(l: u32, m: &[Vec<u32>]) -> FlMatrix {
    FlMatrix::square(l, m.len(), &flat(m)).unwrap()
}

fn subspace(l: u32, n: usize, vs: &[Vec<u32>]) -> Subspace {
    Subspace::span(l, n, vs.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn component_delta_matches_counting(inst in delta_instance()) {
        let (l, n) = (inst.l, inst.n());
        let filt = Filtration::new(subspace(l, n, &inst.m2()), subspace(l, n, &inst.m1()), inst.t, inst.a).unwrap();
        let kappa = subspace(l, n, &inst.kappa);
        let got = component_delta(&kappa, &filt);
        let k2 = intersection_dim(l, n, &inst.kappa, &inst.m2(), 625);
        let k1 = intersection_dim(l, n, &inst.kappa, &inst.m1(), 625);
        let dk = Echelon::of(l, n, &inst.kappa).dim();
        prop_assert_eq!(got.dim_kappa, dk);
        prop_assert_eq!(got.dim_kappa_m2, k2);
        prop_assert_eq!(got.dim_kappa_m1, k1);
        prop_assert_eq!(got.delta, k2 as i64 + k1 as i64 - dk as i64);
        prop_assert!(got.delta <= inst.t as i64);
        let m1 = Echelon::of(l, n, &inst.m1());
        let stage = k2 == inst.t && inst.kappa.iter().all(|v| m1.contains(v));
        prop_assert_eq!(got.stage_increment, stage);
    }

    #[test]
    fn generated_submodule_is_orbit_span(
        (l, n, g, h, pts) in (prop_oneof![Just(3u32), Just(5u32)], 1usize..=6).prop_flat_map(|(l, n)| (
            Just(l), Just(n), invertible(l, n), invertible(l, n),
            proptest::collection::vec(proptest::collection::vec(0..l, n), 0..=2),
        ))
    ) {
        let module = GaloisModule::new(l, n, vec![("g", fl(l, &g)), ("h", fl(l, &h))], vec![], BTreeMap::new()).unwrap();
        let got = generated_submodule(&pts, &module);
        let oracle = orbit_span(l, n, &[g.clone(), h.clone()], &pts);
        prop_assert_eq!(got.dim(), oracle.dim());
        for v in got.basis() {
            prop_assert!(oracle.contains(v));
            prop_assert!(oracle.contains(&mat_vec(l, &g, v)));
            prop_assert!(oracle.contains(&mat_vec(l, &h, v)));
        }
    }

    #[test]
    fn unipotent_closure_is_generated_submodule(
        (l, n, (sigma, _), pts) in (prop_oneof![Just(3u32), Just(5u32)], 2usize..=6).prop_flat_map(|(l, n)| (
            Just(l), Just(n), unipotent(l, n),
            proptest::collection::vec(proptest::collection::vec(0..l, n), 0..=3),
        ))
    ) {
        let s = fl(l, &sigma);
        prop_assert!(unipotent_check(&s));
        prop_assert!(s.pow(l as u64).is_identity());
        let module = GaloisModule::new(l, n, vec![("σ", s.clone())], vec![], BTreeMap::new()).unwrap();
        let closure = unipotent_closure(&pts, &s, &module).unwrap();
        let oracle = orbit_span(l, n, std::slice::from_ref(&sigma), &pts);
        prop_assert_eq!(closure.dim(), oracle.dim());
        prop_assert!(closure.basis().iter().all(|v| oracle.contains(v)));
    }

    #[test]
    fn exact_compare_agrees_with_floats(
        a in 1i64..=40, b in 1i64..=12, c in 0i64..=40, d in 1i64..=12,
        num in 1i64..=100_000, den in 1i64..=1000,
    ) {
        let x = RadicalMonomial::pow_frac(5, a, b).mul(&RadicalMonomial::pow_frac(6, c, d));
        let t = rat(num, den);
        let xf = 5f64.powf(a as f64 / b as f64) * 6f64.powf(c as f64 / d as f64);
        let tf = num as f64 / den as f64;
        prop_assume!((xf - tf).abs() > 1e-9 * xf.max(tf));
        prop_assert_eq!(x.exact_compare(&t), xf.partial_cmp(&tf).unwrap());
    }

    #[test]
    fn compose_root_disc_towers(
        a in 0i64..=30, b in 0i64..=30, nl in 1u64..=6, m in 1u64..=6,
    ) {
        let base = RadicalMonomial::pow_frac(5, 23, 20).mul(&RadicalMonomial::pow_frac(6, 4, 5));
        let da = RadicalMonomial::power_of(5, Rat::from_integer(a.into()));
        let db = RadicalMonomial::power_of(2, Rat::from_integer(b.into()));
        let nm = nl * m;
        let step = compose_root_disc(&compose_root_disc(&base, &da, nl).unwrap(), &db, nm).unwrap();
        let direct = compose_root_disc(&base, &da.pow(&Rat::from_integer((m as i64).into())).mul(&db), nm).unwrap();
        prop_assert_eq!(step, direct);
    }

    #[test]
    fn fontaine_cap_grows_with_bad_primes(l in prop_oneof![Just(3u64), Just(5u64)], extra in prop_oneof![Just(7u64), Just(11u64), Just(13u64)]) {
        let base = fontaine_cap(l, &[2]).unwrap();
        let more = fontaine_cap(l, &[2, extra]).unwrap();
        prop_assert!(more.compare(&base).ordering == std::cmp::Ordering::Greater);
    }

    #[test]
    fn reduction_is_a_ring_map(
        x in proptest::collection::vec(-50i64..=50, 6),
        y in proptest::collection::vec(-50i64..=50, 6),
        pi in 0usize..3,
    ) {
        let fix = sextic();
        let prime = &fix.primes[pi];
        let el = |v: &[i64]| fix.element(&v.iter().map(|&c| Rat::from_integer(c.into())).collect::<Vec<_>>()).unwrap();
        let (x, y) = (el(&x), el(&y));
        let p = prime.p;
        let rx = x.reduce_mod_prime(prime).unwrap();
        let ry = y.reduce_mod_prime(prime).unwrap();
        prop_assert_eq!(x.add(&y).reduce_mod_prime(prime).unwrap(), (rx + ry) % p);
        prop_assert_eq!(x.mul(&y).reduce_mod_prime(prime).unwrap(), rx * ry % p);
    }

    #[test]
    fn unit_subset_image_divides(mask in 1u32..16) {
        let fix = sextic();
        let modulus = Modulus::all_primes(fix, 1);
        let units = fixture_units(fix);
        let full = image_of(&units, &modulus).unwrap();
        let subset: Vec<_> = units.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, u)| u.clone()).collect();
        let part = image_of(&subset, &modulus).unwrap();
        prop_assert_eq!(full.group_order % full.order, 0);
        prop_assert_eq!(full.order % part.order, 0);
    }

    #[test]
    fn unit_image_invariant_under_unimodular_change(i in 0usize..4, j in 0usize..4, k in -2i64..=2) {
        prop_assume!(i != j);
        let fix = sextic();
        let modulus = Modulus::all_primes(fix, 1);
        let units = fixture_units(fix);
        let mut changed: Vec<(String, AlgebraicNumber)> = units.clone();
        changed[i].1 = units[i].1.mul(&units[j].1.pow(k).unwrap());
        changed.swap(0, j);
        let a = image_of(&units, &modulus).unwrap();
        let b = image_of(&changed, &modulus).unwrap();
        prop_assert_eq!(a.order, b.order);
    }

    #[test]
    fn unramified_criterion_depends_on_class_mod_lth_powers(
        l in prop_oneof![Just(3u64), Just(5u64)], m in 2u64..=600, c in 2u64..=6,
    ) {
        prop_assume!(m % l != 0 && c % l != 0);
        let lhs = unramified_criterion(m, l).unwrap();
        let rhs = unramified_criterion(m * c.pow(l as u32), l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn unramified_candidates() {
    let five: Vec<u64> =
        [2, 3, 6, 12, 18, 24, 48, 576].into_iter().filter(|&m| unramified_criterion(m, 5).unwrap()).collect();
    assert_eq!(five, [18, 24, 576]);
    let three: Vec<u64> = [2, 5, 10, 20, 50, 100].into_iter().filter(|&m| unramified_criterion(m, 3).unwrap()).collect();
    assert_eq!(three, [10, 100]);
}
