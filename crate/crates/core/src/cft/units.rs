//! Residue unit groups `(O/f)^*` for moduli built from degree-one primes,
//! images of global units in them, and ray class orders.

use serde::Serialize;

use super::fixture::FieldFixture;
use crate::exactnum::{AlgebraicNumber, PrimeIdealRep, Rat};
use crate::verdict::{Status, Verdict};
use crate::{Error, Result};

/// `∏ π_i^(k_i)` over degree-one primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Modulus {
    pub parts: Vec<(PrimeIdealRep, usize)>,
}

impl Modulus {
    pub fn trivial() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn new(parts: Vec<(PrimeIdealRep, usize)>) -> Self {
        Self { parts: parts.into_iter().filter(|(_, k)| *k > 0).collect() }
    }

    /// The conductor listed in the fixture.
    pub fn of_fixture(fix: &FieldFixture) -> Self {
        Self::new(
            fix.conductor_primes
                .iter()
                .map(|&i| (fix.primes[i].clone(), fix.conductor_exponent))
                .collect(),
        )
    }

    /// Every fixture prime to the power `k`.
    pub fn all_primes(fix: &FieldFixture, k: usize) -> Self {
        Self::new(fix.primes.iter().map(|p| (p.clone(), k)).collect())
    }
}

/// Cyclic factors of `(O/π^k)^* ≅ F_p^* × (1 + πO)/(1 + π^k O)`: one of
/// order `p − 1` then `k − 1` of order `p` (needs `k ≤ p` and `k ≤ e`).
fn local_moduli(p: u64, k: usize) -> Vec<u64> {
    let mut v = vec![p - 1];
    v.extend(std::iter::repeat_n(p, k - 1));
    v
}

fn primitive_root(p: u64) -> u64 {
    let order = |g: u64| {
        let mut x = g % p;
        let mut n = 1;
        while x != 1 {
            x = x * g % p;
            n += 1;
        }
        n
    };
    (1..p).find(|&g| order(g) == p - 1).expect("F_p^* is cyclic")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn trunc_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let k = a.len();
    let mut out = vec![0; k];
    for i in 0..k {
        for j in 0..k - i {
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
        }
    }
    out
}

/// Coordinates of a unit residue `r ∈ F_p[t]/(t^k)`: the discrete log of
/// `r(0)` and the coefficients of the truncated `log(r / r(0))`.
fn local_log(r: &[u64], p: u64, g: u64) -> Result<Vec<i64>> {
    let c0 = r[0];
    if c0 == 0 {
        return Err(Error::InvalidArgument("residue is not a unit".into()));
    }
    let mut dlog = 0;
    let mut x = 1;
    while x != c0 {
        x = x * g % p;
        dlog += 1;
    }
    let k = r.len();
    let ci = inv_mod(c0, p);
    let mut y: Vec<u64> = r.iter().map(|c| c * ci % p).collect();
    y[0] = 0;
    // log(1 + y) = Σ (−1)^(j+1) y^j / j, with j < k ≤ p
    let mut log = vec![0u64; k];
    let mut pw = y.clone();
    for j in 1..k {
        let c = inv_mod(j as u64, p);
        let c = if j % 2 == 0 { (p - c) % p } else { c };
        for (l, v) in log.iter_mut().zip(&pw) {
            *l = (*l + c * v) % p;
        }
        pw = trunc_mul(&pw, &y, p);
    }
    let mut out = vec![dlog as i64];
    out.extend(log[1..].iter().map(|&v| v as i64));
    Ok(out)
}

/// Product of cyclic groups with the given orders, as invariant factors
/// (each dividing the next).
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in orders {
        for (q, e) in crate::exactnum::factor_u64(n) {
            by_prime.entry(q).or_default().push(q.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        let off = len - powers.len();
        for (i, pw) in powers.iter().enumerate() {
            out[off + i] *= pw;
        }
    }
    out
}

/// Index of the lattice spanned by `rows` and `moduli[j]·e_j` in `Z^m`,
/// by Hermite reduction with entries kept in `[0, moduli[j])`.
fn lattice_index(rows: &[Vec<i64>], moduli: &[u64]) -> u64 {
    let m = moduli.len();
    let mut pool: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut index = 1u64;
    for j in 0..m {
        let mj = moduli[j] as i128;
        let mut pivot: Vec<i128> = vec![0; m];
        pivot[j] = mj;
        let mut rest = Vec::new();
        for mut r in pool.drain(..) {
            // Euclid between r and pivot in column j
            loop {
                r[j] = r[j].rem_euclid(mj);
                if r[j] == 0 {
                    break;
                }
                let q = pivot[j] / r[j];
                for c in j..m {
                    pivot[c] -= q * r[c];
                }
                std::mem::swap(&mut pivot, &mut r);
            }
            for c in j + 1..m {
                r[c] = r[c].rem_euclid(moduli[c] as i128);
            }
            if r.iter().any(|&x| x != 0) {
                rest.push(r);
            }
        }
        let d = pivot[j].abs();
        index *= d as u64;
        // pivot·(mj/d) has zero in column j: keep it
        let mut extra: Vec<i128> = pivot.iter().map(|x| x * (mj / d)).collect();
        extra[j] = 0;
        for c in j + 1..m {
            extra[c] = extra[c].rem_euclid(moduli[c] as i128);
            pivot[c] = pivot[c].rem_euclid(moduli[c] as i128);
        }
        if extra.iter().any(|&x| x != 0) {
            rest.push(extra);
        }
        pool = rest;
    }
    index
}

/// `(O/f)^*` for a modulus of degree-one primes.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueUnitGroup {
    pub modulus: Modulus,
    pub order: u64,
    pub structure: Vec<u64>,
    /// Per prime: a primitive root, then `1 + π^j` for `1 ≤ j < k`, as
    /// truncated residues.
    pub generators: Vec<Vec<Vec<u64>>>,
    #[serde(skip)]
    moduli: Vec<u64>,
    #[serde(skip)]
    roots: Vec<u64>,
}

impl ResidueUnitGroup {
    pub fn new(modulus: &Modulus) -> Result<Self> {
        let mut moduli = Vec::new();
        let mut roots = Vec::new();
        let mut generators = Vec::new();
        for (pr, k) in &modulus.parts {
            let p = pr.p;
            if *k as u64 > p || *k > pr.claimed_e as usize {
                return Err(Error::InvalidArgument(format!(
                    "exponent {k} at a prime over {p} exceeds min(p, e) = {}",
                    p.min(pr.claimed_e as u64)
                )));
            }
            let g = primitive_root(p);
            roots.push(g);
            moduli.extend(local_moduli(p, *k));
            let mut gens = Vec::new();
            let mut root = vec![0; *k];
            root[0] = g;
            gens.push(root);
            for j in 1..*k {
                let mut u = vec![0; *k];
                u[0] = 1;
                u[j] = 1;
                gens.push(u);
            }
            generators.push(gens);
        }
        let order = moduli.iter().product();
        let structure = invariant_factors(&moduli);
        Ok(Self { modulus: modulus.clone(), order, structure, generators, moduli, roots })
    }

    /// Residues of `x` at each prime of the modulus.
    pub fn residues(&self, x: &AlgebraicNumber) -> Result<Vec<Vec<u64>>> {
        self.modulus
            .parts
            .iter()
            .map(|(pr, k)| Ok(x.reduce_truncated(pr, *k)?.coeffs().to_vec()))
            .collect()
    }

    /// Coordinates in `⊕ Z/moduli`.
    pub fn log(&self, residues: &[Vec<u64>]) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for (((pr, _), r), g) in self.modulus.parts.iter().zip(residues).zip(&self.roots) {
            out.extend(local_log(r, pr.p, *g)?);
        }
        Ok(out)
    }

    /// Order of the subgroup generated by elements with these coordinates.
    pub fn subgroup_order(&self, logs: &[Vec<i64>]) -> u64 {
        self.order / lattice_index(logs, &self.moduli)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }
}

/// Images of global units in `(O/f)^*`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitImage {
    pub group_order: u64,
    pub order: u64,
    pub labels: Vec<String>,
    pub residues: Vec<Vec<Vec<u64>>>,
    pub logs: Vec<Vec<i64>>,
}

impl UnitImage {
    pub fn index(&self) -> u64 {
        self.group_order / self.order
    }
}

/// Subgroup of `(O/f)^*` generated by the given elements.
pub fn image_of(elements: &[(String, AlgebraicNumber)], modulus: &Modulus) -> Result<UnitImage> {
    let group = ResidueUnitGroup::new(modulus)?;
    let mut residues = Vec::new();
    let mut logs = Vec::new();
    for (_, x) in elements {
        let r = group.residues(x)?;
        logs.push(group.log(&r)?);
        residues.push(r);
    }
    Ok(UnitImage {
        group_order: group.order,
        order: group.subgroup_order(&logs),
        labels: elements.iter().map(|(l, _)| l.clone()).collect(),
        residues,
        logs,
    })
}

fn check_modulus(fix: &FieldFixture, modulus: &Modulus) -> Result<()> {
    for (pr, _) in &modulus.parts {
        if !fix.primes.contains(pr) {
            return Err(Error::Fixture(format!(
                "{}: modulus prime (p = {}, shift {}) is not a fixture prime",
                fix.label, pr.p, pr.shift
            )));
        }
    }
    Ok(())
}

/// `−1` together with every fixture unit.
pub fn fixture_units(fix: &FieldFixture) -> Vec<(String, AlgebraicNumber)> {
    let mut v = vec![("-1".to_string(), AlgebraicNumber::from_rat(&fix.field, -Rat::from_integer(1.into())))];
    v.extend(fix.units.iter().enumerate().map(|(i, u)| {
        let name = if i == 0 { format!("zeta_{}", fix.roots_of_unity) } else { format!("u{i}") };
        (name, u.clone())
    }));
    v
}

/// Image of `{−1} ∪ units` in `(O/f)^*`.
pub fn unit_image_subgroup(fix: &FieldFixture, modulus: &Modulus) -> Result<UnitImage> {
    check_modulus(fix, modulus)?;
    image_of(&fixture_units(fix), modulus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RayClassOrder {
    Exact { value: u64 },
    /// The true order lies in `[low, high]` and is a multiple of `h`.
    Interval { low: u64, high: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct RayClassReport {
    pub h: u64,
    pub residue_order: u64,
    pub unit_image: UnitImage,
    pub order: RayClassOrder,
}

/// `|Cl_f| = h · |(O/f)^*| / |image of units|`, with no archimedean part
/// since every fixture field is totally imaginary.
pub fn ray_class_order(fix: &FieldFixture, modulus: &Modulus) -> Result<RayClassReport> {
    let image = unit_image_subgroup(fix, modulus)?;
    let high = fix.h * image.index();
    let order = if fix.units_complete || image.index() == 1 {
        RayClassOrder::Exact { value: high }
    } else {
        RayClassOrder::Interval { low: fix.h, high }
    };
    Ok(RayClassReport { h: fix.h, residue_order: image.group_order, unit_image: image, order })
}

/// Verdict comparing a ray class order against an expected value. Matches
/// depend on fixture class numbers and units, so they are conditional.
pub fn ray_class_verdict(id: &str, reference: &str, fix: &FieldFixture, modulus: &Modulus, expected: u64) -> Verdict {
    let v = Verdict::new(id, reference).with("field", &fix.label).with("h_source", &fix.h_source);
    match ray_class_order(fix, modulus) {
        Err(e) => v.status(Status::Fail, format!("{}: {e}", fix.label)),
        Ok(r) => {
            let (ok, shown) = match r.order {
                RayClassOrder::Exact { value } => (value == expected, value.to_string()),
                RayClassOrder::Interval { low, high } => {
                    (low <= expected && expected <= high && expected.is_multiple_of(fix.h), format!("[{low}, {high}]"))
                }
            };
            let summary = format!(
                "{}: |Cl_f| = {} · {} / {} = {shown}, expected {expected}",
                fix.label, r.h, r.residue_order, r.unit_image.order
            );
            let v = v.with("ray_class", &r).with("expected", expected);
            if ok {
                v.status(Status::FixtureConditional, summary)
            } else {
                v.status(Status::Fail, summary)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_merge() {
        assert_eq!(invariant_factors(&[4, 5]), vec![20]);
        assert_eq!(invariant_factors(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(invariant_factors(&[4, 5, 4, 5]), vec![20, 20]);
        assert_eq!(invariant_factors(&[6, 4]), vec![2, 12]);
    }

    #[test]
    fn lattice_index_examples() {
        // (F_3^*)^3 with (−1,−1,−1), (1,1,−1), (1,−1,1)
        let rows = vec![vec![1, 1, 1], vec![0, 0, 1], vec![0, 1, 0]];
        assert_eq!(lattice_index(&rows, &[2, 2, 2]), 1);
        assert_eq!(lattice_index(&[vec![1, 1, 1]], &[2, 2, 2]), 4);
        assert_eq!(lattice_index(&[], &[4, 5]), 20);
        assert_eq!(lattice_index(&[vec![2, 0]], &[4, 5]), 10);
        assert_eq!(lattice_index(&[vec![2, 1], vec![1, 0]], &[4, 5]), 1);
    }

    #[test]
    fn local_log_is_homomorphic() {
        let p = 5;
        let g = primitive_root(p);
        let a = vec![3, 2, 4];
        let b = vec![2, 1, 1];
        let ab = trunc_mul(&a, &b, p);
        let (la, lb, lab) = (local_log(&a, p, g).unwrap(), local_log(&b, p, g).unwrap(), local_log(&ab, p, g).unwrap());
        assert_eq!((la[0] + lb[0]) % 4, lab[0]);
        for i in 1..3 {
            assert_eq!((la[i] + lb[i]) % 5, lab[i]);
        }
    }
}
