use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::{FlMatrix, Subspace};
use crate::{Error, Result};

/// A word in the named generators: `(name, exponent)` factors, applied
/// left to right as matrix products.
pub type Word = Vec<(String, i64)>;

pub fn word(parts: &[(&str, i64)]) -> Word {
    parts.iter().map(|(n, e)| (n.to_string(), *e)).collect()
}

/// `F_l^dim` with matrix actions of named generators that satisfy a list of
/// relations `lhs = rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisModule {
    l: u32,
    dim: usize,
    generators: BTreeMap<String, FlMatrix>,
    inverses: BTreeMap<String, FlMatrix>,
    relations: Vec<(Word, Word)>,
    inertia: BTreeMap<u64, Vec<String>>,
}

impl GaloisModule {
    pub fn new(
        l: u32,
        dim: usize,
        generators: Vec<(&str, FlMatrix)>,
        relations: Vec<(Word, Word)>,
        inertia: BTreeMap<u64, Vec<String>>,
    ) -> Result<Self> {
        let mut gens = BTreeMap::new();
        let mut invs = BTreeMap::new();
        for (name, m) in generators {
            if m.l() != l || m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidArgument(format!("generator {name} has the wrong shape or field")));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::InvalidArgument(format!("generator {name} is not invertible")))?;
            gens.insert(name.to_string(), m);
            invs.insert(name.to_string(), inv);
        }
        for names in inertia.values() {
            if let Some(n) = names.iter().find(|n| !gens.contains_key(*n)) {
                return Err(Error::InvalidArgument(format!("inertia tag names unknown generator {n}")));
            }
        }
        let module = Self { l, dim, generators: gens, inverses: invs, relations, inertia };
        for (lhs, rhs) in &module.relations {
            if module.eval(lhs)? != module.eval(rhs)? {
                return Err(Error::RelationViolated(format!("{} ≠ {}", show(lhs), show(rhs))));
            }
        }
        Ok(module)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, name: &str) -> Option<&FlMatrix> {
        self.generators.get(name)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &FlMatrix)> {
        self.generators.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn inertia(&self, p: u64) -> Vec<&FlMatrix> {
        self.inertia
            .get(&p)
            .map(|ns| ns.iter().map(|n| &self.generators[n]).collect())
            .unwrap_or_default()
    }

    pub fn eval(&self, w: &Word) -> Result<FlMatrix> {
        let mut m = FlMatrix::identity(self.l, self.dim);
        for (name, e) in w {
            let g = if *e >= 0 { self.generators.get(name) } else { self.inverses.get(name) }
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name}")))?;
            m = m.mul(&g.pow(e.unsigned_abs()));
        }
        Ok(m)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.l, self.dim)
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect::<Vec<_>>().join("·")
}

/// `(σ − 1)² = 0`.
pub fn unipotent_check(sigma: &FlMatrix) -> bool {
    if !sigma.is_square() {
        return false;
    }
    let n = sigma.sub(&FlMatrix::identity(sigma.l(), sigma.rows()));
    n.mul(&n).is_zero()
}

/// Smallest subspace containing `points` and stable under every generator.
pub fn generated_submodule(points: &[Vec<u32>], module: &GaloisModule) -> Subspace {
    let mut w = Subspace::span(module.l(), module.dim(), points.to_vec());
    loop {
        let mut next = w.clone();
        for (_, g) in module.generators() {
            next = next.sum(&w.image_under(g));
        }
        if next.dim() == w.dim() {
            return w;
        }
        w = next;
    }
}

/// As [`generated_submodule`], and when every point is fixed by each
/// element of `normal` (a normal subgroup, given by its elements), checks
/// that the result is fixed too.
pub fn generated_submodule_fixed(points: &[Vec<u32>], module: &GaloisModule, normal: &[FlMatrix]) -> Result<Subspace> {
    let w = generated_submodule(points, module);
    let points_fixed = points.iter().all(|p| normal.iter().all(|h| h.apply(p) == *p));
    if points_fixed {
        for h in normal {
            if let Some(v) = w.basis().iter().find(|v| h.apply(v) != **v) {
                return Err(Error::NotStable { generator: "normal subgroup element".into(), vector: v.clone() });
            }
        }
    }
    Ok(w)
}

/// `span{P_i, (σ − 1)P_i}` for unipotent `σ`, checked to be stable under
/// every generator of the module.
pub fn unipotent_closure(points: &[Vec<u32>], sigma: &FlMatrix, module: &GaloisModule) -> Result<Subspace> {
    if !unipotent_check(sigma) {
        return Err(Error::InvalidArgument("σ is not unipotent of rank two".into()));
    }
    let n = sigma.sub(&FlMatrix::identity(sigma.l(), sigma.rows()));
    let span = Subspace::span(
        module.l(),
        module.dim(),
        points.iter().cloned().chain(points.iter().map(|p| n.apply(p))).collect::<Vec<_>>(),
    );
    for (name, g) in module.generators() {
        if let Some(v) = span.stability_witness(g) {
            return Err(Error::NotStable { generator: name.to_string(), vector: v });
        }
    }
    Ok(span)
}

/// Mod-`l` images of the inertia-invariant filtration `M̄2 ⊆ M̄1 ⊆ V`.
#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub m2: Subspace,
    pub m1: Subspace,
    pub t: usize,
    pub a: usize,
}

impl Filtration {
    pub fn new(m2: Subspace, m1: Subspace, t: usize, a: usize) -> Result<Self> {
        if m2.dim() != t || m1.dim() != t + 2 * a || !m2.is_subspace_of(&m1) || m1.ambient() != 2 * (t + a) {
            return Err(Error::InvalidArgument(format!(
                "need dim M̄2 = t = {t}, dim M̄1 = t + 2a = {}, M̄2 ⊆ M̄1 in dimension 2d = {}; got {} and {}",
                t + 2 * a,
                2 * (t + a),
                m2.dim(),
                m1.dim()
            )));
        }
        Ok(Self { m2, m1, t, a })
    }

    pub fn d(&self) -> usize {
        self.t + self.a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDelta {
    pub dim_kappa: usize,
    pub dim_kappa_m2: usize,
    pub dim_kappa_m1: usize,
    /// Change in `ord_l` of the component group.
    pub delta: i64,
    /// `M̄2 ⊆ κ ⊆ M̄1`: the effective stage of inertia goes up by one.
    pub stage_increment: bool,
}

pub fn component_delta(kappa: &Subspace, filt: &Filtration) -> ComponentDelta {
    let k2 = kappa.intersect(&filt.m2).dim();
    let k1 = kappa.intersect(&filt.m1).dim();
    ComponentDelta {
        dim_kappa: kappa.dim(),
        dim_kappa_m2: k2,
        dim_kappa_m1: k1,
        delta: k2 as i64 + k1 as i64 - kappa.dim() as i64,
        stage_increment: filt.m2.is_subspace_of(kappa) && kappa.is_subspace_of(&filt.m1),
    }
}
