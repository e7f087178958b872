use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::exactnum::factor_u64;
use crate::{Error, Result};

/// Subset of a group of order at most 128, as a bitmask over element indices.
pub type Subset = u128;

pub const MAX_ORDER: usize = 128;

/// A finite group stored as its Cayley table. Element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    n: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
    generators: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.n)
    }
}

impl FiniteGroup {
    /// Validates closure, identity at index 0, inverses and associativity.
    pub fn from_table(label: impl Into<String>, n: usize, table: Vec<usize>) -> Result<Self> {
        let label = label.into();
        let bad = |why: String| Error::NotAGroup(format!("{label}: {why}"));
        if n == 0 || n > MAX_ORDER {
            return Err(bad(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(bad("table is not an n×n array of element indices".into()));
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(bad("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| bad(format!("element {a} has no inverse")))?;
            if table[b * n + a] != 0 {
                return Err(bad(format!("inverse of {a} is one-sided")));
            }
            inv[a] = b as u8;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(bad(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let mut g = Self {
            label,
            n,
            table: table.into_iter().map(|x| x as u8).collect(),
            inv,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of `gens` under `mul`, materialised as a Cayley table. Returns
    /// the group and its elements in index order. Gives up with `None` as
    /// soon as more than `limit` elements appear.
    pub fn generate<T, F>(label: impl Into<String>, identity: T, gens: &[T], mul: F, limit: usize) -> Result<Option<(Self, Vec<T>)>>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() >= limit.min(MAX_ORDER) {
                        return Ok(None);
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = *index
                    .get(&mul(&elems[a], &elems[b]))
                    .ok_or_else(|| Error::NotAGroup("generated set is not closed".into()))?;
            }
        }
        Ok(Some((Self::from_table(label, n, table)?, elems)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn all(&self) -> Subset {
        mask_upto(self.n)
    }

    pub fn elements(&self, s: Subset) -> Vec<usize> {
        (0..self.n).filter(|&i| s >> i & 1 == 1).collect()
    }

    /// Subgroup generated by the elements of `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let gens = self.elements(s);
        let mut out: Subset = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if out >> y & 1 == 0 {
                    out |= 1 << y;
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn cyclic_subgroup(&self, a: usize) -> Subset {
        self.closure(1 << a)
    }

    /// Greedy generating set: repeatedly adjoin an element of largest order
    /// outside the current subgroup.
    fn greedy_generators(&self) -> Vec<usize> {
        let orders: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        let mut current: Subset = 1;
        let mut gens = Vec::new();
        while current != self.all() {
            let g = (0..self.n)
                .filter(|&a| current >> a & 1 == 0)
                .max_by_key(|&a| (orders[a], std::cmp::Reverse(a)))
                .expect("element outside a proper subgroup");
            gens.push(g);
            current = self.closure(current | 1 << g);
        }
        gens
    }

    pub fn is_normal(&self, s: Subset) -> bool {
        self.elements(s).iter().all(|&x| {
            self.generators
                .iter()
                .all(|&g| s >> self.conjugate(g, x) & 1 == 1)
        })
    }

    pub fn center(&self) -> Subset {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .fold(0, |acc, a| acc | 1 << a)
    }

    pub fn derived_subgroup(&self) -> Subset {
        let mut comms: Subset = 1;
        for a in 0..self.n {
            for b in 0..self.n {
                comms |= 1 << self.commutator(a, b);
            }
        }
        self.closure(comms)
    }

    /// Every subgroup, found by joining cyclic subgroups until nothing new
    /// appears. Sorted by order, then by mask.
    pub fn subgroups(&self) -> Vec<Subset> {
        let mut cyclic: Vec<Subset> = (0..self.n).map(|a| self.cyclic_subgroup(a)).collect();
        cyclic.sort_unstable();
        cyclic.dedup();
        let mut all: Vec<Subset> = cyclic.clone();
        let mut seen: std::collections::HashSet<Subset> = all.iter().copied().collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &s in &frontier {
                for &c in &cyclic {
                    if s & c == c {
                        continue;
                    }
                    let j = self.closure(s | c);
                    if seen.insert(j) {
                        next.push(j);
                    }
                }
            }
            all.extend(next.iter().copied());
            frontier = next;
        }
        all.sort_unstable_by_key(|s| (s.count_ones(), *s));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Subset> {
        self.subgroups().into_iter().filter(|&s| self.is_normal(s)).collect()
    }

    /// `G/N` for a normal subgroup `N`, elements ordered by least coset
    /// representative. Also returns the projection.
    pub fn quotient(&self, normal: Subset) -> Result<(Self, Vec<usize>)> {
        if normal & 1 == 0 || self.closure(normal) != normal || !self.is_normal(normal) {
            return Err(Error::InvalidArgument("not a normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for a in 0..self.n {
            if proj[a] != usize::MAX {
                continue;
            }
            let k = reps.len();
            for x in self.elements(normal) {
                proj[self.mul(a, x)] = k;
            }
            reps.push(a);
        }
        let m = reps.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = proj[self.mul(reps[i], reps[j])];
            }
        }
        let q = Self::from_table(format!("{}/N", self.label), m, table)?;
        Ok((q, proj))
    }

    /// Histogram of element orders.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.n {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    /// Invariant factors of `G/[G,G]`, each dividing the next.
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        let dsize = d.count_ones() as u64;
        let qorder = self.n as u64 / dsize;
        // p-primary parts from |{x : x^(p^k) ∈ G'}| / |G'|
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        for (p, _) in factor_u64(qorder) {
            let mut prev = 1u64;
            let mut counts = Vec::new();
            let mut pk = p;
            loop {
                let c = (0..self.n)
                    .filter(|&a| d >> self.pow(a, pk) & 1 == 1)
                    .count() as u64
                    / dsize;
                if c == prev {
                    break;
                }
                counts.push(ilog(c / prev, p));
                prev = c;
                pk *= p;
            }
            // counts[k] = number of cyclic factors of order ≥ p^(k+1)
            let parts = counts[0] as usize;
            let mut exps = vec![0u32; parts];
            for c in &counts {
                for e in exps.iter_mut().take(*c as usize) {
                    *e += 1;
                }
            }
            by_prime.push(exps.iter().map(|&e| p.pow(e)).collect());
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for parts in &by_prime {
            // largest parts go to the largest invariant factors
            for (i, q) in parts.iter().enumerate() {
                out[len - 1 - i] *= q;
            }
        }
        out
    }

    /// Invariant vector used to tell groups apart.
    pub fn invariants(&self) -> GroupInvariants {
        GroupInvariants {
            order: self.n,
            order_profile: self.order_profile(),
            center: self.center().count_ones() as usize,
            derived: self.derived_subgroup().count_ones() as usize,
            abelianization: self.abelianization(),
        }
    }

    /// Extends `images` of `self.generators()` to a homomorphism into a
    /// structure with multiplication `mul`. `None` when the images do not
    /// define a homomorphism.
    pub fn extend<T: Clone + PartialEq>(&self, images: &[T], identity: T, mul: impl Fn(&T, &T) -> T) -> Option<Vec<T>> {
        assert_eq!(images.len(), self.generators.len());
        let mut map: Vec<Option<T>> = vec![None; self.n];
        map[0] = Some(identity);
        let mut queue = VecDeque::from([0usize]);
        let mut visited = vec![false; self.n];
        visited[0] = true;
        while let Some(x) = queue.pop_front() {
            let mx = map[x].clone().expect("visited");
            for (k, &s) in self.generators.iter().enumerate() {
                let y = self.mul(x, s);
                let v = mul(&mx, &images[k]);
                match &map[y] {
                    Some(w) if *w != v => return None,
                    Some(_) => {}
                    None => map[y] = Some(v),
                }
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
        map.into_iter().collect()
    }

    /// Exhaustive isomorphism search: generator images with matching element
    /// orders, checked for homomorphy and bijectivity.
    pub fn find_isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let targets: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.n).filter(|&b| other.element_order(b) == o).collect()
            })
            .collect();
        let mut found = None;
        for_each_tuple(&targets, &mut |imgs| {
            if let Some(map) = self.extend(imgs, 0, |a, b| other.mul(*a, *b)) {
                if is_bijective(&map, other.n) {
                    found = Some(map);
                    return true;
                }
            }
            false
        });
        found
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariants() == other.invariants() && self.find_isomorphism(other).is_some()
    }

    /// Every automorphism, as a permutation of element indices, found by
    /// enumerating generator images.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let targets: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..self.n).filter(|&b| self.element_order(b) == o).collect()
            })
            .collect();
        let mut out = Vec::new();
        for_each_tuple(&targets, &mut |imgs| {
            if let Some(map) = self.extend(imgs, 0, |a, b| self.mul(*a, *b)) {
                if is_bijective(&map, self.n) {
                    out.push(map);
                }
            }
            false
        });
        out
    }
}

/// Invariants compared before any isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub order_profile: BTreeMap<usize, usize>,
    pub center: usize,
    pub derived: usize,
    pub abelianization: Vec<u64>,
}

/// A homomorphism between two catalog groups.
#[derive(Clone, Debug)]
pub struct GroupHom<'a> {
    pub source: &'a FiniteGroup,
    pub target: &'a FiniteGroup,
    mapping: Vec<usize>,
}

impl<'a> GroupHom<'a> {
    /// Checks multiplicativity on all pairs.
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.order() || mapping.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidArgument("mapping has the wrong shape".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if mapping[source.mul(a, b)] != target.mul(mapping[a], mapping[b]) {
                    return Err(Error::InvalidArgument(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(Self { source, target, mapping })
    }

    pub fn from_generator_images(source: &'a FiniteGroup, target: &'a FiniteGroup, images: &[usize]) -> Option<Self> {
        let mapping = source.extend(images, 0, |a, b| target.mul(*a, *b))?;
        Some(Self { source, target, mapping })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.mapping[a]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn kernel(&self) -> Subset {
        (0..self.source.order())
            .filter(|&a| self.mapping[a] == 0)
            .fold(0, |acc, a| acc | 1 << a)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.mapping {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

pub(crate) fn mask_upto(n: usize) -> Subset {
    if n >= 128 {
        Subset::MAX
    } else {
        (1 << n) - 1
    }
}

fn ilog(mut x: u64, p: u64) -> u64 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn is_bijective(map: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &x in map {
        if hit[x] {
            return false;
        }
        hit[x] = true;
    }
    true
}

/// Calls `f` on each tuple from the cartesian product; stops when `f`
/// returns `true`.
pub(crate) fn for_each_tuple(choices: &[Vec<usize>], f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(choices: &[Vec<usize>], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == choices.len() {
            return f(cur);
        }
        for &c in &choices[cur.len()] {
            cur.push(c);
            if go(choices, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(choices, &mut Vec::new(), f);
}
