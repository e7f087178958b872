//! Independent oracles shared by the property and acceptance suites. None
//! of these call into the library's linear algebra.
#![allow(dead_code)]

use proptest::prelude::*;

/// Row-reduced basis over `F_l`, maintained incrementally.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub l: u32,
    pub n: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(l: u32, n: usize) -> Self {
        Self { l, n, rows: Vec::new() }
    }

    pub fn of(l: u32, n: usize, vs: &[Vec<u32>]) -> Self {
        let mut e = Self::new(l, n);
        for v in vs {
            e.insert(v);
        }
        e
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let l = self.l as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % l).collect();
        for (p, row) in &self.rows {
            let f = w[*p];
            if f != 0 {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = (*x + (l - f) * *r as u64) % l;
                }
            }
        }
        w.into_iter().map(|x| x as u32).collect()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else { return false };
        let inv = modpow(w[p] as u64, self.l as u64 - 2, self.l as u64);
        let w: Vec<u32> = w.iter().map(|&x| (x as u64 * inv % self.l as u64) as u32).collect();
        self.rows.push((p, w));
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

pub fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Every vector of the span of `basis` (which must be independent).
pub fn elements(l: u32, basis: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * l as usize);
        for v in &out {
            for c in 0..l {
                next.push(v.iter().zip(b).map(|(x, y)| (x + c * y) % l).collect());
            }
        }
        out = next;
    }
    out
}

/// `dim(A ∩ B)` by counting the vectors of the smaller space that lie in
/// the larger one, falling back to `dim A + dim B − dim(A + B)` when that
/// space has more than `limit` vectors.
pub fn intersection_dim(l: u32, n: usize, a: &[Vec<u32>], b: &[Vec<u32>], limit: usize) -> usize {
    let ea = Echelon::of(l, n, a);
    let eb = Echelon::of(l, n, b);
    let (small, big) = if ea.dim() <= eb.dim() { (&ea, &eb) } else { (&eb, &ea) };
    if (l as usize).pow(small.dim() as u32) <= limit {
        let count = elements(l, &small.basis(), n).iter().filter(|v| big.contains(v)).count();
        let mut d = 0;
        let mut c = 1;
        while c < count {
            c *= l as usize;
            d += 1;
        }
        assert_eq!(c, count, "intersection size is a power of l");
        d
    } else {
        let mut sum = ea.clone();
        for v in eb.basis() {
            sum.insert(&v);
        }
        ea.dim() + eb.dim() - sum.dim()
    }
}

pub fn mat_vec(l: u32, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| (row.iter().zip(v).map(|(a, b)| *a as u64 * *b as u64).sum::<u64>() % l as u64) as u32)
        .collect()
}

pub fn mat_mul(l: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (row.iter().zip(b).map(|(x, r)| *x as u64 * r[j] as u64).sum::<u64>() % l as u64) as u32)
                .collect()
        })
        .collect()
}

pub fn rank(l: u32, m: &[Vec<u32>]) -> usize {
    Echelon::of(l, m[0].len(), m).dim()
}

/// Columns of `m` as vectors.
pub fn columns(m: &[Vec<u32>]) -> Vec<Vec<u32>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Orbit closure: keep applying generators until nothing new appears.
pub fn orbit_span(l: u32, n: usize, gens: &[Vec<Vec<u32>>], points: &[Vec<u32>]) -> Echelon {
    let mut e = Echelon::new(l, n);
    let mut queue: Vec<Vec<u32>> = points.to_vec();
    while let Some(v) = queue.pop() {
        if e.insert(&v) {
            for g in gens {
                queue.push(mat_vec(l, g, &v));
            }
        }
    }
    e
}

pub fn flat(m: &[Vec<u32>]) -> Vec<i64> {
    m.iter().flatten().map(|&x| x as i64).collect()
}

pub fn matrix(l: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0..l, n), n)
}

pub fn invertible(l: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    matrix(l, n).prop_filter("invertible", move |m| rank(l, m) == n)
}

/// A random filtration `M̄2 ⊆ M̄1` (first `t`, first `t + 2a` columns of an
/// invertible matrix) and a random subspace `κ`.
#[derive(Clone, Debug)]
pub struct DeltaInstance {
    pub l: u32,
    pub t: usize,
    pub a: usize,
    pub basis: Vec<Vec<u32>>,
    pub kappa: Vec<Vec<u32>>,
}

impl DeltaInstance {
    pub fn n(&self) -> usize {
        2 * (self.t + self.a)
    }

    pub fn m2(&self) -> Vec<Vec<u32>> {
        self.basis[..self.t].to_vec()
    }

    pub fn m1(&self) -> Vec<Vec<u32>> {
        self.basis[..self.t + 2 * self.a].to_vec()
    }
}

pub fn delta_instance() -> impl Strategy<Value = DeltaInstance> {
    (prop_oneof![Just(3u32), Just(5u32)], 0usize..=4, 0usize..=4)
        .prop_filter("1 ≤ d ≤ 4", |(_, t, a)| (1..=4).contains(&(t + a)))
        .prop_flat_map(|(l, t, a)| {
            let n = 2 * (t + a);
            (
                Just(l),
                Just(t),
                Just(a),
                invertible(l, n),
                proptest::collection::vec(proptest::collection::vec(0..l, n), 0..=n),
            )
        })
        .prop_map(|(l, t, a, p, kappa)| DeltaInstance { l, t, a, basis: columns(&p), kappa })
}

/// `P·(I + E)·P⁻¹` with `E` strictly block upper triangular: `(σ − 1)² = 0`.
pub fn unipotent(l: u32, n: usize) -> impl Strategy<Value = (Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    (invertible(l, n), 0..=n / 2, matrix(l, n)).prop_map(move |(p, r, x)| {
        let mut e = vec![vec![0u32; n]; n];
        for i in 0..r {
            for j in r.max(n - r)..n {
                e[i][j] = x[i][j];
            }
        }
        let p_inv = inverse(l, &p);
        let one_plus_e: Vec<Vec<u32>> =
            (0..n).map(|i| (0..n).map(|j| (e[i][j] + u32::from(i == j)) % l).collect()).collect();
        (mat_mul(l, &mat_mul(l, &p, &one_plus_e), &p_inv), p)
    })
}

/// Gauss–Jordan inverse of an invertible matrix.
pub fn inverse(l: u32, m: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = m.len();
    let lu = l as u64;
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().map(|&x| x as u64).chain((0..n).map(|j| u64::from(i == j))).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_multiple_of(lu)).expect("invertible");
        a.swap(c, p);
        let inv = modpow(a[c][c], lu - 2, lu);
        for x in a[c].iter_mut() {
            *x = *x * inv % lu;
        }
        let pr = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + (lu - f) * y) % lu;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].iter().map(|&x| x as u32).collect()).collect()
}
