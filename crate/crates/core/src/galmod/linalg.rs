use std::fmt;

use serde::Serialize;

use crate::exactnum::is_prime;
use crate::{Error, Result};

fn inv_mod(a: u32, l: u32) -> u32 {
    // l is prime and small; Fermat
    let mut r = 1u64;
    let mut b = a as u64 % l as u64;
    let mut e = l - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % l as u64;
        }
        b = b * b % l as u64;
        e >>= 1;
    }
    r as u32
}

/// Square or rectangular matrix over `F_l`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FlMatrix {
    l: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.l)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl FlMatrix {
    pub fn new(l: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if !is_prime(l as u64) {
            return Err(Error::NotPrime(l as u64));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!("expected {} entries, got {}", rows * cols, entries.len())));
        }
        let data = entries.iter().map(|&x| x.rem_euclid(l as i64) as u32).collect();
        Ok(Self { l, rows, cols, data })
    }

    pub fn square(l: u32, n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(l, n, n, entries)
    }

    pub fn zero(l: u32, rows: usize, cols: usize) -> Self {
        Self { l, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(l: u32, n: usize) -> Self {
        Self::scalar(l, n, 1)
    }

    pub fn scalar(l: u32, n: usize, c: i64) -> Self {
        let mut m = Self::zero(l, n, n);
        let c = c.rem_euclid(l as i64) as u32;
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// `(a b; c d)` from square blocks of equal size.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let k = a.rows;
        let n = 2 * k;
        let mut m = Self::zero(a.l, n, n);
        for i in 0..k {
            for j in 0..k {
                m.data[i * n + j] = a.get(i, j);
                m.data[i * n + k + j] = b.get(i, j);
                m.data[(k + i) * n + j] = c.get(i, j);
                m.data[(k + i) * n + k + j] = d.get(i, j);
            }
        }
        m
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let l = self.l as u64;
        let mut out = Self::zero(self.l, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * o.get(k, j) as u64) % l) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + b) % self.l).collect();
        Self { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + self.l - b) % self.l).collect();
        Self { data, ..self.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.l as i64) as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c % self.l as u64) as u32).collect();
        Self { data, ..self.clone() }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::identity(self.l, self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.l, self.rows)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let l = self.l as u64;
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u64 * v[j] as u64).sum::<u64>() % l)
            .map(|x| x as u32)
            .collect()
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.l, self.cols, (0..self.rows).map(|r| self.row(r).to_vec())).dim()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let l = self.l;
        let mut a: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            let s = inv_mod(a[col][col], l);
            for x in a[col].iter_mut() {
                *x = (*x as u64 * s as u64 % l as u64) as u32;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col] as u64;
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(pivot_row) {
                        *x = ((*x as u64 + (l as u64 - f) * p as u64) % l as u64) as u32;
                    }
                }
            }
        }
        let data = a.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Self { l, rows: n, cols: n, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Kernel as a subspace of `F_l^cols`.
    pub fn kernel(&self) -> Subspace {
        let rref = Subspace::span(self.l, self.cols, (0..self.rows).map(|r| self.row(r).to_vec()));
        let pivots = rref.pivots();
        let l = self.l;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &p) in rref.basis().iter().zip(&pivots) {
                v[p] = (l - row[free]) % l;
            }
            basis.push(v);
        }
        Subspace::span(l, self.cols, basis)
    }

    /// Image (column space) as a subspace.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.l, self.rows, (0..self.cols).map(|c| (0..self.rows).map(|r| self.get(r, c)).collect()))
    }
}

/// Subspace of `F_l^n`, stored as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    l: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(l: u32, n: usize) -> Self {
        Self { l, n, basis: Vec::new() }
    }

    pub fn full(l: u32, n: usize) -> Self {
        Self::span(l, n, (0..n).map(|i| unit(n, i)))
    }

    /// Span of coordinate vectors `e_i` for `i` in `idx`.
    pub fn coordinate(l: u32, n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        Self::span(l, n, idx.into_iter().map(|i| unit(n, i)))
    }

    pub fn span(l: u32, n: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), n, "vector length");
                v.into_iter().map(|x| x % l).collect()
            })
            .collect();
        let mut r = 0;
        for col in 0..n {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
            rows.swap(r, piv);
            let s = inv_mod(rows[r][col], l) as u64;
            for x in rows[r].iter_mut() {
                *x = (*x as u64 * s % l as u64) as u32;
            }
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[col] != 0 {
                    let f = row[col] as u64;
                    for (x, p) in row.iter_mut().zip(&pr) {
                        *x = ((*x as u64 + (l as u64 - f) * *p as u64) % l as u64) as u32;
                    }
                }
            }
            r += 1;
        }
        rows.truncate(r);
        Self { l, n, basis: rows }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|&x| x != 0).expect("non-zero row")).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w: Vec<u32> = v.iter().map(|x| x % self.l).collect();
        let l = self.l as u64;
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            let f = w[p] as u64;
            if f != 0 {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = ((*x as u64 + (l - f) * *r as u64) % l) as u32;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.basis.iter().all(|v| o.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        Self::span(self.l, self.n, self.basis.iter().chain(&o.basis).cloned())
    }

    pub fn intersect(&self, o: &Self) -> Self {
        // v = Σ a_i u_i = Σ b_j w_j; solve via the kernel of [U; -W]ᵀ
        let k1 = self.dim();
        let k2 = o.dim();
        if k1 == 0 || k2 == 0 {
            return Self::zero(self.l, self.n);
        }
        let l = self.l as i64;
        let mut entries = Vec::with_capacity(self.n * (k1 + k2));
        for c in 0..self.n {
            for u in &self.basis {
                entries.push(u[c] as i64);
            }
            for w in &o.basis {
                entries.push((l - w[c] as i64) % l);
            }
        }
        let m = FlMatrix::new(self.l, self.n, k1 + k2, &entries).expect("prime");
        let ker = m.kernel();
        let vecs = ker.basis().iter().map(|coef| {
            let mut v = vec![0u64; self.n];
            for (a, u) in coef[..k1].iter().zip(&self.basis) {
                for (x, y) in v.iter_mut().zip(u) {
                    *x += *a as u64 * *y as u64;
                }
            }
            v.into_iter().map(|x| (x % self.l as u64) as u32).collect()
        });
        Self::span(self.l, self.n, vecs.collect::<Vec<_>>())
    }

    /// `g(W)`.
    pub fn image_under(&self, g: &FlMatrix) -> Self {
        Self::span(self.l, self.n, self.basis.iter().map(|v| g.apply(v)).collect::<Vec<_>>())
    }

    /// First basis vector whose image under `g` leaves the subspace.
    pub fn stability_witness(&self, g: &FlMatrix) -> Option<Vec<u32>> {
        self.basis.iter().find(|v| !self.contains(&g.apply(v))).cloned()
    }

    pub fn is_fixed_by(&self, g: &FlMatrix) -> bool {
        self.basis.iter().all(|v| g.apply(v) == *v)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
