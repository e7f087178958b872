use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::primes::is_prime;
use super::qpoly::Poly;
use super::rat::{inv_mod, rat_mod_p};
use crate::{Error, Result};

/// Polynomial over `F_p`, coefficients in `[0, p)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    /// Reduce a rational polynomial; fails when a denominator vanishes mod `p`.
    pub fn from_poly(f: &Poly, p: u64) -> Result<Self> {
        let c = f
            .coeffs()
            .iter()
            .map(|c| rat_mod_p(c, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(p, c))
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, vec![])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let dd = d.degree();
        let inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulmod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// For `f = g(x^p)` returns `g^(1/p)`; in `F_p` every coefficient is its own p-th root.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn cmp_key(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

fn squarefree_factors(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let fd = f.derivative();
    if fd.is_zero() {
        return squarefree_factors(&f.pth_root())
            .into_iter()
            .map(|(g, m)| (g, m * p as u32))
            .collect();
    }
    let mut c = f.gcd(&fd);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        out.extend(
            squarefree_factors(&c.pth_root())
                .into_iter()
                .map(|(g, m)| (g, m * p as u32)),
        );
    }
    out
}

/// Distinct-degree split of a monic squarefree polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let pe = BigUint::from(p);
    let mut d = 0;
    while 2 * (d + 1) <= rest.degree() {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest.monic(), deg));
    }
    out
}

/// Equal-degree split (Cantor–Zassenhaus, trace map in characteristic 2).
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.p;
    if f.degree() == d {
        return vec![f.monic()];
    }
    loop {
        let a = FpPoly::new(p, (0..f.degree()).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let probe = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&FpPoly::one(p))
        };
        let g = probe.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization of `f` over `F_p` into monic irreducibles with
/// multiplicities, sorted by degree then coefficients. The leading unit is
/// dropped.
pub fn factor_mod_p(f: &Poly, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = FpPoly::from_poly(f, p)?;
    if fp.is_zero() {
        return Err(Error::VanishesModP(p));
    }
    factor_fp(&fp)
}

/// Factorization of a polynomial already reduced mod `p`.
pub fn factor_fp(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::VanishesModP(f.p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.p);
    let mut out = Vec::new();
    for (g, m) in squarefree_factors(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_key(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(p: u64, fs: &[(FpPoly, u32)]) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn cube_of_linear_in_char_three() {
        let f = factor_mod_p(&Poly::from_ints(&[-10, 0, 0, 1]), 3).unwrap();
        assert_eq!(f, vec![(FpPoly::new(3, vec![2, 1]), 3)]);
    }

    #[test]
    fn sextic_mod_three() {
        let f = factor_mod_p(&Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1]), 3).unwrap();
        assert_eq!(
            f,
            vec![
                (FpPoly::new(3, vec![0, 1]), 2),
                (FpPoly::new(3, vec![1, 1]), 2),
                (FpPoly::new(3, vec![2, 1]), 2),
            ]
        );
    }

    #[test]
    fn cyclotomic_five_irreducible_mod_two() {
        let f = factor_mod_p(&Poly::from_ints(&[1, 1, 1, 1, 1]), 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.degree(), 4);
    }

    #[test]
    fn vanishing_input_rejected() {
        assert!(matches!(
            factor_mod_p(&Poly::from_ints(&[3, 6, 9]), 3),
            Err(Error::VanishesModP(3))
        ));
    }

    #[test]
    fn product_reconstructs_input() {
        let f = Poly::from_ints(&[7, -3, 0, 5, 1, 0, 2, 11, 0, 1]);
        for p in [2, 3, 5, 7, 97] {
            let fs = factor_mod_p(&f, p).unwrap();
            assert_eq!(product(p, &fs), FpPoly::from_poly(&f, p).unwrap().monic());
        }
    }
}
