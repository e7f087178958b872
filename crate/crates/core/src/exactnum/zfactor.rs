//! Factorization over `Q` by the Zassenhaus method: factor modulo a good
//! prime, Hensel-lift, then recombine lifted factors by trial division.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{factor_fp, FpPoly};
use super::primes::primes_up_to;
use super::qpoly::Poly;
use super::rat::ModFloorU;
use crate::{Error, Result};

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in `(-m/2, m/2]`.
fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, a.iter().map(|c| c.mod_floor_u(&pb)).collect())
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    a.iter().map(|c| c / &g * sign).collect()
}

fn to_poly(a: &[BigInt]) -> Poly {
    Poly::from_bigints(a)
}

/// Lift `f ≡ g·h (mod p)` to `mod p^k`, with `g` monic and `lc(h) = lc(f)`.
fn hensel_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = g.xgcd(h);
    debug_assert_eq!(one.degree(), 0);
    let lc = f.last().expect("non-zero").clone();
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    *hz.last_mut().expect("non-zero") = lc;
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let e = zsub(f, &zmul(&gz, &hz));
        debug_assert!(e.iter().all(|c| c.is_multiple_of(&pj)));
        let e_fp = to_fp(&e.iter().map(|c| c / &pj).collect::<Vec<_>>(), p);
        let (q, dg) = t.mul(&e_fp).div_rem(g);
        let dh = e_fp.mul(&s).add(&q.mul(h));
        let add = |base: &mut ZPoly, d: &FpPoly| {
            for (i, c) in d.coeffs().iter().enumerate() {
                if i >= base.len() {
                    base.resize(i + 1, BigInt::zero());
                }
                base[i] += &pj * BigInt::from(*c);
            }
        };
        add(&mut gz, &dg);
        add(&mut hz, &dh);
        pj *= &pb;
    }
    (gz, hz)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Factor a primitive squarefree integer polynomial of degree ≥ 1.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut good = 0;
    for p in primes_up_to(2000) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.gcd(&fp.derivative()).degree() > 0 {
            continue;
        }
        let facs: Vec<FpPoly> = factor_fp(&fp)
            .expect("non-zero mod p")
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        let degs: Vec<usize> = facs.iter().map(FpPoly::degree).collect();
        allowed = allowed.intersection(&subset_sums(&degs)).copied().collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        good += 1;
        if good >= 8 || allowed.len() == 2 {
            break;
        }
    }
    let (p, factors) = best.expect("some prime is good for a squarefree polynomial");
    if allowed.len() == 2 || factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    // Lift the factorization one factor at a time.
    let lc_fp = lc.mod_floor_u(&pb);
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut cur = f.to_vec();
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..]
            .iter()
            .fold(FpPoly::new(p, vec![lc_fp]), |acc, g| acc.mul(g));
        let (g, h) = hensel_pair(&cur, &factors[i], &rest, p, k);
        lifted.push(zmod(&g, &pk));
        cur = zmod(&h, &pk);
    }
    let lc_inv = lc.extended_gcd(&pk).x.mod_floor(&pk);
    lifted.push(zmod(&cur.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &pk));

    let mut out = Vec::new();
    let mut remaining = f.to_vec();
    let mut pool: Vec<ZPoly> = lifted;
    let mut size = 1;
    let mut pristine = true;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in combinations(pool.len(), size) {
            let deg: usize = subset.iter().map(|&i| pool[i].len() - 1).sum();
            if pristine && !allowed.contains(&deg) {
                continue;
            }
            let c = remaining.last().expect("non-zero").clone();
            let prod = subset
                .iter()
                .fold(vec![c], |acc, &i| zmod(&zmul(&acc, &pool[i]), &pk));
            let cand = primitive(&zsym(&prod, &pk));
            if let Some(q) = to_poly(&remaining).div_exact(&to_poly(&cand)) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                remaining = primitive(&q.primitive_integer());
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                pristine = false;
            }
            None => size += 1,
        }
    }
    out.push(remaining);
    out
}

fn sort_key(a: &Poly) -> (usize, Vec<i64>) {
    (
        a.degree(),
        a.coeffs()
            .iter()
            .rev()
            .map(|c| c.to_integer().to_i64().unwrap_or(i64::MAX))
            .collect(),
    )
}

/// Factorization over `Q` into primitive integer irreducibles with positive
/// leading coefficient, with multiplicities. The rational content is dropped.
pub fn factor_over_q(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        for h in zassenhaus(&g.primitive_integer()) {
            out.push((to_poly(&h), m));
        }
    }
    out.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub fn is_irreducible_over_q(f: &Poly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    matches!(factor_over_q(f).as_deref(), Ok([(_, 1)]))
}
