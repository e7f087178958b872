//! Prime decomposition from the defining polynomial, guarded by
//! Dedekind's index criterion.

use std::collections::BTreeMap;

use serde::Serialize;

use super::fixture::FieldFixture;
use crate::exactnum::{factor_mod_p, AlgebraicNumber, FpPoly, Poly, Rat};
use crate::verdict::{Status, Verdict};
use crate::Result;

/// Multiset of `(e, f)` over the primes above `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitShape(pub BTreeMap<(u32, u32), usize>);

impl Serialize for SplitShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Part {
            e: u32,
            f: u32,
            count: usize,
        }
        let parts: Vec<Part> = self.0.iter().map(|(&(e, f), &count)| Part { e, f, count }).collect();
        parts.serialize(s)
    }
}

impl SplitShape {
    pub fn uniform(e: u32, f: u32, count: usize) -> Self {
        Self(BTreeMap::from([((e, f), count)]))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(&(e, f), &c)| (e * f) as u64 * c as u64).sum()
    }

    pub fn prime_count(&self) -> usize {
        self.0.values().sum()
    }
}

fn lift(g: &FpPoly) -> Poly {
    Poly::from_ints(&g.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>())
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub p: u64,
    /// `(degree, multiplicity)` of each irreducible factor mod `p`.
    pub factors: Vec<(usize, u32)>,
    pub shape: SplitShape,
    /// `p ∤ [O : Z[v]]`, so the factorization describes the primes.
    pub dedekind_ok: bool,
}

/// Factors `f mod p` and runs Dedekind's test: with `ḡ = ∏ g_i`,
/// `h̄ = ∏ g_i^(e_i − 1)` and `F = (f − g·h)/p`, the index is prime to `p`
/// iff `gcd(F̄, ḡ, h̄) = 1`.
pub fn decompose(f: &Poly, p: u64) -> Result<Decomposition> {
    let fac = factor_mod_p(f, p)?;
    let mut g = Poly::one();
    let mut h = Poly::one();
    let mut shape = SplitShape::default();
    for (gi, e) in &fac {
        let l = lift(gi);
        g = &g * &l;
        for _ in 1..*e {
            h = &h * &l;
        }
        *shape.0.entry((*e, gi.degree() as u32)).or_default() += 1;
    }
    let big_f = (f - &(&g * &h)).scale(&Rat::new(1.into(), (p as i64).into()));
    let fbar = FpPoly::from_poly(&big_f, p)?;
    let d = fbar.gcd(&FpPoly::from_poly(&g, p)?).gcd(&FpPoly::from_poly(&h, p)?);
    Ok(Decomposition {
        p,
        factors: fac.iter().map(|(gi, e)| (gi.degree(), *e)).collect(),
        shape,
        dedekind_ok: !d.is_zero() && d.degree() == 0,
    })
}

/// Compares the decomposition of `p` with an expected shape and checks
/// `∏ N(π_i)^(e_i) = p^n`.
pub fn splitting_check(fix: &FieldFixture, p: u64, expected: &SplitShape) -> Verdict {
    let v = Verdict::new(format!("split-{}-{p}", fix.label), "splits completely in F")
        .with("field", &fix.label)
        .with("expected", expected);
    let d = match decompose(fix.poly(), p) {
        Ok(d) => d,
        Err(e) => return v.status(Status::Inconclusive, format!("{}: {e}", fix.label)),
    };
    let n = fix.degree() as u64;
    let v = v.with("decomposition", &d).with("norm_exponent", d.shape.degree()).with("degree", n);
    if !d.dedekind_ok {
        return v.status(
            Status::Inconclusive,
            format!("{}: {p} divides the index of the generator; the factorization says nothing", fix.label),
        );
    }
    let ok = d.shape == *expected && d.shape.degree() == n;
    v.decide(
        ok,
        format!("{}: {p} has {} primes with (e, f) counts {:?}", fix.label, d.shape.prime_count(), d.shape.0),
    )
}

fn pow_mod(b: u64, mut e: u128, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

/// Decomposition of `p ≠ l` in `Q(ζ_l, m_1^(1/l), …, m_k^(1/l))`, one
/// Kummer step at a time. At a prime with residue field `F_q`, `x^l − m`
/// splits when `m^((q−1)/l) ≡ 1` and is inert otherwise; a radicand with
/// `l ∤ v_P(m)` ramifies totally. Works when the defining polynomial of the
/// compositum cannot (common index divisors).
pub fn kummer_tower_shape(l: u64, radicands: &[u64], p: u64) -> Result<SplitShape> {
    use crate::exactnum::is_prime;
    use crate::Error;
    if !is_prime(l) || !is_prime(p) || p == l || l == 2 {
        return Err(Error::InvalidArgument(format!("need distinct primes with l odd, got l = {l}, p = {p}")));
    }
    let f0 = (1..l).find(|&k| pow_mod(p, k as u128, l) == 1).expect("p is a unit mod l") as u32;
    let mut primes: Vec<(u32, u32)> = vec![(1, f0); ((l - 1) / f0 as u64) as usize];
    for &m in radicands {
        let mut v = 0u32;
        let mut rest = m;
        while rest % p == 0 {
            rest /= p;
            v += 1;
        }
        let mut next = Vec::new();
        for (e, f) in primes {
            if v > 0 {
                if ((v * e) as u64).is_multiple_of(l) {
                    return Err(Error::InvalidArgument(format!("l divides v_P({m}); ramification undetermined")));
                }
                next.push((e * l as u32, f));
            } else {
                let q = (p as u128).pow(f);
                if pow_mod(m, (q - 1) / l as u128, p) == 1 {
                    next.extend(std::iter::repeat_n((e, f), l as usize));
                } else {
                    next.push((e, f * l as u32));
                }
            }
        }
        primes = next;
    }
    let mut shape = SplitShape::default();
    for ef in primes {
        *shape.0.entry(ef).or_default() += 1;
    }
    Ok(shape)
}

/// `ord_π(x)` at each fixture prime, `None` when it is at least `e`.
pub fn valuations(fix: &FieldFixture, x: &AlgebraicNumber) -> Result<Vec<Option<usize>>> {
    fix.primes
        .iter()
        .map(|pr| {
            let r = x.reduce_truncated(pr, pr.claimed_e as usize)?;
            Ok(r.coeffs().iter().position(|&c| c != 0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_mod_three() {
        let f = Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1]);
        let d = decompose(&f, 3).unwrap();
        assert!(d.dedekind_ok);
        assert_eq!(d.shape, SplitShape::uniform(2, 1, 3));
    }

    #[test]
    fn non_monogenic_index_detected() {
        // x² + 3 generates Z[√−3], of index 2 in the maximal order
        let d = decompose(&Poly::from_ints(&[3, 0, 1]), 2).unwrap();
        assert!(!d.dedekind_ok);
        // x² − 5: index 2 again
        assert!(!decompose(&Poly::from_ints(&[-5, 0, 1]), 2).unwrap().dedekind_ok);
        // x² + x + 1 is monogenic
        let e = decompose(&Poly::from_ints(&[1, 1, 1]), 2).unwrap();
        assert!(e.dedekind_ok);
        assert_eq!(e.shape, SplitShape::uniform(1, 2, 1));
    }

    #[test]
    fn tower_decomposition_of_two() {
        // 2 inert in Q(ζ3), split by 5^(1/3), ramified by 2^(1/3)
        assert_eq!(kummer_tower_shape(3, &[5, 2], 2).unwrap(), SplitShape::uniform(3, 2, 3));
        // 7 splits in Q(ζ3); cubes mod 7 are {1, 6}
        assert_eq!(kummer_tower_shape(3, &[], 7).unwrap(), SplitShape::uniform(1, 1, 2));
        assert_eq!(kummer_tower_shape(3, &[2], 7).unwrap(), SplitShape::uniform(1, 3, 2));
        assert_eq!(kummer_tower_shape(3, &[6], 7).unwrap(), SplitShape::uniform(1, 1, 6));
        assert!(kummer_tower_shape(3, &[8], 2).is_err());
    }

    #[test]
    fn totally_split_count_is_degree() {
        // 11 ≡ 1 mod 5 splits completely in Q(ζ5)
        let d = decompose(&Poly::from_ints(&[1, 1, 1, 1, 1]), 11).unwrap();
        assert_eq!(d.shape, SplitShape::uniform(1, 1, 4));
        assert_eq!(d.shape.prime_count() as u64, d.shape.degree());
    }
}
