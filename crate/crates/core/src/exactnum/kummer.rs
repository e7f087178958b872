use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use super::primes::factor_u64;
use super::rat::Rat;
use crate::{Error, Result};

/// Prime-factorization exponents of a positive rational, reduced mod `l`
/// (zero entries dropped).
pub fn kummer_exponents(m: &Rat, l: u64) -> Result<BTreeMap<u64, u64>> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!("{m} is not positive")));
    }
    let small = |n: &num_bigint::BigInt| {
        n.to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("{n} too large to factor")))
    };
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (p, e) in factor_u64(small(m.numer())?) {
        *out.entry(p).or_default() += e as i64;
    }
    for (p, e) in factor_u64(small(m.denom())?) {
        *out.entry(p).or_default() -= e as i64;
    }
    Ok(out
        .into_iter()
        .map(|(p, e)| (p, e.rem_euclid(l as i64) as u64))
        .filter(|(_, e)| !e.is_zero())
        .collect())
}

/// `k ∈ 1..l` with `m ≡ n^k` modulo `l`-th powers of rationals, if any.
pub fn kummer_class_equiv(m: &Rat, n: &Rat, l: u64) -> Result<Option<u64>> {
    let em = kummer_exponents(m, l)?;
    let en = kummer_exponents(n, l)?;
    let primes: Vec<u64> = em.keys().chain(en.keys()).copied().collect();
    Ok((1..l).find(|&k| {
        primes.iter().all(|p| {
            let a = em.get(p).copied().unwrap_or(0);
            let b = en.get(p).copied().unwrap_or(0);
            a == (b * k) % l
        })
    }))
}

/// Whether `Q(ζ_l, m^(1/l)) / Q(ζ_l)` is unramified above `l`, for an odd
/// prime `l` and an integer `m` prime to `l`: true iff `m^(l−1) ≡ 1 mod l²`.
pub fn kummer_unramified_at_l(m: u64, l: u64) -> Result<bool> {
    if l < 3 || m.is_multiple_of(l) {
        return Err(Error::InvalidArgument(format!("need odd l and m prime to l (m = {m}, l = {l})")));
    }
    let l2 = l * l;
    let r = (0..l - 1).fold(1u64, |acc, _| acc * (m % l2) % l2);
    Ok(r == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::int;

    #[test]
    fn radicands_of_the_same_field() {
        assert_eq!(kummer_class_equiv(&int(576), &int(18), 5).unwrap(), Some(1));
        assert_eq!(kummer_class_equiv(&int(24), &int(18), 5).unwrap(), Some(3));
        assert_eq!(kummer_class_equiv(&int(2), &int(3), 5).unwrap(), None);
    }

    #[test]
    fn unramified_radicands() {
        assert!(kummer_unramified_at_l(18, 5).unwrap());
        assert!(kummer_unramified_at_l(24, 5).unwrap());
        assert!(!kummer_unramified_at_l(2, 5).unwrap());
        assert!(!kummer_unramified_at_l(3, 5).unwrap());
        assert!(kummer_unramified_at_l(10, 3).unwrap());
        assert!(kummer_unramified_at_l(5, 5).is_err());
    }

    #[test]
    fn exponent_vector_of_576() {
        // 576 = 2^6 · 3^2
        let e = kummer_exponents(&int(576), 5).unwrap();
        assert_eq!(e, BTreeMap::from([(2, 1), (3, 2)]));
    }
}
