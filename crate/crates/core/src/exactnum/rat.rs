use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

/// Reduced big rational; the denominator is always positive.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Terminating decimal when the denominator is `2^a 5^b`, else `n/d`.
pub fn rat_display(x: &Rat) -> String {
    let mut d = x.denom().clone();
    let mut counts = [0usize; 2];
    for (i, p) in [2u32, 5].into_iter().enumerate() {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
            counts[i] += 1;
        }
    }
    if d != BigInt::from(1) {
        return x.to_string();
    }
    let digits = counts[0].max(counts[1]);
    if digits == 0 {
        return x.numer().to_string();
    }
    let n = (x * Rat::from_integer(BigInt::from(10).pow(digits as u32))).to_integer();
    let s = format!("{:0>width$}", n.magnitude().to_string(), width = digits + 1);
    let (i, f) = s.split_at(s.len() - digits);
    format!("{}{i}.{f}", if n < BigInt::zero() { "-" } else { "" })
}

/// `x mod p` for a rational whose denominator is prime to `p`.
pub(crate) fn rat_mod_p(x: &Rat, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor_u(&pb);
    if den == 0 {
        return Err(Error::DenominatorDivisible(p));
    }
    let num = x.numer().mod_floor_u(&pb);
    Ok(num * inv_mod(den, p) % p)
}

pub(crate) trait ModFloorU {
    fn mod_floor_u(&self, m: &BigInt) -> u64;
}

impl ModFloorU for BigInt {
    fn mod_floor_u(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(m);
        u64::try_from(r).expect("residue fits in u64")
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// `p`-adic valuation of a non-zero rational.
pub fn padic_valuation(x: &Rat, p: u64) -> i64 {
    use num_integer::Integer;
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut k = 0i64;
        while n.is_multiple_of(&pb) {
            n /= &pb;
            k += 1;
        }
        k
    };
    count(x.numer()) - count(x.denom())
}

#[cfg(test)]
mod display_tests {
    use super::*;

    #[test]
    fn decimals_when_terminating() {
        assert_eq!(rat_display(&rat(31645, 1000)), "31.645");
        assert_eq!(rat_display(&rat(-1, 8)), "-0.125");
        assert_eq!(rat_display(&rat(7, 1)), "7");
        assert_eq!(rat_display(&rat(1, 3)), "1/3");
    }
}
