use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::primes::factor_u64;
use super::rat::Rat;

/// An exact positive real `∏ p^(e_p)` with prime bases and rational
/// exponents. Zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalMonomial {
    factors: BTreeMap<u64, Rat>,
}

/// The integers behind one exact comparison: `lhs` and `rhs` are the two
/// sides after raising to `power` and clearing denominators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClearedComparison {
    pub power: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub rhs: BigInt,
    #[serde(serialize_with = "ser_ordering")]
    pub ordering: Ordering,
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_ordering<S: Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    })
}

impl RadicalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `base^exp` for a positive integer base, split into prime powers.
    pub fn power_of(base: u64, exp: Rat) -> Self {
        assert!(base > 0, "radical base must be positive");
        let mut m = Self::one();
        for (p, k) in factor_u64(base) {
            m.add_exponent(p, exp.clone() * BigInt::from(k));
        }
        m
    }

    /// Convenience: `base^(num/den)`.
    pub fn pow_frac(base: u64, num: i64, den: i64) -> Self {
        Self::power_of(base, BigRational::new(num.into(), den.into()))
    }

    /// A positive rational as a monomial with integer exponents.
    pub fn from_rational(q: &Rat) -> Self {
        assert!(q.is_positive(), "monomial value must be positive");
        let mut m = Self::one();
        for (part, sign) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
            let v = part.to_u64().expect("rational parts fit in u64");
            for (p, k) in factor_u64(v) {
                m.add_exponent(p, Rat::from_integer(BigInt::from(sign * k as i64)));
            }
        }
        m
    }

    fn add_exponent(&mut self, p: u64, e: Rat) {
        let slot = self.factors.entry(p).or_insert_with(Rat::zero);
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(&p);
        }
    }

    pub fn exponent(&self, p: u64) -> Rat {
        self.factors.get(&p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.factors.iter().map(|(p, e)| (*p, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in &other.factors {
            out.add_exponent(*p, e.clone());
        }
        out
    }

    pub fn pow(&self, e: &Rat) -> Self {
        let mut out = Self::one();
        for (p, x) in &self.factors {
            out.add_exponent(*p, x * e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        self.pow(&-Rat::one())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Restriction to the primes in `keep`.
    pub fn part(&self, keep: &[u64]) -> Self {
        let factors = self
            .factors
            .iter()
            .filter(|(p, _)| keep.contains(p))
            .map(|(p, e)| (*p, e.clone()))
            .collect();
        Self { factors }
    }

    /// Least common multiple of the exponent denominators.
    fn common_power(&self) -> BigInt {
        self.factors
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// `self^B = num/den` with `B` the exponent-denominator lcm.
    fn cleared(&self, b: &BigInt) -> (BigInt, BigInt) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let k = (e * b).to_integer();
            let k_abs = k.abs().to_u32().expect("exponent fits in u32");
            let pk = BigInt::from(*p).pow(k_abs);
            if k.is_positive() {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        (num, den)
    }

    /// Exact comparison against a positive rational threshold.
    pub fn compare_rat(&self, threshold: &Rat) -> ClearedComparison {
        assert!(threshold.is_positive(), "threshold must be positive");
        let b = self.common_power();
        let (num, den) = self.cleared(&b);
        let power = b.to_u32().expect("common power fits in u32");
        let lhs = num * threshold.denom().pow(power);
        let rhs = threshold.numer().pow(power) * den;
        ClearedComparison {
            power: power as u64,
            ordering: lhs.cmp(&rhs),
            lhs,
            rhs,
        }
    }

    pub fn exact_compare(&self, threshold: &Rat) -> Ordering {
        self.compare_rat(threshold).ordering
    }

    /// Exact comparison of two monomials.
    pub fn compare(&self, other: &Self) -> ClearedComparison {
        let q = self.div(other);
        let b = q.common_power();
        let (num, den) = q.cleared(&b);
        ClearedComparison {
            power: b.to_u64().expect("power fits"),
            ordering: num.cmp(&den),
            lhs: num,
            rhs: den,
        }
    }

    /// `floor(value · 10^digits)`, exact.
    pub fn scaled_floor(&self, digits: u32) -> BigUint {
        let b = self.common_power();
        let power = b.to_u32().expect("power fits");
        let (num, den) = self.cleared(&b);
        let scaled = num * BigInt::from(10u32).pow(digits * power) / den;
        scaled.to_biguint().expect("positive").nth_root(power)
    }

    /// Decimal string truncated (not rounded) to `digits` places.
    pub fn decimal(&self, digits: u32) -> String {
        let s = self.scaled_floor(digits).to_string();
        let d = digits as usize;
        if d == 0 {
            return s;
        }
        let padded = format!("{s:0>width$}", width = d + 1);
        let (int_part, frac) = padded.split_at(padded.len() - d);
        format!("{int_part}.{frac}")
    }

    pub fn to_f64(&self) -> f64 {
        self.factors
            .iter()
            .map(|(p, e)| (*p as f64).powf(e.to_f64().unwrap_or(f64::NAN)))
            .product()
    }
}

impl fmt::Display for RadicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if e.is_integer() {
                    format!("{p}^{e}")
                } else {
                    format!("{p}^({e})")
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl Serialize for RadicalMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    fn m(parts: &[(u64, i64, i64)]) -> RadicalMonomial {
        parts
            .iter()
            .fold(RadicalMonomial::one(), |acc, &(b, n, d)| {
                acc.mul(&RadicalMonomial::pow_frac(b, n, d))
            })
    }

    #[test]
    fn fontaine_n6_below_odlyzko_threshold() {
        let x = m(&[(5, 5, 4), (6, 4, 5)]);
        assert_eq!(x.exact_compare(&rat(31645, 1000)), Ordering::Less);
        assert_eq!(x.decimal(3), "31.349");
    }

    #[test]
    fn fontaine_n10_against_printed_values() {
        let x = m(&[(3, 3, 2), (10, 2, 3)]);
        assert_eq!(x.exact_compare(&rat(24258, 1000)), Ordering::Less);
        // the printed 24.118 is a truncation, the true value lies above it
        assert_eq!(x.exact_compare(&rat(24118, 1000)), Ordering::Greater);
    }

    #[test]
    fn identical_monomials_compare_equal() {
        let a = RadicalMonomial::pow_frac(2, 1, 2);
        assert_eq!(a.compare(&a.clone()).ordering, Ordering::Equal);
    }

    #[test]
    fn composite_bases_split_into_primes() {
        let x = RadicalMonomial::pow_frac(6, 4, 5);
        assert_eq!(x.exponent(2), rat(4, 5));
        assert_eq!(x.exponent(3), rat(4, 5));
        assert_eq!(x.to_string(), "2^(4/5)·3^(4/5)");
    }

    #[test]
    fn exponents_cancel() {
        let x = RadicalMonomial::pow_frac(5, 1, 3).div(&RadicalMonomial::pow_frac(5, 1, 3));
        assert!(x.is_one());
        assert_eq!(x.exact_compare(&rat(1, 1)), Ordering::Equal);
    }

    #[test]
    fn rational_value_round_trip() {
        let x = RadicalMonomial::from_rational(&rat(18, 25));
        assert_eq!(x.exponent(5), rat(-2, 1));
        assert_eq!(x.exact_compare(&rat(18, 25)), Ordering::Equal);
    }
}
