//! Field fixtures: class numbers and unit groups computed externally, with
//! everything checkable verified when loaded.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::exactnum::{
    is_irreducible_over_q, parse_rat, poly_discriminant, AlgebraicNumber, NumberField, Poly, PrimeIdealRep,
    Rat,
};
use crate::{Error, Result};

/// The fixture file shipped with the crate.
pub const SHIPPED_FIELDS: &str = include_str!("../../fixtures/fields.json");

#[derive(Deserialize)]
struct RawFile {
    fields: Vec<RawField>,
}

#[derive(Deserialize)]
struct RawPrime {
    p: u64,
    shift: String,
    e: u32,
}

#[derive(Deserialize)]
struct RawConductor {
    prime_indices: Vec<usize>,
    exponent: usize,
}

#[derive(Deserialize)]
struct RawField {
    label: String,
    poly: Vec<String>,
    disc: String,
    h: u64,
    h_source: String,
    roots_of_unity: u64,
    units: Vec<Vec<String>>,
    units_complete: bool,
    #[serde(default)]
    embeddings: BTreeMap<String, Vec<String>>,
    primes: Vec<RawPrime>,
    conductor: RawConductor,
}

/// A number field `Q[v]/(f)` with externally sourced arithmetic data.
#[derive(Clone, Debug)]
pub struct FieldFixture {
    pub label: String,
    pub field: Arc<NumberField>,
    pub disc: BigInt,
    pub h: u64,
    pub h_source: String,
    pub roots_of_unity: u64,
    /// Torsion generator first, then fundamental units.
    pub units: Vec<AlgebraicNumber>,
    pub units_complete: bool,
    pub embeddings: BTreeMap<String, AlgebraicNumber>,
    /// Every prime above the residue characteristic, as `(p, v − shift)`.
    pub primes: Vec<PrimeIdealRep>,
    pub conductor_primes: Vec<usize>,
    pub conductor_exponent: usize,
}

impl FieldFixture {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn poly(&self) -> &Poly {
        self.field.poly()
    }

    /// Residue characteristic of the listed primes.
    pub fn residue_char(&self) -> u64 {
        self.primes[0].p
    }

    pub fn element(&self, coords: &[Rat]) -> Result<AlgebraicNumber> {
        AlgebraicNumber::from_coords(&self.field, coords.to_vec())
    }

    pub fn embedding(&self, name: &str) -> Result<&AlgebraicNumber> {
        self.embeddings
            .get(name)
            .ok_or_else(|| Error::Fixture(format!("{}: no embedding named {name}", self.label)))
    }

    fn from_raw(raw: RawField) -> Result<Self> {
        let label = raw.label.clone();
        let bad = |msg: String| Error::Fixture(format!("{label}: {msg}"));
        let coeffs = raw.poly.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        let poly = Poly::new(coeffs);
        if !poly.is_integral_monic() {
            return Err(bad("defining polynomial must be monic with integer coefficients".into()));
        }
        if !is_irreducible_over_q(&poly) {
            return Err(bad("defining polynomial is reducible".into()));
        }
        if poly.count_real_roots() != 0 {
            return Err(bad("field has a real embedding".into()));
        }
        let field = NumberField::new(label.clone(), poly.clone())?;
        let n = field.degree();

        let disc: BigInt = raw.disc.parse().map_err(|_| bad(format!("bad discriminant {}", raw.disc)))?;
        check_disc(&poly, &disc, n).map_err(bad)?;

        let parse_vec = |v: &[String]| -> Result<AlgebraicNumber> {
            let c = v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
            AlgebraicNumber::from_coords(&field, c)
        };
        let mut units = Vec::new();
        for (i, u) in raw.units.iter().enumerate() {
            let x = parse_vec(u)?;
            let norm = x.norm();
            if norm.abs() != Rat::one() {
                return Err(bad(format!("unit {i} has norm {norm}")));
            }
            if !x.charpoly().is_integral_monic() {
                return Err(bad(format!("unit {i} is not integral")));
            }
            units.push(x);
        }
        if let Some(z) = units.first() {
            let w = raw.roots_of_unity as i64;
            let one = AlgebraicNumber::from_rat(&field, Rat::one());
            let primitive = !(1..w).any(|k| w % k == 0 && z.pow(k).map(|y| y == one).unwrap_or(true));
            if z.pow(w)? != one || (raw.units_complete && !primitive) {
                return Err(bad(format!("first unit is not a primitive {w}-th root of unity")));
            }
        }

        let mut embeddings = BTreeMap::new();
        for (name, v) in &raw.embeddings {
            let x = parse_vec(v)?;
            let expected = expected_minpoly(name).ok_or_else(|| bad(format!("unknown embedding {name}")))?;
            if !is_irreducible_over_q(&expected) || !evaluate(&expected, &x).is_zero() {
                return Err(bad(format!("{name} is not a root of {expected}")));
            }
            embeddings.insert(name.clone(), x);
        }

        let mut primes = Vec::new();
        for rp in &raw.primes {
            let pr = PrimeIdealRep::new(rp.p, parse_rat(&rp.shift)?, rp.e);
            pr.check_uniformizer(&field)?;
            primes.push(pr);
        }
        if primes.is_empty() || primes.iter().any(|q| q.p != primes[0].p) {
            return Err(bad("primes must lie over one rational prime".into()));
        }
        let total: u32 = primes.iter().map(|q| q.claimed_e * q.claimed_f).sum();
        if total as usize != n {
            return Err(bad(format!("Σ e·f = {total}, degree {n}")));
        }
        if raw.conductor.prime_indices.iter().any(|&i| i >= primes.len()) {
            return Err(bad("conductor refers to an unknown prime".into()));
        }
        Ok(Self {
            label: raw.label,
            field,
            disc,
            h: raw.h,
            h_source: raw.h_source,
            roots_of_unity: raw.roots_of_unity,
            units,
            units_complete: raw.units_complete,
            embeddings,
            primes,
            conductor_primes: raw.conductor.prime_indices,
            conductor_exponent: raw.conductor.exponent,
        })
    }
}

/// Sign `(−1)^(n/2)` for a totally imaginary field of degree `n`, and
/// `disc(f) / disc(F)` a perfect square (the squared index).
fn check_disc(poly: &Poly, disc: &BigInt, n: usize) -> std::result::Result<(), String> {
    let expected_negative = (n / 2) % 2 == 1;
    if disc.is_zero() || disc.is_negative() != expected_negative {
        return Err(format!("discriminant {disc} has the wrong sign for degree {n}"));
    }
    let pd = poly_discriminant(poly).map_err(|e| e.to_string())?;
    if !pd.is_integer() {
        return Err("polynomial discriminant is not integral".into());
    }
    let pd = pd.to_integer();
    if (&pd % disc) != BigInt::zero() {
        return Err("field discriminant does not divide the polynomial discriminant".into());
    }
    let q = &pd / disc;
    if q.is_negative() || q.sqrt().pow(2) != q {
        return Err("polynomial and field discriminants differ by a non-square".into());
    }
    Ok(())
}

fn evaluate(f: &Poly, x: &AlgebraicNumber) -> AlgebraicNumber {
    let mut acc = AlgebraicNumber::from_rat(x.field(), Rat::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&AlgebraicNumber::from_rat(x.field(), c.clone()));
    }
    acc
}

/// `zeta5`, `sqrt(-3)` and `m^(1/k)`.
fn expected_minpoly(name: &str) -> Option<Poly> {
    match name {
        "zeta5" => return Some(Poly::from_ints(&[1, 1, 1, 1, 1])),
        "zeta3" => return Some(Poly::from_ints(&[1, 1, 1])),
        "sqrt(-3)" => return Some(Poly::from_ints(&[3, 0, 1])),
        _ => {}
    }
    let (m, rest) = name.split_once("^(1/")?;
    let k: usize = rest.strip_suffix(')')?.parse().ok()?;
    let m: i64 = m.parse().ok()?;
    let mut c = vec![0i64; k + 1];
    c[0] = -m;
    c[k] = 1;
    Some(Poly::from_ints(&c))
}

/// All fixtures from one file, verified.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub fields: Vec<FieldFixture>,
}

impl FixtureSet {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        let fields = raw.fields.into_iter().map(FieldFixture::from_raw).collect::<Result<Vec<_>>>()?;
        Ok(Self { fields })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn shipped() -> Result<Self> {
        Self::parse(SHIPPED_FIELDS)
    }

    pub fn get(&self, label: &str) -> Result<&FieldFixture> {
        self.fields
            .iter()
            .find(|f| f.label == label)
            .ok_or_else(|| Error::Fixture(format!("no fixture labelled {label}")))
    }
}

/// Sum of the coordinates' sizes, for callers that want to skip huge data.
pub fn coordinate_bits(x: &AlgebraicNumber) -> u64 {
    x.coords().iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpoly_names() {
        assert_eq!(expected_minpoly("10^(1/3)"), Some(Poly::from_ints(&[-10, 0, 0, 1])));
        assert_eq!(expected_minpoly("zeta5"), Some(Poly::from_ints(&[1, 1, 1, 1, 1])));
        assert_eq!(expected_minpoly("pi"), None);
    }

    #[test]
    fn shipped_fixtures_verify() {
        let s = FixtureSet::shipped().unwrap();
        assert_eq!(s.fields.len(), 8);
        assert!(s.get("Q(zeta5, 24^(1/5))").unwrap().primes.len() == 5);
    }

    #[test]
    fn sextic_disc_square_index() {
        let f = Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1]);
        assert!(check_disc(&f, &BigInt::from(-270000), 6).is_ok());
        assert!(check_disc(&f, &BigInt::from(270000), 6).is_err());
        assert!(check_disc(&f, &BigInt::from(-90000), 6).is_err());
    }
}
