use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use super::qpoly::Poly;
use super::rat::{int, padic_valuation, rat_mod_p, Rat};
use crate::{Error, Result};

/// Number field `Q[v]/(f)` with `f` monic. Irreducibility of `f` is the
/// caller's responsibility; see `zfactor::is_irreducible_over_q`.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    label: String,
    poly: Poly,
}

impl NumberField {
    pub fn new(label: impl Into<String>, poly: Poly) -> Result<Arc<Self>> {
        if poly.degree() == 0 {
            return Err(Error::InvalidArgument("defining polynomial must have degree ≥ 1".into()));
        }
        Ok(Arc::new(Self { label: label.into(), poly: poly.monic() }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

/// Element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl AlgebraicNumber {
    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> Self {
        let r = p.rem(field.poly()).expect("defining polynomial non-zero");
        let n = field.degree();
        Self {
            field: field.clone(),
            coords: (0..n).map(|i| r.coeff(i)).collect(),
        }
    }

    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(Self { field: field.clone(), coords })
    }

    pub fn from_rat(field: &Arc<NumberField>, q: Rat) -> Self {
        Self::from_poly(field, &Poly::constant(q))
    }

    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &Poly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_field(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "elements of different fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::from_poly(&self.field, &(&self.as_poly() + &o.as_poly()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::from_poly(&self.field, &(&self.as_poly() - &o.as_poly()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::from_poly(&self.field, &(&self.as_poly() * &o.as_poly()))
    }

    pub fn neg(&self) -> Self {
        Self::from_poly(&self.field, &-&self.as_poly())
    }

    pub fn inv(&self) -> Result<Self> {
        let (g, s, _) = self.as_poly().xgcd(self.field.poly());
        if g.degree() != 0 || g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::from_rat(&self.field, Rat::one());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Field norm, the constant term of the characteristic polynomial up to sign.
    pub fn norm(&self) -> Rat {
        let c = self.charpoly();
        let n = self.field.degree();
        if n.is_multiple_of(2) {
            c.coeff(0)
        } else {
            -c.coeff(0)
        }
    }

    pub fn trace(&self) -> Rat {
        let n = self.field.degree();
        // trace = sum of diagonal entries of the multiplication matrix
        (0..n)
            .map(|i| {
                let col = Self::from_poly(&self.field, &(&self.as_poly() * &Poly::monomial(Rat::one(), i)));
                col.coords[i].clone()
            })
            .sum()
    }

    /// Characteristic polynomial of multiplication by `α`. With `D` the
    /// coordinate denominator lcm, `Dα` has an integer multiplication
    /// matrix whose characteristic polynomial comes from the division-free
    /// Berkowitz recursion.
    pub fn charpoly(&self) -> Poly {
        let f = self.field.poly();
        if !f.is_integral_monic() {
            return self.charpoly_by_resultants();
        }
        let n = self.field.degree();
        let d = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let fz: Vec<BigInt> = f.coeffs().iter().map(|c| c.to_integer()).collect();
        let mut col: Vec<BigInt> = self.coords.iter().map(|c| (c * Rat::from_integer(d.clone())).to_integer()).collect();
        // m[i][j] = coordinate i of (Dα)·v^j
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for j in 0..n {
            for (row, c) in m.iter_mut().zip(&col) {
                row[j] = c.clone();
            }
            // multiply by v modulo f
            let top = col[n - 1].clone();
            for i in (1..n).rev() {
                col[i] = &col[i - 1] - &top * &fz[i];
            }
            col[0] = -(&top * &fz[0]);
        }
        let c = berkowitz(&m);
        // coefficient of t^(n−i) is c_i / D^i
        let mut coeffs = vec![Rat::zero(); n + 1];
        let mut dp = BigInt::one();
        for (i, ci) in c.into_iter().enumerate() {
            coeffs[n - i] = Rat::new(ci, dp.clone());
            dp *= &d;
        }
        Poly::new(coeffs)
    }

    /// `Res_y(f(y), x − a(y))` interpolated at `n + 1` integer points.
    fn charpoly_by_resultants(&self) -> Poly {
        let n = self.field.degree();
        let a = self.as_poly();
        let pts: Vec<(Rat, Rat)> = (0..=n as i64)
            .map(|x0| {
                let g = &Poly::constant(int(x0)) - &a;
                let r = if g.is_zero() {
                    Rat::zero()
                } else {
                    self.field.poly().resultant(&g)
                };
                (int(x0), r)
            })
            .collect();
        Poly::interpolate(&pts)
    }

    /// Minimal polynomial over `Q`, the squarefree part of the characteristic
    /// polynomial (valid when the defining polynomial is irreducible).
    pub fn minpoly(&self) -> Poly {
        let c = self.charpoly();
        c.div_exact(&c.gcd(&c.derivative())).expect("gcd divides").monic()
    }

    /// Image in `F_p` under `v ↦ shift`.
    pub fn reduce_mod_prime(&self, prime: &PrimeIdealRep) -> Result<u64> {
        prime.check_degree_one(&self.field)?;
        let p = prime.p;
        let s = rat_mod_p(&prime.shift, p)?;
        let mut acc = 0u64;
        for c in self.coords.iter().rev() {
            acc = ((acc as u128 * s as u128) % p as u128) as u64;
            acc = (acc + rat_mod_p(c, p)?) % p;
        }
        Ok(acc)
    }

    /// Image in `O/π^k ≅ F_p[t]/(t^k)` under `v ↦ shift + t`. Requires
    /// `v − shift` to be a uniformizer at `π` and `k ≤ e(π)`.
    pub fn reduce_truncated(&self, prime: &PrimeIdealRep, k: usize) -> Result<TruncatedResidue> {
        prime.check_uniformizer(&self.field)?;
        if k == 0 || k > prime.claimed_e as usize {
            return Err(Error::InvalidArgument(format!(
                "truncation order {k} outside 1..={}",
                prime.claimed_e
            )));
        }
        let p = prime.p;
        let s = rat_mod_p(&prime.shift, p)?;
        let lin = TruncatedResidue { p, coeffs: trunc_vec(vec![s, 1], k) };
        let mut acc = TruncatedResidue::constant(p, 0, k);
        for c in self.coords.iter().rev() {
            acc = acc.mul(&lin).add(&TruncatedResidue::constant(p, rat_mod_p(c, p)?, k));
        }
        Ok(acc)
    }
}

/// Coefficients of `det(tI − A)`, leading first, for a square integer matrix.
fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::one()];
    for r in 0..n {
        // t = [1, −a_rr, −R S, −R A S, …] for the leading (r+1)×(r+1) block
        let mut t = vec![BigInt::one(), -a[r][r].clone()];
        let mut w: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rs: BigInt = (0..r).map(|j| &a[r][j] * &w[j]).sum();
            t.push(-rs);
            w = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &w[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(i + 1) {
                *slot += &t[i - j] * cj;
            }
        }
        c = next;
    }
    c
}

fn trunc_vec(mut v: Vec<u64>, k: usize) -> Vec<u64> {
    v.resize(k, 0);
    v
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly().to_string().replace('x', "v"))
    }
}

/// Degree-one prime `(p, v − shift)` of a mono-generated field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealRep {
    pub p: u64,
    #[serde(with = "rat_string")]
    pub shift: Rat,
    pub claimed_e: u32,
    pub claimed_f: u32,
}

impl PrimeIdealRep {
    pub fn new(p: u64, shift: Rat, claimed_e: u32) -> Self {
        Self { p, shift, claimed_e, claimed_f: 1 }
    }

    fn check_degree_one(&self, field: &NumberField) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.claimed_f != 1 {
            return Err(Error::InvalidArgument("only residue degree 1 is supported".into()));
        }
        if rat_mod_p(&field.poly().eval(&self.shift), self.p)? != 0 {
            return Err(Error::ShiftNotRoot { p: self.p, shift: self.shift.to_string() });
        }
        Ok(())
    }

    /// `v − shift` has valuation one at this prime and zero at every other
    /// prime above `p` exactly when `ord_p f(shift) = 1`.
    pub fn check_uniformizer(&self, field: &NumberField) -> Result<()> {
        self.check_degree_one(field)?;
        let val = field.poly().eval(&self.shift);
        if val.is_zero() || padic_valuation(&val, self.p) != 1 {
            return Err(Error::InvalidArgument(format!(
                "v − {} is not a uniformizer above {}",
                self.shift, self.p
            )));
        }
        Ok(())
    }
}

pub(crate) mod rat_string {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        crate::exactnum::parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Element of `F_p[t]/(t^k)`, the residue ring `O/π^k` for a degree-one
/// prime with uniformizer `t` and `k ≤ e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedResidue {
    p: u64,
    coeffs: Vec<u64>,
}

impl TruncatedResidue {
    pub fn constant(p: u64, c: u64, k: usize) -> Self {
        Self { p, coeffs: trunc_vec(vec![c % p], k) }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.coeffs.len();
        let mut out = vec![0u64; k];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate().take(k - i) {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self { p: self.p, coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berkowitz_matches_resultant_charpoly() {
        let f = NumberField::new("t", Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1])).unwrap();
        for c in [vec![rat(1, 4), rat(3, 2), rat(-1, 2), int(0), rat(1, 4), int(0)], vec![int(2), int(-1), int(0), int(5), int(0), int(1)]] {
            let x = AlgebraicNumber::from_coords(&f, c).unwrap();
            assert_eq!(x.charpoly(), x.charpoly_by_resultants());
            assert_eq!(x.norm(), f.poly().resultant(&x.as_poly()));
        }
        let g = NumberField::new("c", Poly::from_ints(&[-10, 0, 0, 1])).unwrap();
        let y = AlgebraicNumber::from_coords(&g, vec![int(1), rat(2, 3), int(-1)]).unwrap();
        assert_eq!(y.charpoly(), y.charpoly_by_resultants());
        assert_eq!(y.norm(), g.poly().resultant(&y.as_poly()));
    }
    use crate::exactnum::rat::rat;
    use num_traits::Signed;

    fn sextic() -> Arc<NumberField> {
        NumberField::new("F", Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1])).unwrap()
    }

    #[test]
    fn unit_reduces_to_one_at_shift_one() {
        let f = sextic();
        let e1 = AlgebraicNumber::from_coords(
            &f,
            vec![rat(-1, 4), rat(3, 2), rat(-1, 2), int(0), rat(1, 4), int(0)],
        )
        .unwrap();
        let pi = PrimeIdealRep::new(3, int(1), 2);
        assert_eq!(e1.reduce_mod_prime(&pi).unwrap(), 1);
        assert_eq!(e1.norm().abs(), Rat::one());
    }

    #[test]
    fn minus_one_reduces_to_p_minus_one() {
        let f = sextic();
        let m = AlgebraicNumber::from_rat(&f, int(-1));
        assert_eq!(m.reduce_mod_prime(&PrimeIdealRep::new(3, int(0), 2)).unwrap(), 2);
    }

    #[test]
    fn wrong_shift_rejected() {
        let f = NumberField::new("Q(i)", Poly::from_ints(&[1, 0, 1])).unwrap();
        let a = AlgebraicNumber::generator(&f);
        assert!(matches!(
            a.reduce_mod_prime(&PrimeIdealRep::new(3, int(1), 1)),
            Err(Error::ShiftNotRoot { .. })
        ));
    }

    #[test]
    fn inverse_and_minpoly() {
        let f = NumberField::new("Q(2^(1/3))", Poly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let a = AlgebraicNumber::from_poly(&f, &Poly::from_ints(&[1, 1]));
        let prod = a.mul(&a.inv().unwrap());
        assert_eq!(prod, AlgebraicNumber::from_rat(&f, Rat::one()));
        // (x-1)^3 - 2
        assert_eq!(a.minpoly(), Poly::from_ints(&[-3, 3, -3, 1]));
        assert_eq!(a.norm(), int(3));
        assert_eq!(a.trace(), int(3));
    }

    #[test]
    fn truncated_reduction_at_eisenstein_prime() {
        // x^2 - 3 at (3, v): v is a uniformizer, e = 2
        let f = NumberField::new("Q(√3)", Poly::from_ints(&[-3, 0, 1])).unwrap();
        let pi = PrimeIdealRep::new(3, int(0), 2);
        let a = AlgebraicNumber::from_poly(&f, &Poly::from_ints(&[2, 1]));
        let r = a.reduce_truncated(&pi, 2).unwrap();
        assert_eq!(r.coeffs(), &[2, 1]);
        let bad = PrimeIdealRep::new(3, int(0), 2);
        let g = NumberField::new("Q(√9·..)", Poly::from_ints(&[-9, 0, 1])).unwrap();
        assert!(AlgebraicNumber::generator(&g).reduce_truncated(&bad, 1).is_err());
    }
}
