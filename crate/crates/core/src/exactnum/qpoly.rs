use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{int, Rat};
use crate::{Error, Result};

/// Univariate polynomial over `Q`, coefficients stored lowest degree first.
/// The leading coefficient is non-zero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.deg().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Poly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// `x^n·self(1/x)` with `n = deg self`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Long division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.degree();
        let lc_inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b non-zero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd over `Q`: `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 non-zero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Yun's algorithm: `(factor, multiplicity)` with monic squarefree,
    /// pairwise coprime factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Integer primitive polynomial proportional to `self`, with positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &l).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().expect("non-zero").is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn is_integral_monic(&self) -> bool {
        self.lc().is_one() && self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Resultant via the Euclidean remainder sequence over `Q`.
    pub fn resultant(&self, other: &Poly) -> Rat {
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = Rat::one();
        loop {
            let (da, db) = (a.degree(), b.degree());
            if db == 0 {
                return acc * num_traits::pow(b.lc(), da);
            }
            let r = a.rem(&b).expect("b non-zero");
            if r.is_zero() {
                return Rat::zero();
            }
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lc(), da - r.degree());
            a = b;
            b = r;
        }
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let f = self.div_exact(&self.gcd(&self.derivative())).expect("divides");
        let mut seq = vec![f.clone(), f.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).expect("non-zero");
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        let sign_changes = |signs: Vec<i32>| {
            let nz: Vec<i32> = signs.into_iter().filter(|s| *s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos = seq.iter().map(|p| p.lc().signum().to_i32().unwrap_or(0)).collect();
        let at_neg = seq
            .iter()
            .map(|p| {
                let s = p.lc().signum().to_i32().unwrap_or(0);
                if p.degree() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        sign_changes(at_neg) - sign_changes(at_pos)
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
        let n = points.len();
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - j].0);
            }
        }
        let mut result = Poly::zero();
        for i in (0..n).rev() {
            let lin = Poly::new(vec![-points[i].0.clone(), Rat::one()]);
            result = &(&result * &lin) + &Poly::constant(dd[i].clone());
        }
        result
    }
}

/// Discriminant `(-1)^(n(n-1)/2)·Res(f, f')/lc(f)`.
pub fn poly_discriminant(f: &Poly) -> Result<Rat> {
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::InvalidArgument("discriminant of a constant".into()));
    }
    let r = f.resultant(&f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
    Ok(sign * r / f.lc())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_discriminant() {
        assert_eq!(poly_discriminant(&Poly::from_ints(&[-1, -1, 1])).unwrap(), int(5));
    }

    #[test]
    fn binomial_discriminants() {
        assert_eq!(
            poly_discriminant(&Poly::from_ints(&[-2, 0, 0, 0, 0, 1])).unwrap(),
            int(50000)
        );
        assert_eq!(
            poly_discriminant(&Poly::from_ints(&[-10, 0, 0, 1])).unwrap(),
            int(-2700)
        );
    }

    #[test]
    fn zero_polynomial_has_no_discriminant() {
        assert!(poly_discriminant(&Poly::zero()).is_err());
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)
        let f = &Poly::from_ints(&[-1, 1]).pow(2) * &Poly::from_ints(&[2, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(Poly::from_ints(&[2, 1]), 1), (Poly::from_ints(&[-1, 1]), 2)]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_ints(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1]).count_real_roots(), 0);
        assert_eq!(Poly::from_ints(&[-10, 0, 0, 1]).count_real_roots(), 1);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = Poly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (int(i), f.eval(&int(i)))).collect();
        assert_eq!(Poly::interpolate(&pts), f);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1]).to_string(), "x^6 + x^4 + 7x^2 + 3");
    }
}
