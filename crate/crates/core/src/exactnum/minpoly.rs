use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hiprec::HiComplex;
use super::qpoly::Poly;
use super::rat::{int, Rat};
use super::zfactor::factor_over_q;
use crate::{Error, Result};

/// Arithmetic expression over nested radicals.
///
/// `Root(k, r)` is the principal root: positive real for `r > 0`, real for
/// odd `k` and `r < 0`, and `|r|^(1/k)·e^(iπ/k)` for even `k` and `r < 0`
/// (so `Root(2, -3)` is `i√3`). `Zeta(n)` is `e^(2πi/n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rat(Rat),
    Root(u32, Rat),
    Zeta(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Rat(int(n))
    }

    pub fn root(k: u32, r: i64) -> Self {
        Expr::Root(k, int(r))
    }

    pub fn pow(self, k: u32) -> Self {
        Expr::Pow(Box::new(self), k)
    }

    fn start_value(&self) -> Result<Complex64> {
        Ok(match self {
            Expr::Rat(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Expr::Root(k, r) => principal_root_f64(*k, r)?,
            Expr::Zeta(n) => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / *n as f64),
            Expr::Add(a, b) => a.start_value()? + b.start_value()?,
            Expr::Sub(a, b) => a.start_value()? - b.start_value()?,
            Expr::Mul(a, b) => a.start_value()? * b.start_value()?,
            Expr::Div(a, b) => a.start_value()? / b.start_value()?,
            Expr::Neg(a) => -a.start_value()?,
            Expr::Pow(a, k) => a.start_value()?.powi(*k as i32),
        })
    }

    /// Value with `bits` bits of fixed-point precision.
    pub fn eval(&self, bits: u32) -> Result<HiComplex> {
        Ok(match self {
            Expr::Rat(q) => HiComplex::from_rat(q, bits),
            Expr::Root(k, r) => {
                HiComplex::refine_root(&HiComplex::from_rat(r, bits), *k, principal_root_f64(*k, r)?)
            }
            Expr::Zeta(n) => HiComplex::refine_root(
                &HiComplex::from_rat(&Rat::one(), bits),
                *n,
                self.start_value()?,
            ),
            Expr::Add(a, b) => a.eval(bits)?.add(&b.eval(bits)?),
            Expr::Sub(a, b) => a.eval(bits)?.sub(&b.eval(bits)?),
            Expr::Mul(a, b) => a.eval(bits)?.mul(&b.eval(bits)?),
            Expr::Div(a, b) => a.eval(bits)?.div(&b.eval(bits)?).ok_or(Error::DivisionByZero)?,
            Expr::Neg(a) => a.eval(bits)?.neg(),
            Expr::Pow(a, k) => a.eval(bits)?.powi(*k),
        })
    }
}

fn principal_root_f64(k: u32, r: &Rat) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidArgument("zeroth root".into()));
    }
    let x = r.to_f64().unwrap_or(f64::NAN);
    let m = x.abs().powf(1.0 / k as f64);
    Ok(if x >= 0.0 {
        Complex64::new(m, 0.0)
    } else if k % 2 == 1 {
        Complex64::new(-m, 0.0)
    } else {
        Complex64::from_polar(m, std::f64::consts::PI / k as f64)
    })
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait for Expr {
            type Output = Expr;
            fn $method(self, o: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(o))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

const BITS: u32 = 512;

/// `Res_y(f(y), g_x0(y))` sampled at `deg + 1` integer points and interpolated.
fn interpolate_resultant(f: &Poly, deg: usize, g_at: impl Fn(&Rat) -> Poly) -> Poly {
    let mut pts = Vec::with_capacity(deg + 1);
    let mut x0 = 0i64;
    while pts.len() <= deg {
        let x = int(x0);
        pts.push((x.clone(), f.resultant(&g_at(&x))));
        x0 = if x0 <= 0 { 1 - x0 } else { -x0 };
    }
    Poly::interpolate(&pts)
}

/// Pick the irreducible factor of `h` vanishing at the value of `e`.
fn select_factor(h: &Poly, e: &Expr, what: &str) -> Result<Poly> {
    let factors = factor_over_q(h)?;
    if factors.len() == 1 {
        return Ok(factors[0].0.monic());
    }
    let z = e.eval(BITS)?;
    let zabs = z.abs_f64().max(1.0);
    let mut hits = Vec::new();
    for (g, _) in &factors {
        let g = g.monic();
        let scale: f64 = g
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs().to_f64().unwrap_or(f64::INFINITY) * zabs.powi(i as i32))
            .sum();
        let val = HiComplex::eval_poly(g.coeffs(), &z).abs_f64();
        if val <= scale * 2f64.powi(-(BITS as i32) / 2) {
            hits.push(g);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().expect("one hit")),
        n => Err(Error::AmbiguousRoot(format!("{n} candidate factors vanish at {what}"))),
    }
}

fn minpoly_rec(e: &Expr) -> Result<Poly> {
    let x = Poly::x();
    match e {
        Expr::Rat(q) => Ok(Poly::new(vec![-q.clone(), Rat::one()])),
        Expr::Root(k, r) => {
            if *k == 0 {
                return Err(Error::InvalidArgument("zeroth root".into()));
            }
            if r.is_zero() {
                return Ok(x);
            }
            let h = &Poly::monomial(Rat::one(), *k as usize) - &Poly::constant(r.clone());
            select_factor(&h, e, "a radical")
        }
        Expr::Zeta(n) => {
            if *n == 0 {
                return Err(Error::InvalidArgument("root of unity of order 0".into()));
            }
            let h = &Poly::monomial(Rat::one(), *n as usize) - &Poly::one();
            select_factor(&h, e, "a root of unity")
        }
        Expr::Neg(a) => {
            let f = minpoly_rec(a)?;
            let g = f.compose(&Poly::from_ints(&[0, -1]));
            Ok(g.monic())
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let f = minpoly_rec(a)?;
            let mut g = minpoly_rec(b)?;
            if matches!(e, Expr::Sub(..)) {
                g = g.compose(&Poly::from_ints(&[0, -1]));
            }
            let deg = f.degree() * g.degree();
            // Res_y(f(y), g(x0 − y))
            let h = interpolate_resultant(&f, deg, |x0| g.compose(&Poly::new(vec![x0.clone(), -Rat::one()])));
            select_factor(&h, e, "a sum")
        }
        Expr::Mul(a, b) => {
            let f = minpoly_rec(a)?;
            let g = minpoly_rec(b)?;
            if f == x || g == x {
                return Ok(x);
            }
            let (m, deg) = (g.degree(), f.degree() * g.degree());
            // Res_y(f(y), y^m g(x0 / y))
            let h = interpolate_resultant(&f, deg, |x0| {
                let mut c = vec![Rat::zero(); m + 1];
                let mut pw = Rat::one();
                for i in 0..=m {
                    c[m - i] = g.coeff(i) * &pw;
                    pw *= x0;
                }
                Poly::new(c)
            });
            select_factor(&h, e, "a product")
        }
        Expr::Div(a, b) => {
            let g = minpoly_rec(b)?;
            if g == x {
                return Err(Error::DivisionByZero);
            }
            let f = minpoly_rec(a)?;
            if f == x {
                return Ok(x);
            }
            let ginv = g.reverse().monic();
            let (m, deg) = (ginv.degree(), f.degree() * ginv.degree());
            let h = interpolate_resultant(&f, deg, |x0| {
                let mut c = vec![Rat::zero(); m + 1];
                let mut pw = Rat::one();
                for i in 0..=m {
                    c[m - i] = ginv.coeff(i) * &pw;
                    pw *= x0;
                }
                Poly::new(c)
            });
            select_factor(&h, e, "a quotient")
        }
        Expr::Pow(a, k) => {
            let mut acc = Expr::int(1);
            for _ in 0..*k {
                acc = acc * (**a).clone();
            }
            minpoly_rec(&acc)
        }
    }
}

/// Monic minimal polynomial over `Q` of the value of `e`.
pub fn minimal_polynomial(e: &Expr) -> Result<Poly> {
    minpoly_rec(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5() {
        assert_eq!(minimal_polynomial(&Expr::root(2, 5)).unwrap(), Poly::from_ints(&[-5, 0, 1]));
    }

    #[test]
    fn fifth_root_of_unity() {
        assert_eq!(
            minimal_polynomial(&Expr::Zeta(5)).unwrap(),
            Poly::from_ints(&[1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn sextic_generator() {
        let v = (Expr::root(3, 10) - Expr::int(1)) / Expr::root(2, -3);
        assert_eq!(
            minimal_polynomial(&v).unwrap(),
            Poly::from_ints(&[3, 0, 7, 0, 1, 0, 1])
        );
    }

    #[test]
    fn division_by_zero_rejected() {
        let z = Expr::root(2, 2) - Expr::root(2, 2);
        assert!(matches!(
            minimal_polynomial(&(Expr::int(1) / z)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn sum_picks_the_right_conjugate() {
        // √2 + √3 and √2 − √3 share an annihilator; both minpolys are x^4 − 10x^2 + 1
        let s = Expr::root(2, 2) + Expr::root(2, 3);
        assert_eq!(minimal_polynomial(&s).unwrap(), Poly::from_ints(&[1, 0, -10, 0, 1]));
        let t = Expr::root(2, 2) * Expr::root(2, 8);
        assert_eq!(minimal_polynomial(&t).unwrap(), Poly::from_ints(&[-4, 1]));
    }
}
