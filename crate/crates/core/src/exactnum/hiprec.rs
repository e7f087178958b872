//! Fixed-point complex numbers with a few hundred bits of precision, used to
//! decide which factor of an annihilating polynomial vanishes at a given value.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rat::Rat;

/// `(re + i·im) / 2^bits`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiComplex {
    re: BigInt,
    im: BigInt,
    bits: u32,
}

fn scale_f64(x: f64, bits: u32) -> BigInt {
    // exact for finite doubles: x = m·2^e
    if x == 0.0 {
        return BigInt::zero();
    }
    let (m, e) = frexp(x);
    let mant = BigInt::from((m * (1u64 << 53) as f64) as i64);
    let shift = e - 53 + bits as i32;
    if shift >= 0 {
        mant << shift as u32
    } else {
        mant >> (-shift) as u32
    }
}

fn frexp(x: f64) -> (f64, i32) {
    let e = x.abs().log2().floor() as i32 + 1;
    (x / 2f64.powi(e), e)
}

impl HiComplex {
    pub fn zero(bits: u32) -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn from_rat(q: &Rat, bits: u32) -> Self {
        Self {
            re: (q.numer() << bits).div_floor(q.denom()),
            im: BigInt::zero(),
            bits,
        }
    }

    pub fn from_complex64(z: Complex64, bits: u32) -> Self {
        Self { re: scale_f64(z.re, bits), im: scale_f64(z.im, bits), bits }
    }

    pub fn to_complex64(&self) -> Complex64 {
        let s = 2f64.powi(-(self.bits as i32));
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN) * s,
            self.im.to_f64().unwrap_or(f64::NAN) * s,
        )
    }

    /// Modulus as a double; accurate far below `f64::EPSILON` because the
    /// components are converted separately.
    pub fn abs_f64(&self) -> f64 {
        let s = 2f64.powi(-(self.bits as i32));
        let re = self.re.to_f64().unwrap_or(f64::INFINITY) * s;
        let im = self.im.to_f64().unwrap_or(f64::INFINITY) * s;
        re.hypot(im)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im, bits: self.bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = (&self.re * &o.re - &self.im * &o.im) >> self.bits;
        let im = (&self.re * &o.im + &self.im * &o.re) >> self.bits;
        Self { re, im, bits: self.bits }
    }

    /// `None` when the divisor is zero at this precision.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << self.bits).div_floor(&den);
        let im = ((&self.im * &o.re - &self.re * &o.im) << self.bits).div_floor(&den);
        Some(Self { re, im, bits: self.bits })
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::from_rat(&Rat::from_integer(1.into()), self.bits);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Root of `z^k = target` nearest to the double-precision `start`,
    /// refined by Newton iteration.
    pub fn refine_root(target: &Self, k: u32, start: Complex64) -> Self {
        let bits = target.bits;
        let kk = Self::from_rat(&Rat::from_integer(k.into()), bits);
        let mut z = Self::from_complex64(start, bits);
        let iterations = 8 + (bits / 50).ilog2();
        for _ in 0..iterations {
            let zk1 = z.powi(k - 1);
            let num = zk1.mul(&z).sub(target);
            let Some(step) = num.div(&kk.mul(&zk1)) else { break };
            z = z.sub(&step);
        }
        z
    }

    /// Evaluate a rational polynomial (coefficients lowest first) by Horner.
    pub fn eval_poly(coeffs: &[Rat], z: &Self) -> Self {
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(z.bits), |acc, c| acc.mul(z).add(&Self::from_rat(c, z.bits)))
    }
}
