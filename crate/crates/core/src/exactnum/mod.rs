//! Exact arithmetic kernel.
//!
//! Rationals are `num_rational::BigRational`. Everything above them
//! (radical monomials, polynomials over `Q` and `F_p`, number-field
//! elements) is implemented here.

mod algebraic;
mod fp;
mod hiprec;
mod kummer;
mod minpoly;
mod primes;
mod qpoly;
mod radical;
mod rat;
mod zfactor;

pub use algebraic::{AlgebraicNumber, NumberField, PrimeIdealRep, TruncatedResidue};
pub use hiprec::HiComplex;
pub use fp::{factor_fp, factor_mod_p, FpPoly};
pub use kummer::{kummer_class_equiv, kummer_exponents, kummer_unramified_at_l};
pub use minpoly::{minimal_polynomial, Expr};
pub use primes::{factor_u64, is_prime, primes_up_to};
pub use qpoly::{poly_discriminant, Poly};
pub use radical::{ClearedComparison, RadicalMonomial};
pub use rat::{int, padic_valuation, parse_rat, rat, rat_display, Rat};
pub use zfactor::{factor_over_q, is_irreducible_over_q};
