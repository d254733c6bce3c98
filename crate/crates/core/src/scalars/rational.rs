//! Canonical arbitrary-precision rationals.
//!
//! Representation invariants: denominator > 0, gcd(|num|, den) = 1, zero is
//! 0/1. `num-rational` maintains exactly these, so this is a thin wrapper
//! fixing the construction, parsing, and text-form contracts.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Scalar, ScalarError};
use crate::detcore::{self, DenseMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Canonical rational from any numerator/denominator pair; the sign is
    /// carried by the numerator.
    pub fn normalize(num: BigInt, den: BigInt) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_i64(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Rational(BigRational::from_integer(value))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Nonnegative residue of the numerator mod `p`.
    pub(crate) fn numer_mod(&self, p: u64) -> u64 {
        bigint_mod(self.numer(), p)
    }

    /// Nonnegative residue of the denominator mod `p`.
    pub(crate) fn denom_mod(&self, p: u64) -> u64 {
        bigint_mod(self.denom(), p)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

pub(crate) fn bigint_mod(value: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    value
        .mod_floor(&m)
        .to_u64()
        .expect("mod_floor result fits the modulus")
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    /// Parses `"p/q"` or `"p"` with optional leading sign, arbitrary length.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let mut parts = s.splitn(2, '/');
        let num_txt = parts.next().ok_or(ScalarError::Parse)?;
        let num = BigInt::from_str(num_txt.trim()).map_err(|_| ScalarError::Parse)?;
        match parts.next() {
            None => Ok(Rational::from_bigint(num)),
            Some(den_txt) => {
                let den = BigInt::from_str(den_txt.trim()).map_err(|_| ScalarError::Parse)?;
                Rational::normalize(num, den)
            }
        }
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: &(), value: i64) -> Self {
        Rational::from_i64(value)
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Integer matrices go through fraction-free elimination; rational
    /// matrices with small denominators are cleared row-by-row first; only
    /// wide denominators fall back to field elimination.
    fn det_exact(m: &DenseMatrix<Self>) -> Result<Self, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::ShapeError);
        }
        let n = m.rows();
        if n == 0 {
            return Ok(Rational::from_i64(1));
        }
        if m.entries().iter().all(|e| e.is_integer()) {
            let ints: Vec<BigInt> = m.entries().iter().map(|e| e.numer().clone()).collect();
            return Ok(Rational::from_bigint(detcore::det_bareiss(ints, n)));
        }
        let max_den_bits = m
            .entries()
            .iter()
            .map(|e| e.denom().bits())
            .max()
            .unwrap_or(0);
        if max_den_bits <= 64 {
            // Scale each row by the lcm of its denominators; the determinant
            // picks up the product of the scale factors.
            let mut ints = Vec::with_capacity(n * n);
            let mut scale = BigInt::one();
            for r in 0..n {
                let lcm = m
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                for e in m.row(r) {
                    ints.push(e.numer() * (&lcm / e.denom()));
                }
                scale *= lcm;
            }
            let det = detcore::det_bareiss(ints, n);
            return Ok(Rational::normalize(det, scale).expect("scale is a product of lcms > 0"));
        }
        detcore::det_field(m)
    }
}
