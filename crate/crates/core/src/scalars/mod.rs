//! Exact field arithmetic: canonical arbitrary-precision rationals,
//! prime-field residues, and the rational-to-residue bridges used by
//! multimodular computation.

mod modular;
mod rational;

pub use modular::{crt_combine, is_prime_u64, residue_of_bigint, Fp, PrimeField, PrimeSampler};
pub use rational::Rational;

pub(crate) use modular::{inv_mod as inv_mod_pub, mul_mod as mul_mod_pub};

use crate::detcore::{DenseMatrix, MatrixError};
use core::fmt;

/// Errors from scalar construction and the rational/residue bridges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// Rational with denominator zero.
    ZeroDenominator,
    /// The modulus divides the denominator; the caller must resample the prime.
    BadReduction { modulus: u64 },
    /// CRT moduli are not pairwise coprime (or zero).
    InvalidModuli,
    /// Modulus failed the primality check.
    NotPrime { value: u64 },
    /// Unparseable scalar text.
    Parse,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::ZeroDenominator => write!(f, "denominator is zero"),
            ScalarError::BadReduction { modulus } => {
                write!(f, "denominator vanishes mod {modulus}")
            }
            ScalarError::InvalidModuli => write!(f, "moduli are not pairwise coprime"),
            ScalarError::NotPrime { value } => write!(f, "{value} is not prime"),
            ScalarError::Parse => write!(f, "malformed scalar literal"),
        }
    }
}

impl core::error::Error for ScalarError {}

/// An element of an exact field.
///
/// Values are immutable; every operation returns a fresh element. Elements
/// carry their field context (`()` for rationals, the prime field for
/// residues) so containers can enforce that all entries live in one field.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, value: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>
    where
        Self: Sized;

    fn is_zero(&self) -> bool;

    fn div(&self, rhs: &Self) -> Option<Self>
    where
        Self: Sized,
    {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    /// Exact determinant engine for square matrices over this scalar kind.
    ///
    /// The default is plain field elimination; the rational implementation
    /// overrides it to route integer inputs through fraction-free
    /// elimination.
    fn det_exact(m: &DenseMatrix<Self>) -> Result<Self, MatrixError>
    where
        Self: Sized,
    {
        crate::detcore::det_field(m)
    }
}

/// `base^exp` by repeated multiplication (exponents here stay tiny).
pub fn pow<T: Scalar>(base: &T, exp: usize) -> T {
    let mut acc = T::one(&base.ctx());
    for _ in 0..exp {
        acc = acc.mul(base);
    }
    acc
}

/// Reduce a rational into a prime field: `num * den^{-1} mod p`.
///
/// Fails with [`ScalarError::BadReduction`] when `p` divides the denominator;
/// the caller is expected to resample the prime.
pub fn project_mod_p(r: &Rational, field: &PrimeField) -> Result<Fp, ScalarError> {
    let p = field.modulus();
    let den = r.denom_mod(p);
    if den == 0 {
        return Err(ScalarError::BadReduction { modulus: p });
    }
    let num = r.numer_mod(p);
    let inv = modular::inv_mod(den, p).expect("nonzero residue mod prime is invertible");
    Ok(field.element(modular::mul_mod(num, inv, p)))
}
