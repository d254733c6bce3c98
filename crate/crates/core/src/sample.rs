//! Seeded rejection sampling of valid systems and matrices.
//!
//! Parameters are drawn as integers in [-range, range]; any invariant
//! violation (coincident k or l values, kernel poles, vanishing k-sums)
//! rejects the whole draw and retries. Small values keep rational bit
//! growth low at desk scale. Everything is deterministic in the seed.

use alloc::vec::Vec;
use core::fmt;

use crate::detcore::DenseMatrix;
use crate::kernel::{LeftTriplet, RightTriplet, SextupleSystem};
use crate::rng::SplitMix64;
use crate::scalars::{Fp, PrimeField, Rational, Scalar};
use crate::symmetric::SymmetricSystem;

/// Attempt budget before generation gives up.
pub const SAMPLE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleError {
    GenerationFailed { attempts: usize },
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::GenerationFailed { attempts } => {
                write!(f, "no valid instance found in {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for SampleError {}

fn draw<T: Scalar>(ctx: &T::Ctx, rng: &mut SplitMix64, range: i64) -> T {
    T::from_i64(ctx, rng.next_i64_in(-range, range))
}

/// Random valid general system with n+1 sextuples.
pub fn sample_general(
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SextupleSystem<Rational>, SampleError> {
    sample_general_in(&(), n, seed, range)
}

/// Random valid general system over an arbitrary field context.
pub fn sample_general_in<T: Scalar>(
    ctx: &T::Ctx,
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SextupleSystem<T>, SampleError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..SAMPLE_BUDGET {
        let left: Vec<LeftTriplet<T>> = (0..=n)
            .map(|_| {
                LeftTriplet::new(
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                )
            })
            .collect();
        let right: Vec<RightTriplet<T>> = (0..=n)
            .map(|_| {
                RightTriplet::new(
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                )
            })
            .collect();
        if let Ok(sys) = SextupleSystem::new(left, right) {
            return Ok(sys);
        }
    }
    Err(SampleError::GenerationFailed {
        attempts: SAMPLE_BUDGET,
    })
}

/// Random valid symmetric system with n+1 triplets.
pub fn sample_symmetric(
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SymmetricSystem<Rational>, SampleError> {
    sample_symmetric_in(&(), n, seed, range)
}

pub fn sample_symmetric_in<T: Scalar>(
    ctx: &T::Ctx,
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SymmetricSystem<T>, SampleError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..SAMPLE_BUDGET {
        let triplets: Vec<LeftTriplet<T>> = (0..=n)
            .map(|_| {
                LeftTriplet::new(
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                    draw(ctx, &mut rng, range),
                )
            })
            .collect();
        if let Ok(sys) = SymmetricSystem::new(triplets) {
            return Ok(sys);
        }
    }
    Err(SampleError::GenerationFailed {
        attempts: SAMPLE_BUDGET,
    })
}

/// Prime-field variants: integers are drawn in the same range and reduced.
pub fn sample_general_mod(
    field: &PrimeField,
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SextupleSystem<Fp>, SampleError> {
    sample_general_in(field, n, seed, range)
}

pub fn sample_symmetric_mod(
    field: &PrimeField,
    n: usize,
    seed: u64,
    range: i64,
) -> Result<SymmetricSystem<Fp>, SampleError> {
    sample_symmetric_in(field, n, seed, range)
}

/// Integer matrix with entries uniform in [-bound, bound].
pub fn sample_int_matrix(rows: usize, cols: usize, seed: u64, bound: i64) -> DenseMatrix<Rational> {
    let mut rng = SplitMix64::new(seed);
    DenseMatrix::from_fn(rows, cols, (), |_, _| {
        Rational::from_i64(rng.next_i64_in(-bound, bound))
    })
}

/// Rational matrix with numerators in [-bound, bound] and denominators in
/// [1, bound].
pub fn sample_rational_matrix(
    rows: usize,
    cols: usize,
    seed: u64,
    bound: i64,
) -> DenseMatrix<Rational> {
    let mut rng = SplitMix64::new(seed);
    DenseMatrix::from_fn(rows, cols, (), |_, _| {
        let num = rng.next_i64_in(-bound, bound);
        let den = rng.next_i64_in(1, bound.max(1));
        Rational::normalize(num.into(), den.into()).expect("denominator is positive")
    })
}
