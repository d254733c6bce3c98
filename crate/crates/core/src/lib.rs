//! Exact linear algebra for Cauchy-like "reproducing kernel" determinant
//! identities.
//!
//! The library works over two exact scalar kinds, arbitrary-precision
//! rationals and prime-field residues, and provides dense matrices with three
//! independent determinant engines (Laplace cofactor oracle, fraction-free /
//! exact elimination, multimodular CRT), the kernel systems built from
//! sextuples of parameters, and verifiers for the whole family of bordered,
//! moment-form, minor, and symmetric-factorization identities those kernels
//! satisfy.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization, and the command
//! line live in the companion `kerndet-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod detcore;
pub mod kernel;
pub mod minors;
pub mod okada;
pub mod report;
pub mod rng;
pub mod sample;
pub mod scalars;
pub mod symmetric;

pub use detcore::{
    det_exact, det_laplace, det_multimodular, hadamard_bound, project_matrix, DenseMatrix,
    MatrixError, MinorSpec,
};
pub use kernel::{
    BorderSet, LeftTriplet, ProjectionError, RightTriplet, SextupleSystem, SystemError,
};
pub use report::{CheckRecord, Report, Verdict};
pub use scalars::{
    crt_combine, is_prime_u64, pow, project_mod_p, Fp, PrimeField, PrimeSampler, Rational, Scalar,
    ScalarError,
};
pub use symmetric::{AltVariant, SymmetricSystem};

/// Re-exported so downstream crates share one bigint type.
pub use num_bigint::BigInt;
