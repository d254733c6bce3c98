//! Dense exact matrices with three independent determinant engines and
//! minor/bordering utilities.
//!
//! Engines:
//! - `det_laplace`: cofactor expansion, guarded to 9x9. Kept deliberately
//!   naive so it can serve as an independent oracle for the others.
//! - `det_exact`: the main engine. Integer matrices use fraction-free
//!   (Bareiss) elimination, rational matrices with small denominators are
//!   cleared row-wise first, prime-field matrices use exact elimination.
//! - `det_multimodular`: per-prime elimination plus CRT reconstruction,
//!   with enough 62-bit primes to exceed twice the Hadamard bound.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalars::{crt_combine, residue_of_bigint, Fp, PrimeField, PrimeSampler, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Operation requires a square matrix.
    ShapeError,
    /// Input exceeds a hard cost guard (Laplace expansion).
    SizeGuard { limit: usize },
    /// Row/column index out of bounds or repeated in a minor spec.
    IndexError,
    /// Entry list length does not match rows x cols.
    LengthMismatch,
    /// Entries come from different field contexts.
    MixedContext,
    /// Integer-only engine fed a non-integer entry.
    NonIntegerEntry,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ShapeError => write!(f, "matrix is not square"),
            MatrixError::SizeGuard { limit } => write!(f, "matrix exceeds {limit}x{limit} guard"),
            MatrixError::IndexError => write!(f, "index out of bounds or repeated"),
            MatrixError::LengthMismatch => write!(f, "entry count does not match dimensions"),
            MatrixError::MixedContext => write!(f, "entries from different field contexts"),
            MatrixError::NonIntegerEntry => write!(f, "entry is not an integer"),
        }
    }
}

impl core::error::Error for MatrixError {}

/// Row-major dense matrix over one exact field context.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    ctx: T::Ctx,
    entries: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn new(
        rows: usize,
        cols: usize,
        ctx: T::Ctx,
        entries: Vec<T>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::LengthMismatch);
        }
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(MatrixError::MixedContext);
        }
        Ok(DenseMatrix {
            rows,
            cols,
            ctx,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        ctx: T::Ctx,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        DenseMatrix::new(rows, cols, ctx, entries).expect("from_fn produces consistent entries")
    }

    pub fn from_rows(ctx: T::Ctx, rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::LengthMismatch);
        }
        DenseMatrix::new(nrows, ncols, ctx, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        assert!(r < self.rows);
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        DenseMatrix::from_fn(self.cols, self.rows, self.ctx.clone(), |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn with_rows_swapped(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for c in 0..self.cols {
            out.entries.swap(a * self.cols + c, b * self.cols + c);
        }
        out
    }

    pub fn with_row_replaced(&self, r: usize, row: Vec<T>) -> Result<Self, MatrixError> {
        if row.len() != self.cols {
            return Err(MatrixError::LengthMismatch);
        }
        if r >= self.rows {
            return Err(MatrixError::IndexError);
        }
        let mut out = self.clone();
        for (c, e) in row.into_iter().enumerate() {
            if e.ctx() != self.ctx {
                return Err(MatrixError::MixedContext);
            }
            out.entries[r * self.cols + c] = e;
        }
        Ok(out)
    }

    pub fn with_col_replaced(&self, c: usize, col: Vec<T>) -> Result<Self, MatrixError> {
        if col.len() != self.rows {
            return Err(MatrixError::LengthMismatch);
        }
        if c >= self.cols {
            return Err(MatrixError::IndexError);
        }
        let mut out = self.clone();
        for (r, e) in col.into_iter().enumerate() {
            if e.ctx() != self.ctx {
                return Err(MatrixError::MixedContext);
            }
            out.entries[r * self.cols + c] = e;
        }
        Ok(out)
    }

    /// Submatrix with the spec's rows and columns removed, order preserved.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Self, MatrixError> {
        if spec.deleted_rows.iter().any(|&r| r >= self.rows)
            || spec.deleted_cols.iter().any(|&c| c >= self.cols)
        {
            return Err(MatrixError::IndexError);
        }
        let keep_rows: Vec<usize> = (0..self.rows)
            .filter(|r| !spec.deleted_rows.contains(r))
            .collect();
        let keep_cols: Vec<usize> = (0..self.cols)
            .filter(|c| !spec.deleted_cols.contains(c))
            .collect();
        Ok(DenseMatrix::from_fn(
            keep_rows.len(),
            keep_cols.len(),
            self.ctx.clone(),
            |r, c| self.at(keep_rows[r], keep_cols[c]).clone(),
        ))
    }
}

/// Rows and columns to delete; kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    deleted_rows: Vec<usize>,
    deleted_cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: &[usize], cols: &[usize]) -> Result<Self, MatrixError> {
        let mut deleted_rows = rows.to_vec();
        let mut deleted_cols = cols.to_vec();
        deleted_rows.sort_unstable();
        deleted_cols.sort_unstable();
        if deleted_rows.windows(2).any(|w| w[0] == w[1])
            || deleted_cols.windows(2).any(|w| w[0] == w[1])
        {
            return Err(MatrixError::IndexError);
        }
        Ok(MinorSpec {
            deleted_rows,
            deleted_cols,
        })
    }

    pub fn single(r: usize, c: usize) -> Self {
        MinorSpec::new(&[r], &[c]).expect("single index is trivially valid")
    }

    pub fn deleted_rows(&self) -> &[usize] {
        &self.deleted_rows
    }

    pub fn deleted_cols(&self) -> &[usize] {
        &self.deleted_cols
    }
}

const LAPLACE_LIMIT: usize = 9;

/// Cofactor-expansion determinant, the independent oracle. Factorial cost,
/// guarded at 9x9.
pub fn det_laplace<T: Scalar>(m: &DenseMatrix<T>) -> Result<T, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    if m.rows() > LAPLACE_LIMIT {
        return Err(MatrixError::SizeGuard {
            limit: LAPLACE_LIMIT,
        });
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    Ok(laplace_rec(m, &rows, &cols))
}

fn laplace_rec<T: Scalar>(m: &DenseMatrix<T>, rows: &[usize], cols: &[usize]) -> T {
    match rows.len() {
        0 => T::one(m.ctx()),
        1 => m.at(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = T::zero(m.ctx());
            let sub_rows = &rows[1..];
            for (idx, &c) in cols.iter().enumerate() {
                let entry = m.at(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != idx)
                    .map(|(_, &cc)| cc)
                    .collect();
                let term = entry.mul(&laplace_rec(m, sub_rows, &sub_cols));
                acc = if idx % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

/// Main exact engine; dispatches per scalar kind (see [`Scalar::det_exact`]).
pub fn det_exact<T: Scalar>(m: &DenseMatrix<T>) -> Result<T, MatrixError> {
    T::det_exact(m)
}

/// Exact elimination over a field: pivot on the first nonzero entry of each
/// column (no magnitude pivoting, exact arithmetic has no rounding), zero
/// pivot column means determinant zero.
pub(crate) fn det_field<T: Scalar>(m: &DenseMatrix<T>) -> Result<T, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    let mut a: Vec<T> = m.entries().to_vec();
    let mut negate = false;
    let mut det = T::one(m.ctx());
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r * n + col].is_zero()) {
            Some(r) => r,
            None => return Ok(T::zero(m.ctx())),
        };
        if pivot_row != col {
            for c in 0..n {
                a.swap(pivot_row * n + c, col * n + c);
            }
            negate = !negate;
        }
        let pivot = a[col * n + col].clone();
        det = det.mul(&pivot);
        let pivot_inv = pivot.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].mul(&pivot_inv);
            for c in col..n {
                let delta = factor.mul(&a[col * n + c]);
                a[r * n + c] = a[r * n + c].sub(&delta);
            }
        }
    }
    Ok(if negate { det.neg() } else { det })
}

/// Fraction-free (Bareiss) elimination on an integer matrix; every division
/// is exact.
pub(crate) fn det_bareiss(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_negative = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(r * n + c, k * n + c);
                    }
                    sign_negative = !sign_negative;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

/// Determinant mod p by exact elimination on residues.
fn det_mod_p(mut a: Vec<u64>, n: usize, p: u64) -> u64 {
    let mut det = 1u64 % p;
    let mut negate = false;
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| a[r * n + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for c in 0..n {
                a.swap(pivot_row * n + c, col * n + c);
            }
            negate = !negate;
        }
        let pivot = a[col * n + col];
        det = crate::scalars::mul_mod_pub(det, pivot, p);
        let inv = crate::scalars::inv_mod_pub(pivot, p).expect("pivot nonzero mod prime");
        for r in col + 1..n {
            if a[r * n + col] == 0 {
                continue;
            }
            let factor = crate::scalars::mul_mod_pub(a[r * n + col], inv, p);
            for c in col..n {
                let delta = crate::scalars::mul_mod_pub(factor, a[col * n + c], p);
                a[r * n + c] = (a[r * n + c] + p - delta) % p;
            }
        }
    }
    if negate && det != 0 {
        p - det
    } else {
        det
    }
}

/// Upper bound on |det M| for an integer matrix: product of rounded-up row
/// Euclidean norms.
pub fn hadamard_bound(m: &DenseMatrix<Rational>) -> Result<BigInt, MatrixError> {
    let ints = integer_entries(m)?;
    let n = m.cols();
    let mut bound = BigInt::one();
    for r in 0..m.rows() {
        let mut norm_sq = BigInt::zero();
        for c in 0..n {
            let e = &ints[r * n + c];
            norm_sq += e * e;
        }
        bound *= ceil_sqrt(&norm_sq);
    }
    Ok(bound)
}

fn ceil_sqrt(x: &BigInt) -> BigInt {
    let s = x.sqrt();
    if &s * &s < *x {
        s + 1
    } else {
        s
    }
}

fn integer_entries(m: &DenseMatrix<Rational>) -> Result<Vec<BigInt>, MatrixError> {
    m.entries()
        .iter()
        .map(|e| {
            if e.is_integer() {
                Ok(e.numer().clone())
            } else {
                Err(MatrixError::NonIntegerEntry)
            }
        })
        .collect()
}

/// Seed for the internal prime stream; fixed so results are reproducible
/// run to run. Any prime works (Las Vegas), so there is nothing to tune.
const MULTIMOD_PRIME_SEED: u64 = 0x6b65_726e_6465_7431;

/// Exact integer determinant via per-prime elimination and CRT
/// reconstruction. Primes are accumulated until their product exceeds twice
/// the Hadamard bound, so the symmetric-range CRT representative is the
/// signed determinant itself.
pub fn det_multimodular(m: &DenseMatrix<Rational>) -> Result<BigInt, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    let ints = integer_entries(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let bound = hadamard_bound(m)?;
    if bound.is_zero() {
        // A zero row forces a zero determinant.
        return Ok(BigInt::zero());
    }
    let target: BigInt = bound * 2;
    let mut sampler = PrimeSampler::new(MULTIMOD_PRIME_SEED);
    let mut primes: Vec<u64> = Vec::new();
    let mut product = BigInt::one();
    while product <= target {
        let p = sampler.next_prime();
        if primes.contains(&p) {
            continue;
        }
        primes.push(p);
        product *= BigInt::from(p);
    }
    let residues: Vec<(u64, u64)> = primes
        .iter()
        .map(|&p| {
            let reduced: Vec<u64> = ints.iter().map(|e| residue_of_bigint(e, p)).collect();
            (det_mod_p(reduced, n, p), p)
        })
        .collect();
    crt_combine(&residues).map_err(|_| MatrixError::MixedContext)
}

/// Scale each row by the lcm of its denominators, producing an integer
/// matrix. Returns the cleared matrix and the accumulated scale factor
/// (det of the original = det of the cleared divided by the scale).
pub fn clear_denominators(m: &DenseMatrix<Rational>) -> (DenseMatrix<Rational>, BigInt) {
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let lcm = m
            .row(r)
            .iter()
            .fold(BigInt::one(), |acc, e| num_integer::Integer::lcm(&acc, e.denom()));
        rows.push(
            m.row(r)
                .iter()
                .map(|e| Rational::from_bigint(e.numer() * (&lcm / e.denom())))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    (
        DenseMatrix::from_rows((), rows).expect("shape preserved"),
        scale,
    )
}

/// Entry-wise reduction of a rational matrix into a prime field.
pub fn project_matrix(
    m: &DenseMatrix<Rational>,
    field: &PrimeField,
) -> Result<DenseMatrix<Fp>, ScalarError> {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for e in m.entries() {
        entries.push(crate::scalars::project_mod_p(e, field)?);
    }
    Ok(DenseMatrix::new(m.rows(), m.cols(), *field, entries)
        .expect("projection preserves shape"))
}
