//! Bordered-minor identities on arbitrary square matrices: the Jacobi
//! (Desnanot-Jacobi) two-row/two-column identity, Sylvester's bordered
//! determinant identity, and the adjugate-minor formula.
//!
//! All three are polynomial identities, so they hold for singular matrices
//! too; the checks report rather than throw on mismatch.

use alloc::vec::Vec;

use crate::detcore::{det_exact, DenseMatrix, MatrixError, MinorSpec};
use crate::report::Report;
use crate::scalars::{pow, Scalar};

/// Bordering dimensions for the generalized identities: a k x k block of
/// bordered minors over an n x n base, 2 <= k < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BorderedSpec {
    pub kdim: usize,
    pub size: usize,
}

impl BorderedSpec {
    pub fn new(kdim: usize, size: usize) -> Result<Self, MatrixError> {
        if kdim < 2 || kdim >= size {
            return Err(MatrixError::IndexError);
        }
        Ok(BorderedSpec { kdim, size })
    }
}

/// E * D = M_{r1,c1} M_{r2,c2} - M_{r1,c2} M_{r2,c1}, with E = det M, D the
/// double minor, and M_{a,b} the single-deletion minors. Index pairs are
/// normalized ascending (the identity is orientation-sensitive).
pub fn jacobi_check<T: Scalar>(
    m: &DenseMatrix<T>,
    rows: (usize, usize),
    cols: (usize, usize),
) -> Result<Report, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    if n < 3 {
        return Err(MatrixError::SizeGuard { limit: 3 });
    }
    if rows.0 == rows.1 || cols.0 == cols.1 {
        return Err(MatrixError::IndexError);
    }
    if [rows.0, rows.1].iter().any(|&r| r >= n) || [cols.0, cols.1].iter().any(|&c| c >= n) {
        return Err(MatrixError::IndexError);
    }
    let (r1, r2) = (rows.0.min(rows.1), rows.0.max(rows.1));
    let (c1, c2) = (cols.0.min(cols.1), cols.0.max(cols.1));

    let e = det_exact(m)?;
    let d = det_exact(&m.minor(&MinorSpec::new(&[r1, r2], &[c1, c2])?)?)?;
    let m11 = det_exact(&m.minor(&MinorSpec::single(r1, c1))?)?;
    let m12 = det_exact(&m.minor(&MinorSpec::single(r1, c2))?)?;
    let m21 = det_exact(&m.minor(&MinorSpec::single(r2, c1))?)?;
    let m22 = det_exact(&m.minor(&MinorSpec::single(r2, c2))?)?;

    let lhs = e.mul(&d);
    let rhs = m11.mul(&m22).sub(&m12.mul(&m21));
    let mut report = Report::new();
    report.push_eq("minors.jacobi", &lhs, &rhs);
    Ok(report)
}

/// Sylvester's bordered identity: with F the lower-right (n-k) principal
/// minor and g_ij the minor bordering F by row i and column j (i, j < k),
/// det(g) = F^{k-1} * det(M).
pub fn sylvester_bordered<T: Scalar>(
    m: &DenseMatrix<T>,
    kdim: usize,
) -> Result<Report, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    BorderedSpec::new(kdim, n)?;

    let tail: Vec<usize> = (kdim..n).collect();
    let f = det_exact(&keep_submatrix(m, &tail, &tail))?;
    let e = det_exact(m)?;

    let g = DenseMatrix::from_fn(kdim, kdim, m.ctx().clone(), |i, j| {
        let mut rows = Vec::with_capacity(n - kdim + 1);
        rows.push(i);
        rows.extend_from_slice(&tail);
        let mut cols = Vec::with_capacity(n - kdim + 1);
        cols.push(j);
        cols.extend_from_slice(&tail);
        det_exact(&keep_submatrix(m, &rows, &cols)).expect("square by construction")
    });
    let lhs = det_exact(&g)?;
    let rhs = pow(&f, kdim - 1).mul(&e);
    let mut report = Report::new();
    report.push_eq("minors.sylvester", &lhs, &rhs);
    Ok(report)
}

/// Classical adjugate: transpose of the cofactor matrix.
pub fn adjugate<T: Scalar>(m: &DenseMatrix<T>) -> Result<DenseMatrix<T>, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    Ok(DenseMatrix::from_fn(n, n, m.ctx().clone(), |i, j| {
        // adj[i][j] = (-1)^{i+j} * minor deleting row j, column i
        let minor = m
            .minor(&MinorSpec::single(j, i))
            .expect("indices in bounds");
        let det = det_exact(&minor).expect("square by construction");
        if (i + j) % 2 == 1 {
            det.neg()
        } else {
            det
        }
    }))
}

/// Adjugate-minor formula: K = det of the leading k x k principal minor of
/// adj(M) equals F * E^{k-1}, with F the lower-right (n-k) principal minor
/// of M and E = det M. For principal minors the adjugate orientation
/// (cofactor matrix vs its transpose) does not change K; the diagonal case
/// is pinned by a regression test.
pub fn adjugate_minor_check<T: Scalar>(
    m: &DenseMatrix<T>,
    kdim: usize,
) -> Result<Report, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::ShapeError);
    }
    let n = m.rows();
    BorderedSpec::new(kdim, n)?;

    let adj = adjugate(m)?;
    let head: Vec<usize> = (0..kdim).collect();
    let k = det_exact(&keep_submatrix(&adj, &head, &head))?;

    let tail: Vec<usize> = (kdim..n).collect();
    let f = det_exact(&keep_submatrix(m, &tail, &tail))?;
    let e = det_exact(m)?;
    let rhs = f.mul(&pow(&e, kdim - 1));
    let mut report = Report::new();
    report.push_eq("minors.adjugate", &k, &rhs);
    Ok(report)
}

fn keep_submatrix<T: Scalar>(
    m: &DenseMatrix<T>,
    rows: &[usize],
    cols: &[usize],
) -> DenseMatrix<T> {
    DenseMatrix::from_fn(rows.len(), cols.len(), m.ctx().clone(), |r, c| {
        m.at(rows[r], cols[c]).clone()
    })
}
