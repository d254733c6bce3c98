//! Kernel systems and the reproducing identity.
//!
//! A system of n+1 parameter sextuples (u_i, v_i, k_i; x_j, y_j, l_j) defines
//! the Cauchy-like kernel matrix with entries (y_j u_i - x_j v_i)/(l_j - k_i).
//! The last sextuple is distinguished: the bordered determinants built from
//! it satisfy `D_{n+1} * D_n * (l - k) = Yraw * Uraw - Xraw * Vraw`,
//! which is the division-free form of the reproducing identity (the quotient
//! D_{n+1}/D_n again has the kernel entry shape). Working division-free keeps
//! systems with a vanishing leading minor testable.
//!
//! Border orientation is fixed: Uraw/Vraw replace the last *column* of the
//! full kernel matrix by the u (resp. v) values; Xraw/Yraw replace the last
//! *row* by the x (resp. y) values. Sign conventions depend on this, so the
//! four builders below are the single source of truth for it.

use alloc::vec::Vec;
use core::fmt;

use crate::detcore::{det_exact, DenseMatrix};
use crate::report::Report;
use crate::scalars::{project_mod_p, Fp, PrimeField, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq)]
pub struct LeftTriplet<T: Scalar> {
    pub u: T,
    pub v: T,
    pub k: T,
}

impl<T: Scalar> LeftTriplet<T> {
    pub fn new(u: T, v: T, k: T) -> Self {
        LeftTriplet { u, v, k }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RightTriplet<T: Scalar> {
    pub x: T,
    pub y: T,
    pub l: T,
}

impl<T: Scalar> RightTriplet<T> {
    pub fn new(x: T, y: T, l: T) -> Self {
        RightTriplet { x, y, l }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    /// A system needs at least one triplet pair.
    Empty,
    /// Left and right triplet lists differ in length.
    LengthMismatch,
    /// Triplets come from different field contexts.
    MixedContext,
    /// The k parameters must be pairwise distinct.
    RepeatedK,
    /// The l parameters must be pairwise distinct.
    RepeatedL,
    /// Some l_j equals some k_i, so a kernel denominator vanishes.
    KernelPole,
    /// Some k_i + k_j vanishes (symmetric systems only).
    KSumZero,
    /// Requested kernel size out of range.
    SizeError { requested: usize, max: usize },
    /// The leading principal minor D_n vanishes.
    DegenerateMinor,
    /// A leading minor in the bordering recursion vanishes.
    DegenerateChain { level: usize },
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::Empty => write!(f, "system has no triplets"),
            SystemError::LengthMismatch => write!(f, "left/right triplet counts differ"),
            SystemError::MixedContext => write!(f, "triplets from different field contexts"),
            SystemError::RepeatedK => write!(f, "k parameters are not pairwise distinct"),
            SystemError::RepeatedL => write!(f, "l parameters are not pairwise distinct"),
            SystemError::KernelPole => write!(f, "some l_j equals some k_i"),
            SystemError::KSumZero => write!(f, "some k_i + k_j vanishes"),
            SystemError::SizeError { requested, max } => {
                write!(f, "size {requested} out of range (max {max})")
            }
            SystemError::DegenerateMinor => write!(f, "leading principal minor vanishes"),
            SystemError::DegenerateChain { level } => {
                write!(f, "leading minor D_{level} vanishes in the bordering chain")
            }
        }
    }
}

impl core::error::Error for SystemError {}

/// Why a rational system failed to reduce mod a prime. Either way the caller
/// should resample the prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    /// The prime divides a denominator.
    BadReduction,
    /// The projected parameters violate a system invariant mod p.
    DegenerateModP,
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionError::BadReduction => write!(f, "prime divides a denominator"),
            ProjectionError::DegenerateModP => {
                write!(f, "system invariants degenerate mod the prime")
            }
        }
    }
}

impl core::error::Error for ProjectionError {}

impl From<ScalarError> for ProjectionError {
    fn from(_: ScalarError) -> Self {
        ProjectionError::BadReduction
    }
}

/// The raw (un-normalized) bordered determinants of a system, together with
/// the leading minor D_n and the full determinant D_{n+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderSet<T: Scalar> {
    pub u_raw: T,
    pub v_raw: T,
    pub x_raw: T,
    pub y_raw: T,
    pub d_n: T,
    pub d_n1: T,
}

/// n+1 parameter sextuples with the distinguished pair last.
#[derive(Debug, Clone, PartialEq)]
pub struct SextupleSystem<T: Scalar> {
    left: Vec<LeftTriplet<T>>,
    right: Vec<RightTriplet<T>>,
    ctx: T::Ctx,
}

impl<T: Scalar> SextupleSystem<T> {
    pub fn new(
        left: Vec<LeftTriplet<T>>,
        right: Vec<RightTriplet<T>>,
    ) -> Result<Self, SystemError> {
        if left.is_empty() {
            return Err(SystemError::Empty);
        }
        if left.len() != right.len() {
            return Err(SystemError::LengthMismatch);
        }
        let ctx = left[0].u.ctx();
        let ctx_ok = left
            .iter()
            .flat_map(|t| [&t.u, &t.v, &t.k])
            .chain(right.iter().flat_map(|t| [&t.x, &t.y, &t.l]))
            .all(|s| s.ctx() == ctx);
        if !ctx_ok {
            return Err(SystemError::MixedContext);
        }
        for i in 0..left.len() {
            for j in i + 1..left.len() {
                if left[i].k == left[j].k {
                    return Err(SystemError::RepeatedK);
                }
                if right[i].l == right[j].l {
                    return Err(SystemError::RepeatedL);
                }
            }
        }
        for lt in &left {
            for rt in &right {
                if rt.l == lt.k {
                    return Err(SystemError::KernelPole);
                }
            }
        }
        Ok(SextupleSystem { left, right, ctx })
    }

    /// n, the number of base pairs (the system holds n+1 pairs in total).
    pub fn n(&self) -> usize {
        self.left.len() - 1
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self) -> &[LeftTriplet<T>] {
        &self.left
    }

    pub fn right(&self) -> &[RightTriplet<T>] {
        &self.right
    }

    pub fn distinguished_left(&self) -> &LeftTriplet<T> {
        self.left.last().expect("system is nonempty")
    }

    pub fn distinguished_right(&self) -> &RightTriplet<T> {
        self.right.last().expect("system is nonempty")
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    /// Kernel entry (y_j u_i - x_j v_i)/(l_j - k_i), zero-based indices.
    pub fn kernel_entry(&self, i: usize, j: usize) -> T {
        let lt = &self.left[i];
        let rt = &self.right[j];
        let num = rt.y.mul(&lt.u).sub(&rt.x.mul(&lt.v));
        let den = rt.l.sub(&lt.k);
        num.div(&den).expect("invariant: l_j != k_i")
    }

    /// The m x m kernel matrix over the first m pairs, 0 <= m <= n+1.
    pub fn kernel_matrix(&self, m: usize) -> Result<DenseMatrix<T>, SystemError> {
        if m > self.size() {
            return Err(SystemError::SizeError {
                requested: m,
                max: self.size(),
            });
        }
        Ok(DenseMatrix::from_fn(m, m, self.ctx.clone(), |i, j| {
            self.kernel_entry(i, j)
        }))
    }

    /// Subsystem on the first `pairs` sextuples (its distinguished pair is
    /// the pairs-th one).
    pub fn leading_system(&self, pairs: usize) -> Self {
        assert!((1..=self.size()).contains(&pairs));
        SextupleSystem {
            left: self.left[..pairs].to_vec(),
            right: self.right[..pairs].to_vec(),
            ctx: self.ctx.clone(),
        }
    }

    fn full_kernel(&self) -> DenseMatrix<T> {
        self.kernel_matrix(self.size()).expect("size is in range")
    }

    /// The four bordered matrices, in U, V, X, Y order. U and V replace the
    /// last column by the u (resp. v) values; X and Y replace the last row
    /// by the x (resp. y) values.
    pub fn border_matrices(&self) -> [DenseMatrix<T>; 4] {
        let full = self.full_kernel();
        let last = self.size() - 1;
        let u_col: Vec<T> = self.left.iter().map(|t| t.u.clone()).collect();
        let v_col: Vec<T> = self.left.iter().map(|t| t.v.clone()).collect();
        let x_row: Vec<T> = self.right.iter().map(|t| t.x.clone()).collect();
        let y_row: Vec<T> = self.right.iter().map(|t| t.y.clone()).collect();
        let u = full.with_col_replaced(last, u_col).expect("column fits");
        let v = full.with_col_replaced(last, v_col).expect("column fits");
        let x = full.with_row_replaced(last, x_row).expect("row fits");
        let y = full.with_row_replaced(last, y_row).expect("row fits");
        [u, v, x, y]
    }

    fn raw_border_values(&self) -> (T, T, T, T) {
        let [u, v, x, y] = self.border_matrices();
        (
            det_exact(&u).expect("square by construction"),
            det_exact(&v).expect("square by construction"),
            det_exact(&x).expect("square by construction"),
            det_exact(&y).expect("square by construction"),
        )
    }

    /// Raw bordered determinants plus D_n and D_{n+1}.
    pub fn border_determinants(&self) -> BorderSet<T> {
        let (u_raw, v_raw, x_raw, y_raw) = self.raw_border_values();
        let d_n = det_exact(&self.kernel_matrix(self.n()).expect("n in range"))
            .expect("square by construction");
        let d_n1 = det_exact(&self.full_kernel()).expect("square by construction");
        BorderSet {
            u_raw,
            v_raw,
            x_raw,
            y_raw,
            d_n,
            d_n1,
        }
    }

    /// Normalized borders (U_n, V_n, X_n, Y_n): raw values divided by D_n.
    pub fn normalized_borders(&self) -> Result<(T, T, T, T), SystemError> {
        let b = self.border_determinants();
        let inv = b.d_n.inv().ok_or(SystemError::DegenerateMinor)?;
        Ok((
            b.u_raw.mul(&inv),
            b.v_raw.mul(&inv),
            b.x_raw.mul(&inv),
            b.y_raw.mul(&inv),
        ))
    }

    /// Division-free reproducing identity:
    /// D_{n+1} * D_n * (l - k) = Yraw * Uraw - Xraw * Vraw.
    pub fn verify_main_theorem(&self) -> Report {
        let b = self.border_determinants();
        let l_minus_k = self.distinguished_right().l.sub(&self.distinguished_left().k);
        let lhs = b.d_n1.mul(&b.d_n).mul(&l_minus_k);
        let rhs = b.y_raw.mul(&b.u_raw).sub(&b.x_raw.mul(&b.v_raw));
        let mut report = Report::new();
        report.push_eq("kernel.main_theorem", &lhs, &rhs);
        report
    }

    /// D_{n+1} by the bordering recursion
    /// D_{m+1} = (Yraw_m Uraw_m - Xraw_m Vraw_m) / (D_m (l_{m+1} - k_{m+1})),
    /// using only size-(m+1) bordered determinants. Fails with
    /// [`SystemError::DegenerateChain`] when a leading minor vanishes.
    pub fn det_by_bordering(&self) -> Result<T, SystemError> {
        let mut d = T::one(&self.ctx);
        for m in 0..self.size() {
            let sub = self.leading_system(m + 1);
            let (u_raw, v_raw, x_raw, y_raw) = sub.raw_border_values();
            let l_minus_k = sub
                .distinguished_right()
                .l
                .sub(&sub.distinguished_left().k);
            let denom = d.mul(&l_minus_k);
            let num = y_raw.mul(&u_raw).sub(&x_raw.mul(&v_raw));
            d = num
                .div(&denom)
                .ok_or(SystemError::DegenerateChain { level: m })?;
        }
        Ok(d)
    }
}

impl SextupleSystem<Rational> {
    /// Reduce every parameter mod p and revalidate the system invariants in
    /// the smaller field.
    pub fn project(&self, field: &PrimeField) -> Result<SextupleSystem<Fp>, ProjectionError> {
        let left = self
            .left
            .iter()
            .map(|t| {
                Ok(LeftTriplet::new(
                    project_mod_p(&t.u, field)?,
                    project_mod_p(&t.v, field)?,
                    project_mod_p(&t.k, field)?,
                ))
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        let right = self
            .right
            .iter()
            .map(|t| {
                Ok(RightTriplet::new(
                    project_mod_p(&t.x, field)?,
                    project_mod_p(&t.y, field)?,
                    project_mod_p(&t.l, field)?,
                ))
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        SextupleSystem::new(left, right).map_err(|_| ProjectionError::DegenerateModP)
    }
}
