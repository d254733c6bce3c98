//! The moment-form (Okada-style) expansion of the kernel determinant.
//!
//! For a system with n+1 sextuples, the 2(n+1) x 2(n+1) determinant E' built
//! from moment rows k^r u and k^r v (left block) and l^r x, l^r y (right
//! block) equals the kernel determinant scaled by
//! (-1)^{n(n+1)/2} * prod_{i,j} (l_j - k_i).
//!
//! The four co-minors of E' at the entries k^n u, k^n v, l^n x, l^n y are
//! named calY, calX, calV, calU respectively (plain minors, no cofactor
//! signs; the signs are absorbed into the prefactor relations). They satisfy
//! E * D = calY*calU - calX*calV with D the double minor, and each co-minor
//! is a signed, product-scaled multiple of the corresponding raw bordered
//! determinant of the kernel system.


use crate::detcore::{det_exact, DenseMatrix, MinorSpec};
use crate::kernel::{SextupleSystem, SystemError};
use crate::report::Report;
use crate::scalars::{pow, Scalar};

/// The moment matrix together with its block layout.
///
/// Rows 0..=n hold the u/x moment rows (powers 0..=n), rows n+1..=2n+1 the
/// v/y moment rows. Columns 0..=n are the left triplets (distinguished pair
/// last), columns n+1..=2n+1 the right triplets.
#[derive(Debug, Clone)]
pub struct OkadaLayout<T: Scalar> {
    matrix: DenseMatrix<T>,
    n: usize,
}

impl<T: Scalar> OkadaLayout<T> {
    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Position of the k^n u entry.
    pub fn pos_ku(&self) -> (usize, usize) {
        (self.n, self.n)
    }

    /// Position of the k^n v entry.
    pub fn pos_kv(&self) -> (usize, usize) {
        (2 * self.n + 1, self.n)
    }

    /// Position of the l^n x entry.
    pub fn pos_lx(&self) -> (usize, usize) {
        (self.n, 2 * self.n + 1)
    }

    /// Position of the l^n y entry.
    pub fn pos_ly(&self) -> (usize, usize) {
        (2 * self.n + 1, 2 * self.n + 1)
    }
}

/// The four co-minors and the double minor of the moment matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CominorSet<T: Scalar> {
    pub cal_u: T,
    pub cal_v: T,
    pub cal_x: T,
    pub cal_y: T,
    pub d_scaled: T,
}

/// Build the moment matrix for a system.
pub fn okada_matrix<T: Scalar>(sys: &SextupleSystem<T>) -> OkadaLayout<T> {
    let n = sys.n();
    let size = sys.size(); // n + 1
    let matrix = DenseMatrix::from_fn(2 * size, 2 * size, sys.ctx().clone(), |r, c| {
        let power = r % size;
        let first_block_row = r < size;
        if c < size {
            let t = &sys.left()[c];
            let w = if first_block_row { &t.u } else { &t.v };
            pow(&t.k, power).mul(w)
        } else {
            let t = &sys.right()[c - size];
            let w = if first_block_row { &t.x } else { &t.y };
            pow(&t.l, power).mul(w)
        }
    });
    OkadaLayout { matrix, n }
}

/// (-1)^{n(n+1)/2} * prod_{i,j} (l_j - k_i) * D_{n+1}.
pub fn scaled_kernel_det<T: Scalar>(sys: &SextupleSystem<T>) -> T {
    let d_n1 = det_exact(&sys.kernel_matrix(sys.size()).expect("full size in range"))
        .expect("square by construction");
    let scale = full_cross_product(sys);
    apply_sign(scale.mul(&d_n1), half_product_parity(sys.n(), 1))
}

/// det(E') = E, i.e. the moment determinant equals the scaled kernel
/// determinant.
pub fn verify_okada<T: Scalar>(sys: &SextupleSystem<T>) -> Report {
    let lhs = det_exact(okada_matrix(sys).matrix()).expect("square by construction");
    let rhs = scaled_kernel_det(sys);
    let mut report = Report::new();
    report.push_eq("okada.moment_equivalence", &lhs, &rhs);
    report
}

/// The four co-minors (plain minors at k^n u, k^n v, l^n x, l^n y, named
/// calY, calX, calV, calU in that order) and the double minor d_scaled.
pub fn cominors<T: Scalar>(sys: &SextupleSystem<T>) -> CominorSet<T> {
    let layout = okada_matrix(sys);
    let m = layout.matrix();
    let minor_det = |(r, c): (usize, usize)| {
        det_exact(&m.minor(&MinorSpec::single(r, c)).expect("in bounds"))
            .expect("square by construction")
    };
    let (dr, dc) = (layout.pos_ku().0, layout.pos_ku().1);
    let double = MinorSpec::new(&[dr, layout.pos_kv().0], &[dc, layout.pos_ly().1])
        .expect("distinct indices");
    CominorSet {
        cal_y: minor_det(layout.pos_ku()),
        cal_x: minor_det(layout.pos_kv()),
        cal_v: minor_det(layout.pos_lx()),
        cal_u: minor_det(layout.pos_ly()),
        d_scaled: det_exact(&m.minor(&double).expect("in bounds"))
            .expect("square by construction"),
    }
}

/// Checks, all division-free:
/// (a) E * d_scaled = calY*calU - calX*calV;
/// (b) the four prefactor relations tying co-minors to raw borders;
/// (c) d_scaled = (-1)^{n(n-1)/2} * prod_{i,j<=n} (l_j - k_i) * D_n.
pub fn verify_cominor_identities<T: Scalar>(sys: &SextupleSystem<T>) -> Report {
    let n = sys.n();
    let mut report = Report::new();
    let e = det_exact(okada_matrix(sys).matrix()).expect("square by construction");
    let c = cominors(sys);
    let b = sys.border_determinants();

    let lhs = e.mul(&c.d_scaled);
    let rhs = c.cal_y.mul(&c.cal_u).sub(&c.cal_x.mul(&c.cal_v));
    report.push_eq("okada.cominor_product", &lhs, &rhs);

    let base = base_cross_product(sys);
    let q_l = prod_lj_minus_k(sys);
    let q_k = prod_l_minus_ki(sys);
    let plus = half_product_parity(n, 1); // n(n+1)/2
    let minus = half_product_parity(n, 0); // n(n-1)/2

    let expect_u = apply_sign(base.mul(&q_l).mul(&b.u_raw), plus);
    report.push_eq("okada.prefactor_u", &c.cal_u, &expect_u);
    let expect_v = apply_sign(base.mul(&q_l).mul(&b.v_raw), minus);
    report.push_eq("okada.prefactor_v", &c.cal_v, &expect_v);
    let expect_x = apply_sign(base.mul(&q_k).mul(&b.x_raw), plus);
    report.push_eq("okada.prefactor_x", &c.cal_x, &expect_x);
    let expect_y = apply_sign(base.mul(&q_k).mul(&b.y_raw), minus);
    report.push_eq("okada.prefactor_y", &c.cal_y, &expect_y);

    let expect_d = apply_sign(base.mul(&b.d_n), minus);
    report.push_eq("okada.scaled_minor", &c.d_scaled, &expect_d);

    report
}

/// The big-determinant representations: each co-minor of the moment matrix,
/// divided by its displayed denominator, reproduces the corresponding
/// normalized border. Requires D_n != 0.
pub fn big_border_representations<T: Scalar>(
    sys: &SextupleSystem<T>,
) -> Result<Report, SystemError> {
    let n = sys.n();
    let (u_n, v_n, x_n, y_n) = sys.normalized_borders()?;
    let b = sys.border_determinants();
    let c = cominors(sys);
    let base = base_cross_product(sys);
    let q_l = prod_lj_minus_k(sys);
    let q_k = prod_l_minus_ki(sys);
    let minus = half_product_parity(n, 0);

    // Denominators: (-1)^n (-1)^{n(n-1)/2} P D_n Q for U and X,
    // (-1)^{n(n-1)/2} P D_n Q for V and Y, with Q the l_j-k or l-k_i product.
    let quotient = |cal: &T, q: &T, extra_n_sign: bool| {
        let mut denom = apply_sign(base.mul(&b.d_n).mul(q), minus);
        if extra_n_sign && n % 2 == 1 {
            denom = denom.neg();
        }
        cal.div(&denom).expect("denominator factors are nonzero")
    };

    let mut report = Report::new();
    report.push_eq("okada.bigrep_u", &quotient(&c.cal_u, &q_l, true), &u_n);
    report.push_eq("okada.bigrep_v", &quotient(&c.cal_v, &q_l, false), &v_n);
    report.push_eq("okada.bigrep_x", &quotient(&c.cal_x, &q_k, true), &x_n);
    report.push_eq("okada.bigrep_y", &quotient(&c.cal_y, &q_k, false), &y_n);
    Ok(report)
}

/// prod over the n base pairs of (l_j - k_i).
fn base_cross_product<T: Scalar>(sys: &SextupleSystem<T>) -> T {
    let n = sys.n();
    let mut acc = T::one(sys.ctx());
    for i in 0..n {
        for j in 0..n {
            acc = acc.mul(&sys.right()[j].l.sub(&sys.left()[i].k));
        }
    }
    acc
}

/// prod over all n+1 pairs of (l_j - k_i).
fn full_cross_product<T: Scalar>(sys: &SextupleSystem<T>) -> T {
    let size = sys.size();
    let mut acc = T::one(sys.ctx());
    for i in 0..size {
        for j in 0..size {
            acc = acc.mul(&sys.right()[j].l.sub(&sys.left()[i].k));
        }
    }
    acc
}

/// prod_{j <= n} (l_j - k) with k from the distinguished pair.
fn prod_lj_minus_k<T: Scalar>(sys: &SextupleSystem<T>) -> T {
    let k = &sys.distinguished_left().k;
    sys.right()[..sys.n()]
        .iter()
        .fold(T::one(sys.ctx()), |acc, t| acc.mul(&t.l.sub(k)))
}

/// prod_{i <= n} (l - k_i) with l from the distinguished pair.
fn prod_l_minus_ki<T: Scalar>(sys: &SextupleSystem<T>) -> T {
    let l = &sys.distinguished_right().l;
    sys.left()[..sys.n()]
        .iter()
        .fold(T::one(sys.ctx()), |acc, t| acc.mul(&l.sub(&t.k)))
}

/// Parity of n(n+offset)/2; offset 1 gives n(n+1)/2, offset 0 gives n(n-1)/2.
fn half_product_parity(n: usize, offset: usize) -> bool {
    let other = if offset == 1 { n + 1 } else { n.saturating_sub(1) };
    (n * other / 2) % 2 == 1
}

fn apply_sign<T: Scalar>(value: T, negative: bool) -> T {
    if negative {
        value.neg()
    } else {
        value
    }
}
