//! The factorizing specialization x_i = u_i, y_i = -v_i, l_i = -k_i.
//!
//! Under this substitution the kernel entry becomes
//! (u_i v_j + u_j v_i)/(k_i + k_j), a symmetric matrix, and the reproducing
//! identity degenerates into a product: D_{n+1}/D_n = U_n V_n / k. The
//! factors themselves are determinants of matrices whose rows alternate
//! between u-weighted and v-weighted moment rows, with a parity split in
//! which factor equals which normalized border.

use alloc::vec::Vec;

use crate::detcore::{det_exact, DenseMatrix};
use crate::kernel::{LeftTriplet, ProjectionError, RightTriplet, SextupleSystem, SystemError};
use crate::report::Report;
use crate::scalars::{pow, project_mod_p, Fp, PrimeField, Rational, Scalar, ScalarError};

/// Which weight leads the alternating rows: u-led means rows u, kv, k^2 u,
/// ...; v-led swaps the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltVariant {
    ULed,
    VLed,
}

/// n+1 triplets (u_i, v_i, k_i) with k_i pairwise distinct and all sums
/// k_i + k_j nonzero (in particular every k_i is nonzero and no pair is
/// opposite).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSystem<T: Scalar> {
    triplets: Vec<LeftTriplet<T>>,
    ctx: T::Ctx,
}

impl<T: Scalar> SymmetricSystem<T> {
    pub fn new(triplets: Vec<LeftTriplet<T>>) -> Result<Self, SystemError> {
        if triplets.is_empty() {
            return Err(SystemError::Empty);
        }
        let ctx = triplets[0].u.ctx();
        if triplets
            .iter()
            .flat_map(|t| [&t.u, &t.v, &t.k])
            .any(|s| s.ctx() != ctx)
        {
            return Err(SystemError::MixedContext);
        }
        for i in 0..triplets.len() {
            for j in i..triplets.len() {
                if i != j && triplets[i].k == triplets[j].k {
                    return Err(SystemError::RepeatedK);
                }
                if triplets[i].k.add(&triplets[j].k).is_zero() {
                    return Err(SystemError::KSumZero);
                }
            }
        }
        Ok(SymmetricSystem { triplets, ctx })
    }

    pub fn n(&self) -> usize {
        self.triplets.len() - 1
    }

    pub fn size(&self) -> usize {
        self.triplets.len()
    }

    pub fn triplets(&self) -> &[LeftTriplet<T>] {
        &self.triplets
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    /// The general system with right triplets (u_i, -v_i, -k_i); its kernel
    /// entries are (u_i v_j + u_j v_i)/(k_i + k_j).
    pub fn lift(&self) -> SextupleSystem<T> {
        let right: Vec<RightTriplet<T>> = self
            .triplets
            .iter()
            .map(|t| RightTriplet::new(t.u.clone(), t.v.neg(), t.k.neg()))
            .collect();
        SextupleSystem::new(self.triplets.clone(), right)
            .expect("symmetric invariants imply the general ones")
    }

    /// Reflection relations at the raw-border level: in the lifted system
    /// the distinguished right triplet is already (u, -v, -k), so
    /// Xraw = Uraw and Yraw = -Vraw.
    pub fn verify_reflection(&self) -> Report {
        let b = self.lift().border_determinants();
        let mut report = Report::new();
        report.push_eq("symmetric.reflection_x", &b.x_raw, &b.u_raw);
        report.push_eq("symmetric.reflection_y", &b.y_raw, &b.v_raw.neg());
        report
    }

    /// Division-free factorization: D_{n+1} * D_n * k = Uraw * Vraw.
    pub fn verify_factorization(&self) -> Report {
        let b = self.lift().border_determinants();
        let k = &self.triplets.last().expect("nonempty").k;
        let lhs = b.d_n1.mul(&b.d_n).mul(k);
        let rhs = b.u_raw.mul(&b.v_raw);
        let mut report = Report::new();
        report.push_eq("symmetric.factorization", &lhs, &rhs);
        report
    }

    /// m x m matrix whose row r is k_j^r * u_j for even r and k_j^r * v_j
    /// for odd r (u-led; v-led swaps the weights).
    pub fn alternating_matrix(
        &self,
        variant: AltVariant,
        m: usize,
    ) -> Result<DenseMatrix<T>, SystemError> {
        if m > self.size() {
            return Err(SystemError::SizeError {
                requested: m,
                max: self.size(),
            });
        }
        Ok(DenseMatrix::from_fn(m, m, self.ctx.clone(), |r, j| {
            let t = &self.triplets[j];
            let u_row = (r % 2 == 0) == (variant == AltVariant::ULed);
            let w = if u_row { &t.u } else { &t.v };
            pow(&t.k, r).mul(w)
        }))
    }

    /// The alternating-factor claims:
    /// (a) D_{n+1} = 2^{n+1} det(u-led, n+1) det(v-led, n+1) / prod(k_i+k_j)
    ///     over all ordered pairs of the n+1 parameters (both orders and
    ///     i = j included);
    /// (b) the same for D_n with 2^n and the n-sized objects;
    /// (c) the u-led quotient det(n+1)/(det(n) prod_j (k+k_j)) equals U_n
    ///     for n even and V_n for n odd;
    /// (d) the v-led quotient equals V_n for n even and U_n for n odd.
    /// Comparisons are division-free; the parity claims are skipped when
    /// D_n or the relevant principal minor vanishes.
    pub fn verify_alternating_factorizations(&self) -> Report {
        let n = self.n();
        let b = self.lift().border_determinants();
        let mut report = Report::new();

        let det_u_full = det_exact(&self.alternating_matrix(AltVariant::ULed, n + 1).unwrap())
            .expect("square by construction");
        let det_v_full = det_exact(&self.alternating_matrix(AltVariant::VLed, n + 1).unwrap())
            .expect("square by construction");
        let det_u_minor = det_exact(&self.alternating_matrix(AltVariant::ULed, n).unwrap())
            .expect("square by construction");
        let det_v_minor = det_exact(&self.alternating_matrix(AltVariant::VLed, n).unwrap())
            .expect("square by construction");

        let two = T::from_i64(&self.ctx, 2);
        let lhs_full = b.d_n1.mul(&self.ordered_sum_product(n + 1));
        let rhs_full = pow(&two, n + 1).mul(&det_u_full).mul(&det_v_full);
        report.push_eq("symmetric.alt_full_det", &lhs_full, &rhs_full);

        let lhs_minor = b.d_n.mul(&self.ordered_sum_product(n));
        let rhs_minor = pow(&two, n).mul(&det_u_minor).mul(&det_v_minor);
        report.push_eq("symmetric.alt_minor_det", &lhs_minor, &rhs_minor);

        if b.d_n.is_zero() {
            report.push_skipped("symmetric.alt_uled_quotient", "D_n vanishes");
            report.push_skipped("symmetric.alt_vled_quotient", "D_n vanishes");
            return report;
        }
        let q = self.border_sum_product();
        // n even: u-led factor carries U_n; n odd they swap.
        let (u_target, v_target) = if n % 2 == 0 {
            (&b.u_raw, &b.v_raw)
        } else {
            (&b.v_raw, &b.u_raw)
        };
        if det_u_minor.is_zero() {
            report.push_skipped("symmetric.alt_uled_quotient", "principal minor vanishes");
        } else {
            let lhs = det_u_full.mul(&b.d_n);
            let rhs = u_target.mul(&det_u_minor).mul(&q);
            report.push_eq("symmetric.alt_uled_quotient", &lhs, &rhs);
        }
        if det_v_minor.is_zero() {
            report.push_skipped("symmetric.alt_vled_quotient", "principal minor vanishes");
        } else {
            let lhs = det_v_full.mul(&b.d_n);
            let rhs = v_target.mul(&det_v_minor).mul(&q);
            report.push_eq("symmetric.alt_vled_quotient", &lhs, &rhs);
        }
        report
    }

    /// prod over all ordered pairs (i, j) in [0, m)^2 of (k_i + k_j).
    fn ordered_sum_product(&self, m: usize) -> T {
        let mut acc = T::one(&self.ctx);
        for i in 0..m {
            for j in 0..m {
                acc = acc.mul(&self.triplets[i].k.add(&self.triplets[j].k));
            }
        }
        acc
    }

    /// prod_{j < n} (k + k_j) with k the distinguished parameter.
    fn border_sum_product(&self) -> T {
        let k = &self.triplets.last().expect("nonempty").k;
        self.triplets[..self.n()]
            .iter()
            .fold(T::one(&self.ctx), |acc, t| acc.mul(&k.add(&t.k)))
    }
}

impl SymmetricSystem<Rational> {
    pub fn project(&self, field: &PrimeField) -> Result<SymmetricSystem<Fp>, ProjectionError> {
        let triplets = self
            .triplets
            .iter()
            .map(|t| {
                Ok(LeftTriplet::new(
                    project_mod_p(&t.u, field)?,
                    project_mod_p(&t.v, field)?,
                    project_mod_p(&t.k, field)?,
                ))
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        SymmetricSystem::new(triplets).map_err(|_| ProjectionError::DegenerateModP)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detcore::det_laplace;
    use alloc::vec;

    fn rat(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn ratq(n: i64, d: i64) -> Rational {
        Rational::normalize(n.into(), d.into()).unwrap()
    }

    fn lt(vals: [i64; 3]) -> LeftTriplet<Rational> {
        LeftTriplet::new(rat(vals[0]), rat(vals[1]), rat(vals[2]))
    }

    /// The worked symmetric example: triplets (1,1,1), (1,3,2).
    pub(crate) fn s2() -> SymmetricSystem<Rational> {
        SymmetricSystem::new(vec![lt([1, 1, 1]), lt([1, 3, 2])]).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_k() {
        assert_eq!(
            SymmetricSystem::new(vec![lt([1, 1, 1]), lt([1, 1, -1])]).unwrap_err(),
            SystemError::KSumZero
        );
        assert_eq!(
            SymmetricSystem::new(vec![lt([1, 1, 0])]).unwrap_err(),
            SystemError::KSumZero
        );
        assert_eq!(
            SymmetricSystem::new(vec![lt([1, 1, 2]), lt([3, 4, 2])]).unwrap_err(),
            SystemError::RepeatedK
        );
    }

    #[test]
    fn lift_kernel_is_symmetric() {
        let one = SymmetricSystem::new(vec![lt([1, 1, 1])]).unwrap();
        assert_eq!(one.lift().kernel_entry(0, 0), rat(1));

        let sys = s2().lift();
        let m = sys.kernel_matrix(2).unwrap();
        assert_eq!(m.at(0, 0), &rat(1));
        assert_eq!(m.at(0, 1), &ratq(4, 3));
        assert_eq!(m.at(1, 0), &ratq(4, 3));
        assert_eq!(m.at(1, 1), &ratq(3, 2));
        assert_eq!(det_laplace(&m).unwrap(), ratq(-5, 18));
    }

    #[test]
    fn reflection_s2_oracle() {
        let b = s2().lift().border_determinants();
        assert_eq!(b.u_raw, ratq(-1, 3));
        assert_eq!(b.x_raw, ratq(-1, 3));
        assert_eq!(b.v_raw, ratq(5, 3));
        assert_eq!(b.y_raw, ratq(-5, 3));
        assert!(s2().verify_reflection().passed());

        // Base case: X at (u, -v, -k) is just u = U.
        let one = SymmetricSystem::new(vec![lt([4, 7, 3])]).unwrap();
        assert!(one.verify_reflection().passed());
    }

    #[test]
    fn factorization_s2() {
        let b = s2().lift().border_determinants();
        assert_eq!(b.d_n1, ratq(-5, 18));
        assert_eq!(b.d_n, rat(1));
        assert!(s2().verify_factorization().passed());

        let one = SymmetricSystem::new(vec![lt([4, 7, 3])]).unwrap();
        assert!(one.verify_factorization().passed());
    }

    #[test]
    fn alternating_matrices_s2() {
        let sys = s2();
        let u_led = sys.alternating_matrix(AltVariant::ULed, 2).unwrap();
        assert_eq!(
            [u_led.at(0, 0), u_led.at(0, 1), u_led.at(1, 0), u_led.at(1, 1)],
            [&rat(1), &rat(1), &rat(1), &rat(6)]
        );
        assert_eq!(det_laplace(&u_led).unwrap(), rat(5));

        let v_led = sys.alternating_matrix(AltVariant::VLed, 2).unwrap();
        assert_eq!(
            [v_led.at(0, 0), v_led.at(0, 1), v_led.at(1, 0), v_led.at(1, 1)],
            [&rat(1), &rat(3), &rat(1), &rat(2)]
        );
        assert_eq!(det_laplace(&v_led).unwrap(), rat(-1));

        let single = sys.alternating_matrix(AltVariant::ULed, 1).unwrap();
        assert_eq!(single.at(0, 0), &rat(1));
        assert!(sys.alternating_matrix(AltVariant::ULed, 3).is_err());
    }

    #[test]
    fn alternating_factorizations_s2() {
        let report = s2().verify_alternating_factorizations();
        assert!(report.passed(), "{:?}", report.records);

        // Base case n = 0: D_1 = 2uv/(2k) = uv/k.
        let one = SymmetricSystem::new(vec![lt([4, 7, 3])]).unwrap();
        assert!(one.verify_alternating_factorizations().passed());
    }

    #[test]
    fn degenerate_dn_skips_parity_claims() {
        // u_1 = 0 forces D_1 = 0 while D_2 stays generic.
        let sys = SymmetricSystem::new(vec![lt([0, 1, 1]), lt([1, 3, 2])]).unwrap();
        let report = sys.verify_alternating_factorizations();
        assert!(report.passed());
        let skipped: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.verdict == crate::report::Verdict::Skipped)
            .collect();
        assert_eq!(skipped.len(), 2);
    }

    #[test]
    fn projection_stays_valid() {
        let field = PrimeField::new(1_000_003).unwrap();
        let proj = s2().project(&field).unwrap();
        assert!(proj.verify_reflection().passed());
        assert!(proj.verify_factorization().passed());
        assert!(proj.verify_alternating_factorizations().passed());
    }
}
