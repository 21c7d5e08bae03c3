use serde::Serialize;

use super::elem::{CycloElem, Valuation};
use super::matrix::CycloMatrix;
use crate::error::{Error, Result};

/// Valuations observed for `M = I + h^k U`, `N = I + h^l V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub p: u32,
    pub k: u32,
    pub l: u32,
    /// Entrywise valuations of `[M, N] - I`.
    pub commutator_valuations: Vec<Vec<Valuation>>,
    /// Entrywise valuations of `M^p - I`.
    pub power_valuations: Vec<Vec<Valuation>>,
    pub commutator_min: Valuation,
    pub power_min: Valuation,
    pub commutator_bound: u32,
    pub power_bound: u32,
    pub commutator_ok: bool,
    pub power_ok: bool,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.commutator_ok && self.power_ok
    }
}

/// `I + h^k U`.
pub fn unipotent_lift(u: &CycloMatrix, k: u32) -> Result<CycloMatrix> {
    if !u.is_square() {
        return Err(Error::InvalidArgument("expected a square matrix".into()));
    }
    let p = u.get(0, 0).prime();
    let hk = CycloElem::h_pow(p, k);
    CycloMatrix::identity(u.rows(), &hk).add(&u.scale(&hk))
}

/// Exact check of the two valuation bounds for `M = I + h^k U` and `N = I + h^l V`.
///
/// `[M, N] - I` equals `(M N adj(M) adj(N) - det(M) det(N) I) / (det(M) det(N))`, and
/// both determinants are congruent to 1 mod h, so the numerator carries the same
/// valuations and no division in Z[zeta] is needed.
pub fn filtration_check(
    u: &CycloMatrix,
    v: &CycloMatrix,
    k: u32,
    l: u32,
) -> Result<FiltrationReport> {
    if !u.is_square() || !v.is_square() || u.rows() != v.rows() {
        return Err(Error::InvalidArgument(
            "U and V must be square of equal size".into(),
        ));
    }
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("orders must be positive".into()));
    }
    let p = u.get(0, 0).prime();
    if v.get(0, 0).prime() != p {
        return Err(Error::PrimeMismatch(p.get(), v.get(0, 0).prime().get()));
    }
    let m = unipotent_lift(u, k)?;
    let n = unipotent_lift(v, l)?;
    let det_m = m.determinant()?;
    let det_n = n.determinant()?;
    debug_assert_eq!(det_m.h_valuation(), Valuation::Finite(0));
    debug_assert_eq!(det_n.h_valuation(), Valuation::Finite(0));
    let num = m
        .mul(&n)?
        .mul(&m.adjugate()?)?
        .mul(&n.adjugate()?)?;
    let dd = &det_m * &det_n;
    let comm = num.sub(&CycloMatrix::identity(num.rows(), &dd).scale(&dd))?;
    let id = CycloMatrix::identity(m.rows(), &det_m);
    let power = m.pow(u64::from(p.get()))?.sub(&id)?;

    let commutator_bound = k + l;
    let power_bound = k + p.get() - 1;
    let commutator_min = comm.min_valuation();
    let power_min = power.min_valuation();
    Ok(FiltrationReport {
        p: p.get(),
        k,
        l,
        commutator_valuations: comm.valuations().to_rows_plain(),
        power_valuations: power.valuations().to_rows_plain(),
        commutator_min,
        power_min,
        commutator_bound,
        power_bound,
        commutator_ok: commutator_min.is_at_least(commutator_bound),
        power_ok: power_min.is_at_least(power_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::Prime;

    #[test]
    fn zero_perturbation_is_infinite() {
        let p = Prime::new(5).unwrap();
        let z = CycloMatrix::from_int_rows(p, &[vec![0, 0], vec![0, 0]]).unwrap();
        let r = filtration_check(&z, &z, 1, 1).unwrap();
        assert_eq!(r.commutator_min, Valuation::Infinite);
        assert_eq!(r.power_min, Valuation::Infinite);
        assert!(r.passed());
    }

    #[test]
    fn bounds_hold_and_can_be_sharp() {
        let p = Prime::new(5).unwrap();
        let u = CycloMatrix::from_int_rows(p, &[vec![0, 1], vec![0, 0]]).unwrap();
        let v = CycloMatrix::from_int_rows(p, &[vec![0, 0], vec![1, 0]]).unwrap();
        let r = filtration_check(&u, &v, 1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.commutator_min, Valuation::Finite(2));
    }

    #[test]
    fn rejects_mismatched_shapes() {
        let p = Prime::new(5).unwrap();
        let u = CycloMatrix::from_int_rows(p, &[vec![0, 1], vec![0, 0]]).unwrap();
        let v = CycloMatrix::from_int_rows(p, &[vec![0, 1, 2]]).unwrap();
        assert!(filtration_check(&u, &v, 1, 1).is_err());
    }
}
