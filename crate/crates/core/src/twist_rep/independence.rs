use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{bareiss_det, CycloElem};
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::prime::{modp, Prime};

/// Exponent `2a(a+1)` of the separating-twist eigenvalue `zeta^{2a(a+1)}`.
pub fn twist_exponent(a: u32) -> i64 {
    2 * i64::from(a) * (i64::from(a) + 1)
}

/// Eigenvalue of a separating twist on a basis vector whose curve carries color `2a`.
pub fn sep_twist_eigenvalue(a: u32, p: Prime) -> Result<CycloElem> {
    let bound = (p.get() - 3) / 2;
    if a > bound {
        return Err(Error::InvalidArgument(format!(
            "color index {a} exceeds {bound} at p={p}"
        )));
    }
    Ok(CycloElem::zeta_pow(p, twist_exponent(a)))
}

/// Order-1 coefficient of `zeta^e` in the h-adic expansion, from exact reduction.
fn order_one_coefficient(e: i64, p: Prime) -> Result<u32> {
    Ok(CycloElem::zeta_pow(p, e).reduce_mod_hk(2)?.coeff(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub g: usize,
    pub p: u32,
    /// Number of separating curves, `2g - 3`.
    pub curves: usize,
    /// Integer determinant of the order-1 coefficient system on the probes.
    pub determinant: String,
    /// `4^{2g-3} 2^{2g-4} (2g-1)`.
    pub closed_form_magnitude: String,
    pub determinant_matches_closed_form: bool,
    pub determinant_sign: i8,
    pub determinant_mod_p: u32,
    pub rank_on_probes: usize,
    pub fallback_used: bool,
    /// Order-1 coefficient of the product of all twists acting on `w`.
    pub product_twist_on_w: Option<i64>,
    pub rank_with_w: usize,
    pub independent: bool,
    /// Reductions mod h^2 of the two eigenvalues that occur, with the sign from exact arithmetic.
    pub eigenvalue_a1: String,
    pub eigenvalue_a2: String,
}

/// `(4^{2g-3}) (2^{2g-4}) (2g - 1)`.
pub fn closed_form_determinant(g: usize) -> BigInt {
    let n = 2 * g - 3;
    BigInt::from(4).pow(n as u32) * BigInt::from(2).pow((2 * g - 4) as u32) * BigInt::from(2 * g - 1)
}

/// Linear independence over F_p of the order-1 parts of the separating twists,
/// tested on the probe vectors (one color index 2, the rest 1) and, when
/// needed, on the all-ones vector `w`.
pub fn independence_rank(g: usize, p: Prime) -> Result<IndependenceReport> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("genus {g} < 3")));
    }
    let n = 2 * g - 3;
    let pv = p.get();
    let probe = |i: usize, j: usize| -> u32 { if i == j { 2 } else { 1 } };

    // rows: twists; columns: probes v_1..v_n
    let mut int_rows = Vec::with_capacity(n);
    let mut fp_rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut ir = Vec::with_capacity(n);
        let mut fr = Vec::with_capacity(n + 1);
        for j in 0..n {
            let e = twist_exponent(probe(i, j));
            let c = order_one_coefficient(e, p)?;
            // zeta^e = (1 - h)^e = 1 - e h + ..., the integer coefficient is -e
            debug_assert_eq!(c, modp::from_i64(-e, pv));
            ir.push(BigInt::from(-e));
            fr.push(c);
        }
        fr.push(order_one_coefficient(twist_exponent(1), p)?);
        int_rows.push(ir);
        fp_rows.push(fr);
    }
    let det = bareiss_det(int_rows);
    let closed = closed_form_determinant(g);
    let plain = FpMatrix::from_rows(
        pv,
        &fp_rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>(),
    )?;
    let rank_on_probes = plain.rank();
    let with_w = FpMatrix::from_rows(pv, &fp_rows)?;
    let rank_with_w = with_w.rank();
    let fallback_used = rank_on_probes < n;
    let product_twist_on_w = if fallback_used {
        let total = (0..n).map(|_| twist_exponent(1)).sum::<i64>();
        let c = order_one_coefficient(total, p)?;
        Some(modp::centered(c, pv))
    } else {
        None
    };
    let fmt2 = |a: u32| -> Result<String> {
        Ok(CycloElem::zeta_pow(p, twist_exponent(a))
            .reduce_mod_hk(2)?
            .to_string())
    };
    let sign = if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    };
    let det_mod = det
        .mod_floor(&BigInt::from(pv))
        .to_u32()
        .expect("residue fits");
    Ok(IndependenceReport {
        g,
        p: pv,
        curves: n,
        determinant: det.to_string(),
        closed_form_magnitude: closed.to_string(),
        determinant_matches_closed_form: det.abs() == closed,
        determinant_sign: sign,
        determinant_mod_p: det_mod,
        rank_on_probes,
        fallback_used,
        product_twist_on_w,
        rank_with_w,
        independent: rank_with_w == n,
        eigenvalue_a1: fmt2(1)?,
        eigenvalue_a2: fmt2(2)?,
    })
}
