use serde::{Deserialize, Serialize};

use super::group::GroupElement;
use super::space::SymplecticSpace;
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::prime::modp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionKind {
    /// `-sum lambda^{-1} phi_lambda^l`: monomials with `c_l` and without its partner.
    Pi,
    /// `-sum phi_lambda^l`: monomials with neither or both of `c_l`, `c_l'`.
    PiTilde,
}

/// Projection on V assembled from the torus scalings `phi_lambda^l`, lambda in F_p^*.
pub fn projection(space: &SymplecticSpace, l: usize, p: u32, kind: ProjectionKind) -> Result<FpMatrix> {
    if p < 5 {
        return Err(Error::InvalidArgument("projections need p >= 5".into()));
    }
    if l >= space.dim_h() {
        return Err(Error::InvalidArgument(format!("basis index {l} out of range")));
    }
    let n = space.dim_v();
    let mut acc = FpMatrix::zeros(p, n, n);
    for lambda in 1..p {
        let phi = GroupElement::torus_scaling(space, l, lambda, p)?.v_action(space, p).to_dense();
        let coeff = match kind {
            ProjectionKind::Pi => modp::neg(modp::inv(lambda, p), p),
            ProjectionKind::PiTilde => p - 1,
        };
        acc = acc.add(&phi.scale(coeff))?;
    }
    Ok(acc)
}

/// Diagonal predicted for a projection: which reduced monomials it keeps.
pub fn projection_support(space: &SymplecticSpace, l: usize, kind: ProjectionKind) -> Vec<bool> {
    let lp = SymplecticSpace::partner(l);
    space
        .reduced_basis()
        .iter()
        .map(|&idx| {
            let m = space.monomials()[idx];
            let has_l = m.contains(&l);
            let has_lp = m.contains(&lp);
            match kind {
                ProjectionKind::Pi => has_l && !has_lp,
                ProjectionKind::PiTilde => has_l == has_lp,
            }
        })
        .collect()
}

/// Product of the operators, applied right to left.
pub fn compose(ops: &[FpMatrix]) -> Result<FpMatrix> {
    let mut it = ops.iter().rev();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty composite".into()))?
        .clone();
    it.try_fold(first, |acc, m| m.mul(&acc))
}
