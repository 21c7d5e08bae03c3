use super::space::SymplecticSpace;
use super::trivector::{Ambient, Trivector};
use crate::error::{Error, Result};
use crate::fp::{EchelonBasis, FpMatrix};

/// Matrix of kappa: Λ³ -> H over F_p.
pub fn contraction_matrix(space: &SymplecticSpace, p: u32) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, space.dim_h(), space.dim_lambda3());
    for idx in 0..space.dim_lambda3() {
        if let Some((row, w)) = space.contraction_monomial(idx) {
            m.set(row, idx, w.rem_euclid(i64::from(p)) as u32);
        }
    }
    m
}

pub fn divides_g_minus_1(space: &SymplecticSpace, p: u32) -> bool {
    (space.genus() as u32 - 1).is_multiple_of(p)
}

/// Basis of ker(kappa mod p) inside Λ³.
pub fn kernel_basis(space: &SymplecticSpace, p: u32) -> Vec<Trivector> {
    contraction_matrix(space, p)
        .nullspace()
        .into_iter()
        .map(|v| Trivector {
            g: space.genus(),
            ambient: Ambient::Lambda3,
            coords: v.into_iter().map(i64::from).collect(),
        })
        .collect()
}

/// Span over F_p of the image of ker(kappa mod p) in V.
pub fn kernel_image_in_v(space: &SymplecticSpace, p: u32) -> Result<EchelonBasis> {
    let mut span = EchelonBasis::new(p, space.dim_v());
    for t in kernel_basis(space, p) {
        span.insert(&t.quotient(space)?.mod_p(p));
    }
    Ok(span)
}

/// kappa on V; defined only when p divides g - 1 (then omega ^ H lies in the kernel).
pub fn kappa_bar(space: &SymplecticSpace, v: &[u32], p: u32) -> Result<Vec<u32>> {
    if !divides_g_minus_1(space, p) {
        return Err(Error::InvalidArgument(format!(
            "kappa is not defined on V when {p} does not divide g-1"
        )));
    }
    if v.len() != space.dim_v() {
        return Err(Error::DimensionMismatch("expected V coordinates".into()));
    }
    let pv = i64::from(p);
    let mut out = vec![0i64; space.dim_h()];
    for (pos, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if let Some((row, w)) = space.contraction_monomial(space.reduced_basis()[pos]) {
            out[row] = (out[row] + w * i64::from(c)).rem_euclid(pv);
        }
    }
    Ok(out.into_iter().map(|x| x as u32).collect())
}

/// Rank of kappa mod p restricted to omega ^ H: 0 when p divides g - 1, 2g otherwise.
pub fn contraction_rank_on_omega_wedge(space: &SymplecticSpace, p: u32) -> Result<usize> {
    let km = contraction_matrix(space, p);
    let n = space.dim_h();
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        let mut e = vec![0; n];
        e[c] = 1;
        let t = Trivector::omega_wedge(space, &e)?;
        let tm: Vec<u32> = t.mod_p(p);
        cols.push(km.mul_vec(&tm));
    }
    let rows: Vec<Vec<u32>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Ok(FpMatrix::from_rows(p, &rows)?.rank())
}

/// `(a_i ^ b_i) ^ c_l - (a_j ^ b_j) ^ c_l` with `c_l` outside both pairs (zero-based pairs).
pub fn pair_difference(space: &SymplecticSpace, i: usize, j: usize, l: usize) -> Result<Trivector> {
    if i == j || SymplecticSpace::pair(l) == i || SymplecticSpace::pair(l) == j {
        return Err(Error::InvalidArgument("c_l must avoid both pairs".into()));
    }
    Trivector::monomial(space, 2 * i, 2 * i + 1, l)
        .add(&Trivector::monomial(space, 2 * j, 2 * j + 1, l).scale(-1))
}
