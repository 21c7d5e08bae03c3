use serde::Serialize;

use super::space::SymplecticSpace;
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::prime::modp;

/// Square integer matrix acting on H (entries reduced mod p when a prime is used).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub name: String,
    n: usize,
    /// column-major: `cols[j]` is the image of `c_j`
    cols: Vec<Vec<i64>>,
}

/// Sparse linear map given by its columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOp {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, u32)>>,
    pub p: u32,
}

impl SparseOp {
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = u64::from(self.p);
        let mut out = vec![0u64; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(r, c) in &self.cols[j] {
                out[r] = (out[r] + u64::from(c) * u64::from(x)) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn to_dense(&self) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, c) in col {
                m.set(r, j, c);
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols.len()
            && self.cols.iter().enumerate().all(|(j, col)| {
                col.iter().all(|&(r, c)| (r == j && c == 1) || c == 0)
                    && col.iter().any(|&(r, c)| r == j && c == 1)
            })
    }
}

impl GroupElement {
    pub fn from_columns(name: impl Into<String>, cols: Vec<Vec<i64>>) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns must form a square matrix".into()));
        }
        Ok(GroupElement {
            name: name.into(),
            n,
            cols,
        })
    }

    pub fn identity(space: &SymplecticSpace) -> Self {
        Self::scalar(space, 1)
    }

    pub fn scalar(space: &SymplecticSpace, lambda: i64) -> Self {
        let n = space.dim_h();
        let cols = (0..n)
            .map(|j| (0..n).map(|i| if i == j { lambda } else { 0 }).collect())
            .collect();
        GroupElement {
            name: format!("{lambda}*id"),
            n,
            cols,
        }
    }

    /// `x -> x + omega(v, x) v`.
    pub fn transvection(space: &SymplecticSpace, v: &[i64], name: impl Into<String>) -> Result<Self> {
        let n = space.dim_h();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!("vector must have length {n}")));
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let w = space.omega(v, &e);
            cols.push(e.iter().zip(v).map(|(x, vi)| x + w * vi).collect());
        }
        Ok(GroupElement {
            name: name.into(),
            n,
            cols,
        })
    }

    /// `c_l -> lambda c_l`, `c_l' -> lambda^{-1} c_l'` over F_p.
    pub fn torus_scaling(space: &SymplecticSpace, l: usize, lambda: u32, p: u32) -> Result<Self> {
        if lambda.is_multiple_of(p) {
            return Err(Error::InvalidArgument("scaling by zero".into()));
        }
        let mut m = Self::identity(space);
        let lp = SymplecticSpace::partner(l);
        m.cols[l][l] = i64::from(lambda % p);
        m.cols[lp][lp] = i64::from(modp::inv(lambda % p, p));
        m.name = format!("phi_{lambda}^{l}");
        Ok(m)
    }

    /// Exchange the pairs `(a_k, b_k)` and `(a_m, b_m)`.
    pub fn pair_swap(space: &SymplecticSpace, k: usize, m: usize) -> Self {
        let n = space.dim_h();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(2 * k, 2 * m);
        perm.swap(2 * k + 1, 2 * m + 1);
        let cols = (0..n)
            .map(|j| (0..n).map(|i| i64::from(i == perm[j])).collect())
            .collect();
        GroupElement {
            name: format!("swap_{k}_{m}"),
            n,
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.cols[j]
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0 {
                for (o, &c) in out.iter_mut().zip(&self.cols[j]) {
                    *o += c * xj;
                }
            }
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            name: format!("{}*{}", self.name, other.name),
            n: self.n,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn reduce(&self, p: u32) -> Self {
        GroupElement {
            name: self.name.clone(),
            n: self.n,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|x| x.rem_euclid(i64::from(p))).collect())
                .collect(),
        }
    }

    /// `omega(M c_i, M c_j) = omega(c_i, c_j)` for all basis pairs, mod p when given.
    pub fn is_symplectic(&self, space: &SymplecticSpace, p: Option<u32>) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let lhs = space.omega(&self.cols[i], &self.cols[j]);
                let rhs = SymplecticSpace::omega_basis(i, j);
                match p {
                    Some(p) => (lhs - rhs).rem_euclid(i64::from(p)) == 0,
                    None => lhs == rhs,
                }
            })
        })
    }

    /// Integer action on Λ³, column `j` the image of monomial `j`.
    pub fn lambda3_columns(&self, space: &SymplecticSpace) -> Vec<Vec<(usize, i64)>> {
        let sparse: Vec<Vec<(usize, i64)>> = self
            .cols
            .iter()
            .map(|c| c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect())
            .collect();
        space
            .monomials()
            .iter()
            .map(|&[i, j, k]| {
                let mut acc = std::collections::BTreeMap::new();
                for &(x, cx) in &sparse[i] {
                    for &(y, cy) in &sparse[j] {
                        for &(z, cz) in &sparse[k] {
                            if let Some((idx, s)) = space.signed_monomial(x, y, z) {
                                *acc.entry(idx).or_insert(0i64) += s * cx * cy * cz;
                            }
                        }
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }

    /// Action on Λ³ over F_p.
    pub fn lambda3_action(&self, space: &SymplecticSpace, p: u32) -> SparseOp {
        let cols = self
            .lambda3_columns(space)
            .into_iter()
            .map(|col| reduce_col(col, p))
            .collect();
        SparseOp {
            rows: space.dim_lambda3(),
            cols,
            p,
        }
    }

    /// Induced action on V over F_p, in the reduced basis; the element must preserve omega mod p.
    pub fn v_action(&self, space: &SymplecticSpace, p: u32) -> SparseOp {
        let l3 = self.lambda3_columns(space);
        let cols = space
            .reduced_basis()
            .iter()
            .map(|&m| {
                let mut acc = std::collections::BTreeMap::new();
                for &(idx, c) in &l3[m] {
                    for (pos, w) in space.quotient_monomial(idx) {
                        *acc.entry(pos).or_insert(0i64) += c * w;
                    }
                }
                reduce_col(acc.into_iter().collect(), p)
            })
            .collect();
        SparseOp {
            rows: space.dim_v(),
            cols,
            p,
        }
    }
}

fn reduce_col(col: Vec<(usize, i64)>, p: u32) -> Vec<(usize, u32)> {
    col.into_iter()
        .map(|(i, v)| (i, v.rem_euclid(i64::from(p)) as u32))
        .filter(|&(_, v)| v != 0)
        .collect()
}

/// Transvections along every basis vector and along `a_k + a_{k+1}`, plus the
/// adjacent pair swaps.
pub fn standard_generators(space: &SymplecticSpace) -> Vec<GroupElement> {
    let n = space.dim_h();
    let g = space.genus();
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        let label = if i % 2 == 0 { "a" } else { "b" };
        out.push(
            GroupElement::transvection(space, &v, format!("t_{label}{}", i / 2 + 1))
                .expect("length checked"),
        );
    }
    for k in 0..g - 1 {
        let mut v = vec![0; n];
        v[2 * k] = 1;
        v[2 * k + 2] = 1;
        out.push(
            GroupElement::transvection(space, &v, format!("t_a{}+a{}", k + 1, k + 2))
                .expect("length checked"),
        );
    }
    for k in 0..g - 1 {
        out.push(GroupElement::pair_swap(space, k, k + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic_mod::trivector::Trivector;

    #[test]
    fn generators_are_symplectic() {
        for g in 2..=5 {
            let s = SymplecticSpace::new(g).unwrap();
            for m in standard_generators(&s) {
                assert!(m.is_symplectic(&s, None), "{}", m.name);
            }
            assert!(GroupElement::torus_scaling(&s, 0, 2, 5).unwrap().is_symplectic(&s, Some(5)));
        }
    }

    #[test]
    fn transvection_moves_b_by_v() {
        let s = SymplecticSpace::new(3).unwrap();
        let t = GroupElement::transvection(&s, &[1, 0, 1, 0, 0, 0], "t").unwrap();
        assert_eq!(t.apply(&[0, 1, 0, 0, 0, 0]), vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(t.apply(&[1, 0, 0, 0, 0, 0]), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn lambda3_action_matches_wedge_of_images() {
        let s = SymplecticSpace::new(3).unwrap();
        let t = GroupElement::transvection(&s, &[1, 0, 1, 0, 0, 0], "t").unwrap();
        let cols = t.lambda3_columns(&s);
        for (idx, &[i, j, k]) in s.monomials().iter().enumerate() {
            let w = Trivector::wedge(&s, t.column(i), t.column(j), t.column(k)).unwrap();
            let mut dense = vec![0; s.dim_lambda3()];
            for &(r, c) in &cols[idx] {
                dense[r] = c;
            }
            assert_eq!(dense, w.coords);
        }
    }
}
