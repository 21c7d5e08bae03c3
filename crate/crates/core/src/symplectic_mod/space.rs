use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// H_1 of a genus-g surface with basis `c_0..c_{2g-1} = a_1, b_1, ..., a_g, b_g`
/// (zero-based here), `omega(a_k, b_k) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticSpace {
    g: usize,
    #[serde(skip)]
    monomials: Vec<[usize; 3]>,
    #[serde(skip)]
    monomial_index: HashMap<[usize; 3], usize>,
    #[serde(skip)]
    reduced: Vec<usize>,
    /// Λ³ index -> position in the reduced basis of V
    #[serde(skip)]
    reduced_pos: Vec<Option<usize>>,
}

/// Largest supported genus (dim Λ³ = 560 at g = 8).
pub const MAX_GENUS: usize = 8;

impl SymplecticSpace {
    pub fn new(g: usize) -> Result<Self> {
        if !(2..=MAX_GENUS).contains(&g) {
            return Err(Error::InvalidArgument(format!(
                "genus {g} outside 2..={MAX_GENUS}"
            )));
        }
        let n = 2 * g;
        let mut monomials = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    monomials.push([i, j, k]);
                }
            }
        }
        let monomial_index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut s = SymplecticSpace {
            g,
            monomials,
            monomial_index,
            reduced: Vec::new(),
            reduced_pos: Vec::new(),
        };
        let mut reduced_pos = vec![None; s.monomials.len()];
        for (idx, &m) in s.monomials.iter().enumerate() {
            if !s.is_absorbed(m) {
                reduced_pos[idx] = Some(s.reduced.len());
                s.reduced.push(idx);
            }
        }
        s.reduced_pos = reduced_pos;
        Ok(s)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// `2g`.
    pub fn dim_h(&self) -> usize {
        2 * self.g
    }

    /// `C(2g, 3)`.
    pub fn dim_lambda3(&self) -> usize {
        self.monomials.len()
    }

    /// `C(2g, 3) - 2g`.
    pub fn dim_v(&self) -> usize {
        self.reduced.len()
    }

    /// Partner index: `a_k <-> b_k`.
    pub fn partner(i: usize) -> usize {
        i ^ 1
    }

    /// Symplectic pair containing basis vector `i`.
    pub fn pair(i: usize) -> usize {
        i / 2
    }

    /// Form on basis vectors.
    pub fn omega_basis(i: usize, j: usize) -> i64 {
        if i / 2 != j / 2 || i == j {
            0
        } else if i.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn omega(&self, x: &[i64], y: &[i64]) -> i64 {
        (0..self.g)
            .map(|k| x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k])
            .sum()
    }

    pub fn monomials(&self) -> &[[usize; 3]] {
        &self.monomials
    }

    pub fn monomial_index(&self, m: [usize; 3]) -> Option<usize> {
        self.monomial_index.get(&m).copied()
    }

    /// Index and sign of `c_x ^ c_y ^ c_z` in the sorted monomial basis.
    pub fn signed_monomial(&self, x: usize, y: usize, z: usize) -> Option<(usize, i64)> {
        if x == y || y == z || x == z {
            return None;
        }
        let mut m = [x, y, z];
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if m[b] > m[b + 1] {
                    m.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        Some((self.monomial_index[&m], sign))
    }

    /// Monomials rewritten through omega ^ H: those containing `a_g ^ b_g`, and
    /// `a_{g-1} ^ b_{g-1} ^ a_g`, `a_{g-1} ^ b_{g-1} ^ b_g`.
    fn is_absorbed(&self, m: [usize; 3]) -> bool {
        let n = 2 * self.g;
        (m[1] == n - 2 && m[2] == n - 1) || (m[0] == n - 4 && m[1] == n - 3)
    }

    /// Λ³ indices of the reduced basis of V.
    pub fn reduced_basis(&self) -> &[usize] {
        &self.reduced
    }

    pub fn reduced_position(&self, lambda3_index: usize) -> Option<usize> {
        self.reduced_pos[lambda3_index]
    }

    /// Class of a Λ³ monomial in V as integer coordinates over the reduced basis.
    pub fn quotient_monomial(&self, idx: usize) -> Vec<(usize, i64)> {
        if let Some(pos) = self.reduced_pos[idx] {
            return vec![(pos, 1)];
        }
        let n = 2 * self.g;
        let [i, j, k] = self.monomials[idx];
        // omega ^ c = sum_k a_k ^ b_k ^ c vanishes in V
        let (c, skip_pair, last_pair) = if j == n - 2 && k == n - 1 {
            (i, Self::pair(i), self.g - 1)
        } else {
            debug_assert!(i == n - 4 && j == n - 3);
            (k, self.g - 1, self.g - 2)
        };
        let mut out = Vec::new();
        for q in 0..self.g {
            if q == skip_pair || q == last_pair {
                continue;
            }
            let (mi, sign) = self
                .signed_monomial(2 * q, 2 * q + 1, c)
                .expect("distinct indices");
            let pos = self.reduced_pos[mi].expect("rewrite stays in the reduced basis");
            out.push((pos, -sign));
        }
        out
    }

    /// `kappa(c_i ^ c_j ^ c_k)` as (basis index, coefficient), if nonzero.
    pub fn contraction_monomial(&self, idx: usize) -> Option<(usize, i64)> {
        let [i, j, k] = self.monomials[idx];
        let w_ij = Self::omega_basis(i, j);
        let w_jk = Self::omega_basis(j, k);
        let w_ki = Self::omega_basis(k, i);
        if w_ij != 0 {
            Some((k, w_ij))
        } else if w_jk != 0 {
            Some((i, w_jk))
        } else if w_ki != 0 {
            Some((j, w_ki))
        } else {
            None
        }
    }

    /// Whether `c_i, c_j, c_k` span an isotropic subspace.
    pub fn is_isotropic_monomial(&self, idx: usize) -> bool {
        self.contraction_monomial(idx).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn dimensions() {
        for g in 2..=8 {
            let s = SymplecticSpace::new(g).unwrap();
            assert_eq!(s.dim_lambda3(), binom(2 * g, 3));
            assert_eq!(s.dim_v(), binom(2 * g, 3) - 2 * g);
        }
        assert_eq!(SymplecticSpace::new(3).unwrap().dim_v(), 14);
        assert!(SymplecticSpace::new(9).is_err());
    }

    #[test]
    fn omega_on_basis() {
        assert_eq!(SymplecticSpace::omega_basis(0, 1), 1);
        assert_eq!(SymplecticSpace::omega_basis(1, 0), -1);
        assert_eq!(SymplecticSpace::omega_basis(0, 2), 0);
        assert_eq!(SymplecticSpace::partner(4), 5);
    }

    #[test]
    fn signed_monomials() {
        let s = SymplecticSpace::new(3).unwrap();
        let (a, sa) = s.signed_monomial(2, 0, 1).unwrap();
        assert_eq!((s.monomials()[a], sa), ([0, 1, 2], 1));
        let (b, sb) = s.signed_monomial(1, 0, 2).unwrap();
        assert_eq!((s.monomials()[b], sb), ([0, 1, 2], -1));
        assert!(s.signed_monomial(1, 1, 2).is_none());
    }
}
