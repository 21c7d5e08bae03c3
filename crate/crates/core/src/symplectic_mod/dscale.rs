use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest matrix size accepted by the probe.
pub const MAX_PROBE_DIM: usize = 20;

/// Integer row lattice kept in Hermite normal form.
#[derive(Debug, Clone)]
pub struct HermiteLattice {
    n: usize,
    /// rows sorted by pivot column, pivots positive
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl HermiteLattice {
    pub fn new(n: usize) -> Self {
        HermiteLattice { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Index in Z^n, defined at full rank.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full_rank()
            .then(|| self.rows.iter().map(|(c, r)| r[*c].clone()).product())
    }

    /// Adds `v`; returns whether the lattice changed.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        let modulus = self.index();
        if let Some(m) = &modulus {
            for x in v.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
        let mut changed = false;
        let mut k = 0;
        while k < self.rows.len() {
            let c = self.rows[k].0;
            if let Some(first) = v.iter().position(|x| !x.is_zero()) {
                if first < c {
                    v = normalize(v, first);
                    self.rows.insert(k, (first, v));
                    self.reduce_above();
                    return true;
                }
            } else {
                return changed;
            }
            if !v[c].is_zero() {
                let row = &self.rows[k].1;
                let eg = row[c].extended_gcd(&v[c]);
                let (a, b) = (row[c].clone() / &eg.gcd, v[c].clone() / &eg.gcd);
                let new_row: Vec<BigInt> =
                    row.iter().zip(&v).map(|(r, x)| &eg.x * r + &eg.y * x).collect();
                let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &a * x - &b * r).collect();
                if new_row != *row {
                    changed = true;
                }
                self.rows[k].1 = normalize(new_row, c);
                v = new_v;
            }
            k += 1;
        }
        if let Some(first) = v.iter().position(|x| !x.is_zero()) {
            self.rows.push((first, normalize(v, first)));
            changed = true;
        }
        if changed {
            self.reduce_above();
        }
        changed
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if v[..*c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = v[*c].div_mod_floor(&row[*c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    fn reduce_above(&mut self) {
        for k in 0..self.rows.len() {
            let (c, pivot_row) = self.rows[k].clone();
            for j in 0..k {
                let q = self.rows[j].1[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in self.rows[j].1.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
}

fn normalize(mut v: Vec<BigInt>, pivot: usize) -> Vec<BigInt> {
    if v[pivot].is_negative() {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DProbe {
    pub dim: usize,
    /// Lattice index of the Z-span of words, when that span has full rank n^2.
    #[serde(serialize_with = "ser_opt_big")]
    pub d: Option<BigInt>,
    pub rank: usize,
    pub products_examined: usize,
    pub budget_exhausted: bool,
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(d) => s.serialize_str(&d.to_string()),
        None => s.serialize_str("NOT_FOUND"),
    }
}

/// Searches for D with `D * End(Z^n)` inside the Z-span of words in the generators.
///
/// The span starts at the identity and is closed under right multiplication by each
/// generator. `None` means either a proper subalgebra or an exhausted budget; neither
/// is a proof that no D exists when the budget runs out.
pub fn d_scaling_probe(generators: &[Vec<Vec<i64>>], dim: usize, budget: usize) -> Result<DProbe> {
    if dim == 0 || dim > MAX_PROBE_DIM {
        return Err(Error::InvalidArgument(format!("dim must be in 1..={MAX_PROBE_DIM}")));
    }
    for g in generators {
        if g.len() != dim || g.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!("generators must be {dim}x{dim}")));
        }
    }
    let gens: Vec<Vec<Vec<BigInt>>> = generators
        .iter()
        .map(|g| g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .collect();
    let mut lattice = HermiteLattice::new(dim * dim);
    let identity: Vec<BigInt> = (0..dim * dim)
        .map(|k| if k / dim == k % dim { BigInt::one() } else { BigInt::zero() })
        .collect();
    lattice.insert(&identity);
    let mut examined = 0;
    let mut exhausted = false;
    'outer: loop {
        let mut changed = false;
        let snapshot: Vec<Vec<BigInt>> = lattice.rows.iter().map(|(_, r)| r.clone()).collect();
        for row in &snapshot {
            for g in &gens {
                if examined >= budget {
                    exhausted = true;
                    break 'outer;
                }
                examined += 1;
                let prod = mat_mul_flat(row, g, dim);
                if lattice.insert(&prod) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(DProbe {
        dim,
        d: if exhausted { None } else { lattice.index() },
        rank: lattice.rank(),
        products_examined: examined,
        budget_exhausted: exhausted,
    })
}

fn mat_mul_flat(a: &[BigInt], b: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * &b[k][j];
            }
        }
    }
    out
}

/// Rows of the given matrices restricted to `omega ^ H` in genus `g`: the standard action.
pub fn omega_wedge_block_generators(g: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    let space = super::space::SymplecticSpace::new(g)?;
    let n = space.dim_h();
    Ok(super::group::standard_generators(&space)
        .iter()
        .map(|m| (0..n).map(|i| (0..n).map(|j| m.column(j)[i]).collect()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_index_matches_determinant() {
        let mut l = HermiteLattice::new(2);
        l.insert(&big(&[2, 1]));
        l.insert(&big(&[1, 3]));
        assert_eq!(l.index(), Some(BigInt::from(5)));
        assert!(l.contains(&big(&[3, 4])));
        assert!(!l.contains(&big(&[1, 0])));
        assert!(l.contains(&big(&[5, 0])));
    }

    #[test]
    fn elementary_matrices_give_one() {
        let mut gens = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = vec![vec![0; 2]; 2];
                m[i][j] = 1;
                gens.push(m);
            }
        }
        let r = d_scaling_probe(&gens, 2, 1000).unwrap();
        assert_eq!(r.d, Some(BigInt::from(1)));
    }

    #[test]
    fn scalar_generator_is_not_found() {
        let r = d_scaling_probe(&[vec![vec![3, 0], vec![0, 3]]], 2, 1000).unwrap();
        assert_eq!(r.d, None);
        assert!(!r.budget_exhausted);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn tiny_budget_is_not_found() {
        let gens = omega_wedge_block_generators(3).unwrap();
        let r = d_scaling_probe(&gens, 6, 3).unwrap();
        assert!(r.budget_exhausted && r.d.is_none());
    }
}
