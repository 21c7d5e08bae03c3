//! Dense linear algebra over F_p.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prime::modp;

/// Dense row-major matrix with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    pub fn from_i64_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let conv: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| modp::from_i64(x, p)).collect())
            .collect();
        Self::from_rows(p, &conv)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(l)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, modp::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, modp::sub)
    }

    fn zip(&self, other: &Self, f: impl Fn(u32, u32, u32) -> u32) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols || self.p != other.p {
            return Err(Error::DimensionMismatch("shape mismatch".into()));
        }
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = f(*o, b, self.p);
        }
        Ok(out)
    }

    pub fn scale(&self, s: u32) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = modp::mul(*x, s, self.p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = modp::inv(m.get(r, c), p);
            for j in c..m.cols {
                let v = modp::mul(m.get(r, j), inv, p);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = modp::sub(m.get(i, j), modp::mul(f, m.get(r, j), p), p);
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = modp::neg(r.get(row, f), p);
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let p = self.p;
        let mut m = self.clone();
        let mut det = 1 % p;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = modp::neg(det, p);
            }
            let piv = m.get(c, c);
            det = modp::mul(det, piv, p);
            let inv = modp::inv(piv, p);
            for i in c + 1..m.rows {
                let f = modp::mul(m.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = modp::sub(m.get(i, j), modp::mul(f, m.get(c, j), p), p);
                    m.data[i * m.cols + j] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NoInverse);
        }
        let mut inv = Self::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j);
            }
        }
        Ok(inv)
    }
}

/// Incrementally maintained row space, kept fully reduced.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(p: u32, dim: usize) -> Self {
        EchelonBasis {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (slot, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *slot = (*slot + nf * r as u64) % p;
                }
            }
        }
        w.into_iter().map(|x| x as u32).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        if v.len() != self.dim {
            panic!("vector length {} in ambient dimension {}", v.len(), self.dim);
        }
        if self.is_full() {
            return false;
        }
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let inv = modp::inv(w[pc], p);
        for x in &mut w {
            *x = modp::mul(*x, inv, p);
        }
        // keep existing rows reduced with respect to the new pivot
        for row in &mut self.rows {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            for (slot, &r) in row.iter_mut().zip(&w) {
                if r != 0 {
                    *slot = modp::sub(*slot, modp::mul(f, r, p), p);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = FpMatrix::from_i64_rows(5, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = FpMatrix::from_i64_rows(7, &[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 1);
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        let s = FpMatrix::from_i64_rows(7, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.determinant().unwrap(), 0);
        assert_eq!(s.inverse(), Err(Error::NoInverse));
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(5, 3);
        assert!(b.insert(&[1, 2, 0]));
        assert!(!b.insert(&[2, 4, 0]));
        assert!(b.insert(&[0, 1, 1]));
        assert!(b.contains(&[1, 3, 1]));
        assert!(!b.contains(&[0, 0, 1]));
        assert!(b.insert(&[0, 0, 1]));
        assert!(b.is_full());
    }
}
