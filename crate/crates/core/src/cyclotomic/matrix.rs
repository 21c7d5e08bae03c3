use std::fmt;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::elem::{CycloElem, Valuation};
use super::trunc::TruncElem;
use crate::error::{Error, Result};

/// The ring operations a matrix entry needs. Elements carry their own modulus,
/// so zero and one are produced from an existing element.
pub trait RingElem: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Inverse when the element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

impl RingElem for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.prime())
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.prime())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() || !self.is_unit() {
            return None;
        }
        CycloElem::one(self.prime()).div_exact(self).ok()
    }
}

impl RingElem for TruncElem {
    fn zero_like(&self) -> Self {
        TruncElem::zero(self.prime(), self.order()).expect("valid order")
    }
    fn one_like(&self) -> Self {
        TruncElem::one(self.prime(), self.order()).expect("valid order")
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

/// Dense row-major matrix over a [`RingElem`].
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type CycloMatrix = Matrix<CycloElem>;
pub type TruncMatrix = Matrix<TruncElem>;

impl<T: RingElem> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, template: &T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![template.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, template: &T) -> Self {
        let mut m = Self::zeros(n, n, template);
        for i in 0..n {
            m.data[i * n + i] = template.one_like();
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Result<Self> {
        let n = entries.len();
        let template = entries
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty diagonal".into()))?
            .clone();
        let mut m = Self::zeros(n, n, &template);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    fn template(&self) -> Result<&T> {
        self.data
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let template = self.template()?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = template.zero_like();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    acc = acc.plus(&a.times(b));
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::plus)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::minus)
    }

    pub fn neg(&self) -> Self {
        self.map(T::negated)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.times(s))
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.template()?);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    /// Gauss-Jordan inverse using unit pivots. Complete over local rings such as
    /// Z[zeta]/(h^k); over Z[zeta] it may miss inverses that need non-unit pivots.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let template = self.template()?.clone();
        let mut a = self.clone();
        let mut inv = Self::identity(n, &template);
        for col in 0..n {
            let (pivot_row, pivot_inv) = (col..n)
                .find_map(|r| a.get(r, col).unit_inverse().map(|iv| (r, iv)))
                .ok_or(Error::NoInverse)?;
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            a.scale_row(col, &pivot_inv);
            inv.scale_row(col, &pivot_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero_elem() {
                    continue;
                }
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &T) {
        for j in 0..self.cols {
            let v = self.get(r, j).times(s);
            self.set(r, j, v);
        }
    }

    /// row[target] -= f * row[src]
    fn axpy_row(&mut self, target: usize, src: usize, f: &T) {
        for j in 0..self.cols {
            let v = self.get(target, j).minus(&f.times(self.get(src, j)));
            self.set(target, j, v);
        }
    }

    /// Group commutator `M N M^{-1} N^{-1}`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?
            .mul(&self.inverse()?)?
            .mul(&other.inverse()?)
    }

    /// `G M G^{-1}`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        g.mul(self)?.mul(&g.inverse()?)
    }

    /// Embed a square block into the `n x n` identity at the listed indices.
    pub fn embed_block(&self, n: usize, indices: &[usize]) -> Result<Self> {
        if !self.is_square() || indices.len() != self.rows {
            return Err(Error::DimensionMismatch("block/index size mismatch".into()));
        }
        if indices.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("block index out of range".into()));
        }
        let mut seen = indices.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != indices.len() {
            return Err(Error::InvalidArgument("repeated block index".into()));
        }
        let mut m = Self::identity(n, self.template()?);
        for (bi, &i) in indices.iter().enumerate() {
            for (bj, &j) in indices.iter().enumerate() {
                m.set(i, j, self.get(bi, bj).clone());
            }
        }
        Ok(m)
    }

    /// Extract the sub-matrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl CycloMatrix {
    /// Matrix with integer entries.
    pub fn from_int_rows(p: crate::prime::Prime, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycloElem::from_int(p, x)).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free elimination with exact division in Z[zeta].
    pub fn determinant(&self) -> Result<CycloElem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let p = self.template()?.prime();
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = CycloElem::one(p);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(CycloElem::zero(p)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = v.div_exact(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Adjugate (transpose of the cofactor matrix), so that `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let p = self.template()?.prime();
        if n == 1 {
            return Ok(Self::identity(1, &CycloElem::one(p)));
        }
        let mut adj = Self::zeros(n, n, &CycloElem::zero(p));
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj.set(j, i, cof);
            }
        }
        Ok(adj)
    }

    /// Exact inverse over Z[zeta]; requires the determinant to be a unit.
    pub fn inverse_exact(&self) -> Result<Self> {
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::NoInverse);
        }
        let adj = self.adjugate()?;
        adj.try_map(|x| x.div_exact(&det).map_err(|_| Error::NoInverse))
    }

    pub fn valuations(&self) -> Matrix<Valuation> {
        self.map(CycloElem::h_valuation)
    }

    /// Minimum entrywise h-valuation.
    pub fn min_valuation(&self) -> Valuation {
        self.data
            .iter()
            .map(CycloElem::h_valuation)
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    pub fn reduce_mod_hk(&self, k: usize) -> Result<TruncMatrix> {
        self.try_map(|x| x.reduce_mod_hk(k))
    }

    pub fn scale_int(&self, s: &BigInt) -> Self {
        self.map(|x| x.scale(s))
    }
}

impl TruncMatrix {
    /// Matrix from signed integer coefficient rows: `rows[i][j]` lists the
    /// h-expansion coefficients of entry (i, j).
    pub fn from_expansions(
        p: crate::prime::Prime,
        k: usize,
        rows: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|c| TruncElem::from_i64s(p, k, c))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Inverse of `I + N` with `N = 0 mod h`, as the finite series
    /// `I - N + N^2 - ...` (N is nilpotent modulo h^k).
    pub fn unipotent_inverse_series(&self) -> Result<Self> {
        let t = self.template()?.clone();
        let id = Self::identity(self.rows, &t);
        let nil = self.sub(&id)?;
        if nil.entries().iter().any(|x| x.coeff(0) != 0) {
            return Err(Error::Shape("matrix is not the identity modulo h".into()));
        }
        let mut acc = id.clone();
        let mut term = id;
        for j in 1..t.order() {
            term = term.mul(&nil)?;
            acc = if j % 2 == 1 { acc.sub(&term)? } else { acc.add(&term)? };
        }
        Ok(acc)
    }

    /// F_p matrix of the coefficients of `h^j`.
    pub fn layer(&self, j: usize) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).coeff(j)).collect())
            .collect()
    }

    pub fn truncate(&self, k: usize) -> Result<Self> {
        self.try_map(|x| x.truncate(k))
    }

    /// Multiply every entry by `zeta^e` (reduced to the same order).
    pub fn times_zeta_power(&self, e: i64) -> Result<Self> {
        let t = self.template()?;
        let z = CycloElem::zeta_pow(t.prime(), e).reduce_mod_hk(t.order())?;
        Ok(self.scale(&z))
    }

    /// Normalise a projective representative by the power of zeta that makes the
    /// h-linear part of the (0,0) entry vanish. Returns the exponent used.
    pub fn normalize_zeta_power(&self) -> Result<(i64, Self)> {
        let t = self.template()?;
        let p = t.prime().get();
        let c0 = t.coeff(0);
        if c0 == 0 || t.order() < 2 {
            return Ok((0, self.clone()));
        }
        // zeta^e = 1 - e h + ..., so the h-coefficient becomes c1 - e c0.
        let e = crate::prime::modp::mul(t.coeff(1), crate::prime::modp::inv(c0, p), p);
        Ok((e as i64, self.times_zeta_power(e as i64)?))
    }

    /// Smallest `e` in `0..p` with `zeta^e * self == other`, if any.
    pub fn zeta_power_relating(&self, other: &Self) -> Result<Option<i64>> {
        let p = self.template()?.prime().get() as i64;
        for e in 0..p {
            if self.times_zeta_power(e)? == *other {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

impl<T: Clone> Matrix<T> {
    /// Rows as nested vectors; available for any entry type.
    pub fn to_rows_plain(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        rows.serialize(s)
    }
}

impl<'de, T: RingElem + DeserializeOwned> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}
