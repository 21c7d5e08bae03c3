use serde::Serialize;

use crate::cyclotomic::{TruncElem, TruncMatrix};
use crate::error::{Error, Result};
use crate::fusion_basis::Parity;
use crate::prime::modp;

/// Truncated matrix whose index set is graded odd/even.
///
/// Entry `(i, j)` is the coefficient of basis vector `i` in the image of `j`, so
/// the even-to-odd block sits in odd rows and even columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradedBlockMatrix {
    matrix: TruncMatrix,
    grading: Vec<Parity>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Odd-to-even block divisible by h.
    MappingClassLike,
    /// Identity on the diagonal blocks and zero odd-to-even block, mod h.
    TorelliModH,
    /// `I + h X` mod h^2 with X block upper-triangular.
    JohnsonModH2,
    /// `I + h X` mod h^2 with X supported on the even-to-odd block.
    MixedCommutatorModH2,
}

impl GradedBlockMatrix {
    pub fn new(matrix: TruncMatrix, grading: Vec<Parity>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != grading.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix with {} graded indices",
                matrix.rows(),
                matrix.cols(),
                grading.len()
            )));
        }
        Ok(GradedBlockMatrix { matrix, grading })
    }

    /// Odd indices first, then even ones.
    pub fn with_blocks(matrix: TruncMatrix, odd: usize) -> Result<Self> {
        let n = matrix.rows();
        if odd > n {
            return Err(Error::DimensionMismatch("odd block larger than matrix".into()));
        }
        let grading = (0..n)
            .map(|i| if i < odd { Parity::Odd } else { Parity::Even })
            .collect();
        Self::new(matrix, grading)
    }

    pub fn matrix(&self) -> &TruncMatrix {
        &self.matrix
    }

    pub fn grading(&self) -> &[Parity] {
        &self.grading
    }

    fn indices(&self, parity: Parity) -> Vec<usize> {
        (0..self.grading.len()).filter(|&i| self.grading[i] == parity).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        self.indices(Parity::Odd)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        self.indices(Parity::Even)
    }

    /// Odd-to-odd block.
    pub fn a1(&self) -> TruncMatrix {
        let o = self.odd_indices();
        self.matrix.submatrix(&o, &o)
    }

    /// Even-to-odd block.
    pub fn a2(&self) -> TruncMatrix {
        self.matrix.submatrix(&self.odd_indices(), &self.even_indices())
    }

    /// Even-to-even block.
    pub fn a3(&self) -> TruncMatrix {
        let e = self.even_indices();
        self.matrix.submatrix(&e, &e)
    }

    /// Odd-to-even block.
    pub fn lower_left(&self) -> TruncMatrix {
        self.matrix.submatrix(&self.even_indices(), &self.odd_indices())
    }

    fn order(&self) -> usize {
        self.matrix.get(0, 0).order()
    }

    fn is_identity_mod_h(&self) -> bool {
        let n = self.matrix.rows();
        (0..n).all(|i| (0..n).all(|j| self.matrix.get(i, j).coeff(0) == u32::from(i == j)))
    }

    fn layer_vanishes(&self, j: usize, rows: &[usize], cols: &[usize]) -> bool {
        rows.iter()
            .all(|&r| cols.iter().all(|&c| self.matrix.get(r, c).coeff(j) == 0))
    }

    pub fn satisfies(&self, shape: Shape) -> bool {
        let odd = self.odd_indices();
        let even = self.even_indices();
        match shape {
            Shape::MappingClassLike => self.layer_vanishes(0, &even, &odd),
            Shape::TorelliModH => {
                let n = self.matrix.rows();
                let same = |i: usize, j: usize| self.grading[i] == self.grading[j];
                self.layer_vanishes(0, &even, &odd)
                    && (0..n).all(|i| {
                        (0..n).all(|j| {
                            !same(i, j) || self.matrix.get(i, j).coeff(0) == u32::from(i == j)
                        })
                    })
            }
            Shape::JohnsonModH2 => {
                self.order() >= 2 && self.is_identity_mod_h() && self.layer_vanishes(1, &even, &odd)
            }
            Shape::MixedCommutatorModH2 => {
                self.satisfies(Shape::JohnsonModH2)
                    && self.layer_vanishes(1, &odd, &odd)
                    && self.layer_vanishes(1, &even, &even)
            }
        }
    }

    fn trace_layer(&self, idx: &[usize]) -> u32 {
        let p = self.matrix.get(0, 0).prime().get();
        idx.iter()
            .fold(0, |acc, &i| modp::add(acc, self.matrix.get(i, i).coeff(1), p))
    }

    fn require_johnson(&self) -> Result<()> {
        if self.satisfies(Shape::JohnsonModH2) {
            Ok(())
        } else {
            Err(Error::Shape("matrix is not of the form I + h X, X block upper-triangular".into()))
        }
    }

    /// Trace of the order-1 part of the odd diagonal block.
    pub fn d_prime(&self) -> Result<u32> {
        self.require_johnson()?;
        Ok(self.trace_layer(&self.odd_indices()))
    }

    /// Sum of the order-1 traces of both diagonal blocks.
    pub fn d_double_prime(&self) -> Result<u32> {
        self.require_johnson()?;
        let p = self.matrix.get(0, 0).prime().get();
        Ok(modp::add(
            self.trace_layer(&self.odd_indices()),
            self.trace_layer(&self.even_indices()),
            p,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        Self::new(self.matrix.mul(&other.matrix)?, self.grading.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.matrix.inverse()?, self.grading.clone())
    }

    /// `G self G^{-1}`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        self.check_grading(g)?;
        Self::new(self.matrix.conjugate_by(&g.matrix)?, self.grading.clone())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        Self::new(self.matrix.commutator(&other.matrix)?, self.grading.clone())
    }

    fn check_grading(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::DimensionMismatch("gradings differ".into()));
        }
        Ok(())
    }

    /// Place this block at `indices` of a larger graded identity matrix; the
    /// grading of the target must agree with this block's on those indices.
    pub fn embed(&self, grading: Vec<Parity>, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i >= grading.len()) {
            return Err(Error::InvalidArgument("block index out of range".into()));
        }
        if indices.iter().zip(&self.grading).any(|(&i, &g)| grading[i] != g) {
            return Err(Error::InvalidArgument("block grading disagrees with target".into()));
        }
        let m = self.matrix.embed_block(grading.len(), indices)?;
        Self::new(m, grading)
    }
}

/// Helper for building truncated matrices from order-0 and order-1 layers.
pub fn from_layers(
    p: crate::prime::Prime,
    k: usize,
    layers: &[Vec<Vec<u32>>],
) -> Result<TruncMatrix> {
    let n = layers.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let coeffs = (0..k)
                .map(|l| layers.get(l).map_or(0, |m| m[i][j] % p.get()))
                .collect();
            row.push(TruncElem::from_coeffs(p, k, coeffs)?);
        }
        rows.push(row);
    }
    TruncMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::Prime;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn graded(layers: &[Vec<Vec<u32>>], odd: usize) -> GradedBlockMatrix {
        GradedBlockMatrix::with_blocks(from_layers(p5(), 2, layers).unwrap(), odd).unwrap()
    }

    fn id3() -> Vec<Vec<u32>> {
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
    }

    #[test]
    fn identity_has_zero_traces() {
        let m = graded(&[id3()], 1);
        assert_eq!(m.d_prime().unwrap(), 0);
        assert_eq!(m.d_double_prime().unwrap(), 0);
        for s in [Shape::MappingClassLike, Shape::TorelliModH, Shape::JohnsonModH2, Shape::MixedCommutatorModH2] {
            assert!(m.satisfies(s));
        }
    }

    #[test]
    fn shapes_distinguish() {
        // odd = {0}; order-1 entry in the odd-to-even block (row 1, col 0)
        let bad = graded(&[id3(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]], 1);
        assert!(bad.satisfies(Shape::MappingClassLike));
        assert!(!bad.satisfies(Shape::JohnsonModH2));
        assert!(bad.d_prime().is_err());
        let diag = graded(&[id3(), vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]], 1);
        assert!(diag.satisfies(Shape::JohnsonModH2));
        assert!(!diag.satisfies(Shape::MixedCommutatorModH2));
        assert_eq!(diag.d_prime().unwrap(), 2);
        assert_eq!(diag.d_double_prime().unwrap(), 0);
        let lower0 = graded(&[vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]], 1);
        assert!(!lower0.satisfies(Shape::MappingClassLike));
        assert!(!lower0.satisfies(Shape::TorelliModH));
    }

    #[test]
    fn embedding_checks_grading() {
        let m = graded(&[id3(), vec![vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]], 1);
        let target = vec![Parity::Even, Parity::Odd, Parity::Even, Parity::Even];
        let e = m.embed(target.clone(), &[1, 0, 2]).unwrap();
        assert_eq!(e.d_prime().unwrap(), 2);
        assert!(m.embed(target, &[0, 1, 2]).is_err());
    }
}
