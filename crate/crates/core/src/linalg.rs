//! Dense matrices with exact Gauss–Jordan elimination.
//!
//! The matrix type is generic over any signed, ordered, divisible scalar so
//! the same code serves exact rationals (the crate-wide default [`crate::Q`])
//! as well as `f32`/`f64` for quick numeric experiments. All rank and
//! nullspace contracts in this crate are only meaningful for exact scalars.
//!
//! Elimination uses a deterministic pivot rule — columns left to right, and
//! within a column the smallest remaining row index — so ranks, reduced forms
//! and nullspace bases are bit-for-bit reproducible.

use num_traits::Signed;

/// Scalar requirements for elimination: exact field-like arithmetic.
pub trait Scalar: Clone + PartialOrd + Signed {}
impl<T: Clone + PartialOrd + Signed> Scalar for T {}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Outcome of reduced row-echelon elimination.
#[derive(Clone, Debug)]
pub struct Reduced<T> {
    /// The reduced matrix.
    pub matrix: Matrix<T>,
    /// `(row, column)` of each pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

impl<T: Scalar> Matrix<T> {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == n_cols),
            "ragged rows: expected uniform length {n_cols}"
        );
        Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out: Matrix<T> = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = self[(i, k)].clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + add;
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with the deterministic pivot rule.
    pub fn reduced_row_echelon(&self) -> Reduced<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            let Some(pivot_row) =
                (next_row..m.rows).find(|&r| !m[(r, col)].is_zero())
            else {
                continue;
            };
            m.swap_rows(next_row, pivot_row);
            let inv_lead = m[(next_row, col)].clone();
            for j in col..m.cols {
                m[(next_row, j)] = m[(next_row, j)].clone() / inv_lead.clone();
            }
            for r in 0..m.rows {
                if r != next_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let sub = factor.clone() * m[(next_row, j)].clone();
                        m[(r, j)] = m[(r, j)].clone() - sub;
                    }
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == m.rows {
                break;
            }
        }
        Reduced { matrix: m, pivots }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.reduced_row_echelon().pivots.len()
    }

    /// Exact nullity (`cols - rank`).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right nullspace, one vector per free column, in column
    /// order. Each basis vector has a `1` in its free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let reduced = self.reduced_row_echelon();
        let pivot_cols: Vec<usize> = reduced.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for &(row, col) in &reduced.pivots {
                v[col] = T::zero() - reduced.matrix[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}
