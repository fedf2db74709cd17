//! Dense Gauss-Jordan elimination over an exact field.
//!
//! Pivots are the first nonzero entry in column order; no magnitude-based
//! pivoting is needed since arithmetic is exact.

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Appends `col` as a new last column.
    pub fn augment(&self, col: &[T]) -> Self {
        assert_eq!(col.len(), self.rows);
        let mut rows: Vec<Vec<T>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        for (row, v) in rows.iter_mut().zip(col) {
            row.push(v.clone());
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: rows.into_iter().flatten().collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces to reduced row echelon form in place and returns the pivot
    /// columns. Only the first `limit` columns are eligible as pivots.
    pub fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit.min(self.cols) {
            if row == self.rows {
                break;
            }
            let Some(found) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, found);
            let inv = self[(row, col)]
                .try_inv()
                .expect("pivot is nonzero");
            for c in col..self.cols {
                self[(row, c)] = self[(row, c)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    let delta = factor.clone() * self[(row, c)].clone();
                    self[(r, c)] = self[(r, c)].clone() - delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// General solution of `M s = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    /// A particular solution with all free variables zero, if consistent.
    pub particular: Option<Vec<T>>,
    /// Basis of the null space of `M`, one vector per free column.
    pub nullspace: Vec<Vec<T>>,
    pub rank: usize,
}

/// Solves `M s = rhs` exactly.
pub fn solve<T: Field>(m: &Matrix<T>, rhs: &[T]) -> Solution<T> {
    let n = m.cols();
    let mut aug = m.augment(rhs);
    let pivots = aug.rref_limited(n);
    let rank = pivots.len();
    let consistent = (rank..aug.rows()).all(|r| aug[(r, n)].is_zero());

    let particular = consistent.then(|| {
        let mut s = vec![T::zero(); n];
        for (r, &pc) in pivots.iter().enumerate() {
            s[pc] = aug[(r, n)].clone();
        }
        s
    });

    let nullspace = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -aug[(r, free)].clone();
            }
            v
        })
        .collect();

    Solution {
        particular,
        nullspace,
        rank,
    }
}

/// Rank of the span of `vectors`.
pub fn span_rank<T: Field>(vectors: &[Vec<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use num_traits::Zero;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_rows(vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(1), r(0), r(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let sol = solve(&m, &[r(0), r(0), r(0)]);
        assert_eq!(sol.nullspace.len(), 1);
        assert!(m.mul_vec(&sol.nullspace[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(2), r(2)]]);
        assert!(solve(&m, &[r(1), r(3)]).particular.is_none());
    }

    #[test]
    fn unique_solution() {
        let m = Matrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(3)]]);
        let sol = solve(&m, &[r(3), r(5)]);
        assert_eq!(sol.particular, Some(vec![ratio(4, 5), ratio(7, 5)]));
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn pivot_is_first_nonzero() {
        let mut m = Matrix::from_rows(vec![vec![r(0), r(5)], vec![r(3), r(1)]]);
        assert_eq!(m.rref(), vec![0, 1]);
        assert_eq!(m.row(0), &[r(1), r(0)]);
    }
}
