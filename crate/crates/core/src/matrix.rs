//! Dense row-major matrices over an arbitrary scalar, plus the non-negative
//! integer predicates used for transition matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Principal submatrix keeping the listed indices (in the given order).
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(keep.len(), keep.len(), |a, b| self[(keep[a], keep[b])].clone())
    }

    pub(crate) fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::one())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self>
    where
        T: One,
    {
        self.ensure_square()?;
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product; row `(i, h)` of the result is `i * other.rows() + h`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * p, self.cols * q, |r, c| {
            let a = &self[(r / p, c / q)];
            if a.is_zero() {
                T::zero()
            } else {
                a.clone() * other[(r % p, c % q)].clone()
            }
        })
    }

    pub fn entry_sum(&self) -> T {
        self.data.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn column_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, j)].clone()))
            .collect()
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix<u64> {
    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|&x| x <= 1)
    }

    pub(crate) fn ensure_zero_one(&self) -> Result<()> {
        if self.is_zero_one() {
            Ok(())
        } else {
            Err(Error::NotZeroOne)
        }
    }

    /// Support of the matrix as a boolean adjacency.
    fn support(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| self[(i, j)] > 0).collect())
            .collect()
    }

    /// `reach[i][j]` iff there is a walk of length >= 1 from `i` to `j`.
    pub fn reachability(&self) -> Result<Vec<Vec<bool>>> {
        self.ensure_square()?;
        let adj = self.support();
        let n = self.rows;
        let mut reach = vec![vec![false; n]; n];
        for (start, reach_row) in reach.iter_mut().enumerate() {
            let mut stack: Vec<usize> = adj[start].clone();
            while let Some(v) = stack.pop() {
                if !reach_row[v] {
                    reach_row[v] = true;
                    stack.extend(adj[v].iter().copied().filter(|&w| !reach_row[w]));
                }
            }
        }
        Ok(reach)
    }

    /// Transitivity: every ordered pair (i, j) is joined by a walk of positive length.
    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.reachability()?.iter().all(|row| row.iter().all(|&b| b)))
    }

    pub fn is_permutation(&self) -> Result<bool> {
        self.ensure_square()?;
        let n = self.rows;
        let rows_ok = (0..n).all(|i| {
            self.row(i).iter().filter(|&&x| x == 1).count() == 1
                && self.row(i).iter().all(|&x| x <= 1)
        });
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| self[(i, j)] == 1).count() == 1);
        Ok(rows_ok && cols_ok)
    }

    /// Cycle lengths of a permutation matrix, in order of their least index.
    pub fn permutation_cycles(&self) -> Result<Option<Vec<usize>>> {
        if !self.is_permutation()? {
            return Ok(None);
        }
        let n = self.rows;
        let image: Vec<usize> = (0..n)
            .map(|i| self.row(i).iter().position(|&x| x == 1).unwrap())
            .collect();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = image[v];
                len += 1;
            }
            cycles.push(len);
        }
        Ok(Some(cycles))
    }

    pub fn has_zero_row(&self) -> bool {
        (0..self.rows).any(|i| self.row(i).iter().all(|&x| x == 0))
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.cols).any(|j| (0..self.rows).all(|i| self[(i, j)] == 0))
    }

    pub fn positivity(&self) -> Matrix<bool> {
        self.map(|&x| x > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntMatrix;

    fn m(rows: Vec<Vec<u64>>) -> IntMatrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(m(vec![vec![1, 1], vec![1, 0]]).is_irreducible().unwrap());
        assert!(m(vec![vec![0, 1], vec![1, 0]]).is_irreducible().unwrap());
        assert!(!m(vec![vec![1, 1], vec![0, 1]]).is_irreducible().unwrap());
        assert!(!m(vec![vec![0]]).is_irreducible().unwrap());
        assert!(m(vec![vec![1, 1], vec![0, 1], vec![1, 1]]).is_irreducible().is_err());
    }

    #[test]
    fn permutation_examples() {
        assert!(m(vec![vec![0, 1], vec![1, 0]]).is_permutation().unwrap());
        assert!(IntMatrix::identity(4).is_permutation().unwrap());
        assert!(!m(vec![vec![1, 1], vec![1, 0]]).is_permutation().unwrap());
        assert!(!m(vec![vec![2]]).is_permutation().unwrap());
        assert_eq!(
            m(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])
                .permutation_cycles()
                .unwrap(),
            Some(vec![2, 1])
        );
    }

    #[test]
    fn kronecker_examples() {
        let j2 = IntMatrix::all_ones(2, 2);
        assert_eq!(j2.kronecker(&j2), IntMatrix::all_ones(4, 4));
        let mm = m(vec![vec![1, 2], vec![3, 4]]);
        let block = IntMatrix::identity(2).kronecker(&mm);
        assert_eq!(
            block,
            m(vec![
                vec![1, 2, 0, 0],
                vec![3, 4, 0, 0],
                vec![0, 0, 1, 2],
                vec![0, 0, 3, 4]
            ])
        );
        let k = IntMatrix::all_ones(2, 2).kronecker(&IntMatrix::identity(3));
        assert_eq!((k.rows(), k.cols()), (6, 6));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_rows(vec![vec![1, 0], vec![1]]).is_err());
        assert!(IntMatrix::new(2, 2, vec![1, 2, 3]).is_err());
    }
}
