//! Dense matrices over an exact field, with Gaussian elimination.
//!
//! Everything here is generic over a scalar type with exact equality
//! (`BigRational`, `CycNumber`). Elimination uses plain first-nonzero
//! pivoting; there is no floating point anywhere, so no pivot strategy
//! is needed and results are deterministic.

use num_traits::{One, Zero};
use std::ops::{Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Scalar bound for exact elimination: field operations plus a decidable
/// zero test (`Zero::is_zero`).
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Div<Output = Self>
{
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        x.clone()
                    } else {
                        x.clone() * c.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        // Column-major accumulation so sparse vectors skip whole columns.
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                let prod = a.clone() * vj.clone();
                let cur = std::mem::replace(&mut out[i], T::zero());
                out[i] = cur + prod;
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            if out.is_zero_matrix() {
                break;
            }
            out = out.mul(self);
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination on the augmented matrix.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            // One field inversion per pivot; scaling reuses it.
            let p_inv = T::one() / work[(col, col)].clone();
            for j in 0..n {
                if !work[(col, j)].is_zero() {
                    work[(col, j)] = work[(col, j)].clone() * p_inv.clone();
                }
                if !inv[(col, j)].is_zero() {
                    inv[(col, j)] = inv[(col, j)].clone() * p_inv.clone();
                }
            }
            for r in 0..n {
                if r == col || work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].clone();
                for j in 0..n {
                    let w = work[(col, j)].clone() * factor.clone();
                    work[(r, j)] = work[(r, j)].clone() - w;
                    let v = inv[(col, j)].clone() * factor.clone();
                    inv[(r, j)] = inv[(r, j)].clone() - v;
                }
            }
        }
        Ok(inv)
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Row echelon reduction in place; returns pivot column per row rank order.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(pivot, rank);
            let p_inv = T::one() / self[(rank, col)].clone();
            for j in col..self.cols {
                if !self[(rank, j)].is_zero() {
                    self[(rank, j)] = self[(rank, j)].clone() * p_inv.clone();
                }
            }
            for r in 0..self.rows {
                if r == rank || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let w = self[(rank, j)].clone() * factor.clone();
                    self[(r, j)] = self[(r, j)].clone() - w;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    /// Solve `self * x = rhs` exactly. Returns `None` when inconsistent.
    /// Free variables, if any, are set to zero.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.rref();
        // A pivot in the augmented column means the system is inconsistent.
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right nullspace, one vector per free column of the
    /// reduced echelon form, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -work[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let m = Matrix::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(inv.mul(&m), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_detected() {
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]);
        let x = m.solve(&[q(3, 1), q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 1), q(1, 1)]);

        let sing = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]);
        assert!(sing.solve(&[q(0, 1), q(1, 1)]).is_none());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.matvec(v).iter().all(num_traits::Zero::is_zero));
        }
    }
}
