//! Small dense matrices and partial-pivot LU over real or complex scalars.

use std::ops::{Div, Index, IndexMut, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::Scalar;

/// Default relative pivot threshold: a pivot below `1e-12 * ||A||_inf`
/// means the matrix is treated as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("matrix is numerically singular (pivot {pivot:e} at column {column})")]
pub struct SingularMatrix {
    pub column: usize,
    pub pivot: f64,
}

/// Scalars that support elimination.
pub trait Field: Scalar + Sub<Output = Self> + Div<Output = Self> + Neg<Output = Self> {
    fn modulus(&self) -> f64;
}

impl Field for f64 {
    fn modulus(&self) -> f64 {
        self.abs()
    }
}

impl Field for Complex64 {
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged or empty.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Field> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Field::modulus).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Maximum modulus of a vector.
pub fn inf_norm_vec<T: Field>(v: &[T]) -> f64 {
    v.iter().map(Field::modulus).fold(0.0, f64::max)
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
}

impl<T: Field> Lu<T> {
    /// Factors a square matrix; fails when a pivot's modulus is at or below
    /// `rel_threshold * ||a||_inf`.
    pub fn factor(a: &Matrix<T>, rel_threshold: f64) -> Result<Self, SingularMatrix> {
        assert_eq!(a.rows, a.cols, "LU needs a square matrix");
        let n = a.rows;
        let threshold = rel_threshold * a.inf_norm();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, best) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].modulus()))
                    .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if !(best > threshold) {
                return Err(SingularMatrix { column: k, pivot: best });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let v = lu[(i, j)] - factor * lu[(k, j)];
                    lu[(i, j)] = v;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lu.rows;
        assert_eq!(b.len(), n);
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
            x[i] = x[i] / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> Matrix<T> {
        let n = self.lu.rows;
        let mut inv = Matrix::from_fn(n, n, |_, _| T::zero());
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

pub fn solve<T: Field>(a: &Matrix<T>, b: &[T], rel_threshold: f64) -> Result<Vec<T>, SingularMatrix> {
    Ok(Lu::factor(a, rel_threshold)?.solve(b))
}

/// Inverse with the default pivot threshold.
pub fn invert<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>, SingularMatrix> {
    Ok(Lu::factor(a, PIVOT_THRESHOLD)?.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_scalar_and_identity() {
        let a = Matrix::from_rows(&[vec![2.0]]);
        assert_eq!(invert(&a).unwrap(), Matrix::from_rows(&[vec![0.5]]));
        let id = Matrix::<f64>::identity(3);
        assert_eq!(invert(&id).unwrap(), id);
    }

    #[test]
    fn rank_one_is_singular() {
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(invert(&a).is_err());
        let z = Matrix::from_rows(&[vec![0.0]]);
        assert!(invert(&z).is_err());
    }

    #[test]
    fn solve_with_pivoting() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]);
        let x = [1.0, -2.0, 0.5];
        let b = a.mul_vec(&x);
        let got = solve(&a, &b, PIVOT_THRESHOLD).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_solve() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = Matrix::from_rows(&[vec![one, i], vec![i, 2.0 * one]]);
        let x = [Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.25)];
        let got = solve(&a, &a.mul_vec(&x), PIVOT_THRESHOLD).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-14);
        }
    }

    #[test]
    fn norms() {
        assert_eq!(inf_norm_vec(&[1.0, -3.0, 2.0]), 3.0);
        let m = Matrix::from_rows(&[vec![1.0, -2.0], vec![0.0, 1.0]]);
        assert_eq!(m.inf_norm(), 3.0);
    }
}
