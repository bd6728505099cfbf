use super::{Interval, IntervalBox};
use crate::linalg::Matrix;

/// Rectangular grid of intervals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Interval) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntervalMatrix { rows, cols, entries }
    }

    pub fn from_point(m: &Matrix<f64>) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| Interval::point(m[(i, j)]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Interval {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Interval] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix of entry midpoints.
    pub fn mid_matrix(&self) -> Matrix<f64> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mid())
    }

    /// Maximum row sum of entry magnitudes, rounded up.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(0.0, |acc, x| super::round::add_up(acc, x.mag()))
            })
            .fold(0.0, f64::max)
    }

    /// `point * self` with every product enclosed.
    pub fn left_mul_point(point: &Matrix<f64>, m: &IntervalMatrix) -> IntervalMatrix {
        assert_eq!(point.cols(), m.rows);
        IntervalMatrix::from_fn(point.rows(), m.cols, |i, j| {
            (0..point.cols()).fold(Interval::point(0.0), |acc, k| acc + m.get(k, j).scale(point[(i, k)]))
        })
    }

    /// `I - self`, for square matrices.
    pub fn identity_minus(&self) -> IntervalMatrix {
        assert_eq!(self.rows, self.cols);
        IntervalMatrix::from_fn(self.rows, self.cols, |i, j| {
            let one = if i == j { 1.0 } else { 0.0 };
            Interval::point(one) - self.get(i, j)
        })
    }

    pub fn mul_vec(&self, v: &[Interval]) -> Vec<Interval> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Interval::point(0.0), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn mul_box(&self, v: &IntervalBox) -> Vec<Interval> {
        self.mul_vec(v.components())
    }
}

/// `point * v` with every product enclosed.
pub(crate) fn point_mul_vec(point: &Matrix<f64>, v: &[Interval]) -> Vec<Interval> {
    assert_eq!(point.cols(), v.len());
    (0..point.rows())
        .map(|i| {
            point
                .row(i)
                .iter()
                .zip(v)
                .fold(Interval::point(0.0), |acc, (a, b)| acc + b.scale(*a))
        })
        .collect()
}
