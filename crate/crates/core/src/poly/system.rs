use std::fmt;

use num_complex::Complex64;

use super::{EvalError, ParseError, Polynomial, Scalar};
use crate::linalg::Matrix;

/// A square polynomial system together with its symbolic Jacobian and the
/// Hessian of every equation. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    polys: Vec<Polynomial>,
    var_names: Vec<String>,
    jacobian: Vec<Vec<Polynomial>>,
    hessians: Vec<Vec<Vec<Polynomial>>>,
}

impl PolySystem {
    /// Builds the system and eagerly differentiates it.
    #[allow(clippy::needless_range_loop)] // symmetric fill of the Hessians
    pub fn new(polys: Vec<Polynomial>, var_names: Vec<String>) -> Result<Self, ParseError> {
        let n = var_names.len();
        if n == 0 || polys.len() != n {
            return Err(ParseError::NonSquare {
                equations: polys.len(),
                vars: n,
            });
        }
        assert!(polys.iter().all(|p| p.nvars() == n), "variable count mismatch");

        let jacobian: Vec<Vec<Polynomial>> = polys
            .iter()
            .map(|p| (0..n).map(|j| p.differentiate(j)).collect())
            .collect();
        let hessians = jacobian
            .iter()
            .map(|row| {
                let mut h = vec![vec![Polynomial::zero(n); n]; n];
                for (j, dj) in row.iter().enumerate() {
                    for k in j..n {
                        let d = dj.differentiate(k);
                        h[k][j] = d.clone();
                        h[j][k] = d;
                    }
                }
                h
            })
            .collect();
        Ok(PolySystem {
            polys,
            var_names,
            jacobian,
            hessians,
        })
    }

    /// Number of variables, which equals the number of equations.
    pub fn dim(&self) -> usize {
        self.var_names.len()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// `jacobian()[i][j]` is `d polys[i] / d x_j`.
    pub fn jacobian(&self) -> &[Vec<Polynomial>] {
        &self.jacobian
    }

    /// Hessian of equation `i`; symmetric.
    pub fn hessian(&self, i: usize) -> &[Vec<Polynomial>] {
        &self.hessians[i]
    }

    pub fn total_degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    /// Product of the total degrees.
    pub fn bezout_number(&self) -> u64 {
        self.polys.iter().map(|p| u64::from(p.degree())).product()
    }

    pub fn eval_unchecked<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        self.polys.iter().map(|p| p.eval_unchecked(x)).collect()
    }

    pub fn eval_real(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        self.polys.iter().map(|p| p.eval_real(x)).collect()
    }

    pub fn eval_complex(&self, z: &[Complex64]) -> Result<Vec<Complex64>, EvalError> {
        self.polys.iter().map(|p| p.eval_complex(z)).collect()
    }

    pub fn jacobian_unchecked<T: Scalar>(&self, x: &[T]) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| self.jacobian[i][j].eval_unchecked(x))
    }

    /// Jacobian evaluated at a real or complex point.
    pub fn eval_jacobian<T: Scalar + fmt::Display>(&self, x: &[T]) -> Result<Matrix<T>, EvalError> {
        let m = self.jacobian_unchecked(x);
        if m.data().iter().all(Scalar::is_finite) {
            Ok(m)
        } else {
            Err(EvalError {
                point: x.iter().map(|v| v.to_string()).collect(),
            })
        }
    }

    pub fn hessian_unchecked<T: Scalar>(&self, i: usize, x: &[T]) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |j, k| self.hessians[i][j][k].eval_unchecked(x))
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.var_names.join(" "))?;
        for p in &self.polys {
            writeln!(f, "{}", p.display_with(&self.var_names))?;
        }
        Ok(())
    }
}
