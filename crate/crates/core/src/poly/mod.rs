//! Sparse multivariate polynomials with machine-real coefficients.
//!
//! A [`Polynomial`] is kept in canonical form: like terms are combined, zero
//! terms are dropped and the remaining terms are sorted in descending graded
//! lexicographic order. Two polynomials are therefore equal exactly when their
//! term lists are equal.

mod parse;
mod system;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use thiserror::Error;

pub use parse::{parse_polynomial, parse_system, ParseError};
pub use system::PolySystem;

/// Evaluation produced a non-finite value.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("polynomial evaluation overflowed at point {point:?}")]
pub struct EvalError {
    /// The offending point, rendered component by component.
    pub point: Vec<String>,
}

/// A point of complex n-space with finite components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint(Vec<Complex64>);

impl ComplexPoint {
    /// Returns `None` if a component is not finite.
    pub fn new(components: Vec<Complex64>) -> Option<Self> {
        components
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
            .then_some(ComplexPoint(components))
    }

    pub fn from_real(x: &[f64]) -> Self {
        ComplexPoint(x.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn re(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.im).collect()
    }

    /// Largest component modulus.
    pub fn inf_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest componentwise distance, measured as max(|Δre|, |Δim|).
    pub fn inf_distance(&self, other: &ComplexPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a.re - b.re).abs().max((a.im - b.im).abs()))
            .fold(0.0, f64::max)
    }
}

impl serde::Serialize for ComplexPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.0.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single term `coefficient * x_1^e_1 * ... * x_n^e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coefficient: f64,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A polynomial in `nvars` variables, in canonical term order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    terms: Vec<Monomial>,
    nvars: usize,
}

/// Scalars the point evaluators work over.
pub trait Scalar: Copy + Add<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn is_finite(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `base^exp` by binary exponentiation.
pub fn powi<T: Scalar>(base: T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq * sq;
        }
    }
    acc
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            terms: Vec::new(),
            nvars,
        }
    }

    pub fn constant(value: f64, nvars: usize) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], value)])
    }

    /// The polynomial `x_index`.
    pub fn variable(index: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::from_terms(nvars, [(exps, 1.0)])
    }

    /// Builds a canonical polynomial from `(exponents, coefficient)` pairs,
    /// combining like terms and dropping zeros.
    ///
    /// Panics if an exponent vector does not have length `nvars`.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut map: BTreeMap<Exponents, f64> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
            *map.entry(Exponents(exps)).or_insert(0.0) += c;
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: BTreeMap<Exponents, f64>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| *c != 0.0)
            .map(|(e, c)| Monomial {
                coefficient: c,
                exponents: e.0,
            })
            .collect();
        Polynomial { terms, nvars }
    }

    fn to_map(&self) -> BTreeMap<Exponents, f64> {
        self.terms
            .iter()
            .map(|t| (Exponents(t.exponents.clone()), t.coefficient))
            .collect()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut map = self.to_map();
        for t in &other.terms {
            *map.entry(Exponents(t.exponents.clone())).or_insert(0.0) += t.coefficient;
        }
        Self::from_map(self.nvars, map)
    }

    pub fn scale(&self, factor: f64) -> Polynomial {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|t| (t.exponents.clone(), t.coefficient * factor)),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut map: BTreeMap<Exponents, f64> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let exps = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                *map.entry(Exponents(exps)).or_insert(0.0) += a.coefficient * b.coefficient;
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::constant(1.0, self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars, "variable index out of range");
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|t| t.exponents[var] > 0).map(|t| {
                let mut exps = t.exponents.clone();
                let e = exps[var];
                exps[var] -= 1;
                (exps, t.coefficient * f64::from(e))
            }),
        )
    }

    /// Evaluates at `point` without checking the result for overflow.
    ///
    /// Each monomial is the product of per-variable binary powers taken left
    /// to right in variable order, scaled by its coefficient; terms are summed
    /// in canonical order.
    pub fn eval_unchecked<T: Scalar>(&self, point: &[T]) -> T {
        debug_assert_eq!(point.len(), self.nvars);
        let mut sum = T::zero();
        for term in &self.terms {
            let mut m = T::one();
            for (x, &e) in point.iter().zip(&term.exponents) {
                if e > 0 {
                    m = m * powi(*x, e);
                }
            }
            sum = sum + T::from_real(term.coefficient) * m;
        }
        sum
    }

    pub fn eval_real(&self, point: &[f64]) -> Result<f64, EvalError> {
        let v = self.eval_unchecked(point);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError {
                point: point.iter().map(|x| x.to_string()).collect(),
            })
        }
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, EvalError> {
        let v = self.eval_unchecked(point);
        if Scalar::is_finite(&v) {
            Ok(v)
        } else {
            Err(EvalError {
                point: point.iter().map(|z| z.to_string()).collect(),
            })
        }
    }

    /// Sum of the moduli of the terms at `point`. Scaled by the unit
    /// roundoff this bounds the rounding error of [`Self::eval_unchecked`].
    pub fn abs_term_sum(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let mut m = t.coefficient.abs();
                for (z, &e) in point.iter().zip(&t.exponents) {
                    if e > 0 {
                        m *= z.norm().powi(e as i32);
                    }
                }
                m
            })
            .sum()
    }

    /// Renders the polynomial with the given variable names in the input
    /// grammar accepted by [`parse_system`].
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.poly.terms.iter().enumerate() {
            let c = t.coefficient;
            let mag = c.abs();
            if k == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = t.exponents.iter().all(|&e| e == 0);
            if mag != 1.0 || is_const {
                factors.push(format!("{mag}"));
            }
            for (name, &e) in self.names.iter().zip(&t.exponents) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
