use serde::{Deserialize, Serialize};

use super::{Interval, IntervalError};

/// An axis-aligned box: one interval per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalBox(Vec<Interval>);

impl IntervalBox {
    pub fn new(components: Vec<Interval>) -> Result<Self, IntervalError> {
        if components.is_empty() {
            return Err(IntervalError::EmptyBox);
        }
        Ok(IntervalBox(components))
    }

    pub fn from_point(x: &[f64]) -> Self {
        IntervalBox(x.iter().map(|&v| Interval::point(v)).collect())
    }

    /// Box centred at `center` with the same radius in every coordinate.
    pub fn midrad(center: &[f64], radius: f64) -> Result<Self, IntervalError> {
        Ok(IntervalBox(
            center
                .iter()
                .map(|&c| Interval::midrad(c, radius))
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Interval] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Interval {
        self.0[i]
    }

    pub fn with_component(&self, i: usize, value: Interval) -> IntervalBox {
        let mut out = self.clone();
        out.0[i] = value;
        out
    }

    pub fn mid(&self) -> Vec<f64> {
        self.0.iter().map(Interval::mid).collect()
    }

    pub fn rad(&self) -> Vec<f64> {
        self.0.iter().map(Interval::rad).collect()
    }

    pub fn max_rad(&self) -> f64 {
        self.0.iter().map(Interval::rad).fold(0.0, f64::max)
    }

    pub fn max_width(&self) -> f64 {
        self.0.iter().map(Interval::width).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(Interval::is_finite)
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.0.iter().zip(x).all(|(iv, &v)| iv.contains(v))
    }

    fn check_dim(&self, other: &IntervalBox) -> Result<(), IntervalError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(IntervalError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }

    /// Componentwise intersection; `Ok(None)` is the empty box.
    pub fn intersect(&self, other: &IntervalBox) -> Result<Option<IntervalBox>, IntervalError> {
        self.check_dim(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()
            .map(IntervalBox))
    }

    pub fn is_subset(&self, other: &IntervalBox) -> Result<bool, IntervalError> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b)))
    }

    /// True when every endpoint of `self` lies strictly inside `other`.
    pub fn is_interior(&self, other: &IntervalBox) -> Result<bool, IntervalError> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.is_interior(b)))
    }

    pub fn hull(&self, other: &IntervalBox) -> Result<IntervalBox, IntervalError> {
        self.check_dim(other)?;
        Ok(IntervalBox(
            self.0.iter().zip(&other.0).map(|(a, b)| a.hull(b)).collect(),
        ))
    }

    /// Widens every component by `factor` times its own radius, plus
    /// `absolute`, on both sides.
    pub fn inflate(&self, factor: f64, absolute: f64) -> IntervalBox {
        IntervalBox(
            self.0
                .iter()
                .map(|iv| {
                    let d = factor * iv.rad() + absolute;
                    Interval::from_bounds(super::round::sub_down(iv.lo(), d), super::round::add_up(iv.hi(), d))
                })
                .collect(),
        )
    }

    /// Lexicographic order on lower corners, then upper corners.
    pub fn lex_cmp(&self, other: &IntervalBox) -> std::cmp::Ordering {
        let lows = self.0.iter().map(Interval::lo).zip(other.0.iter().map(Interval::lo));
        let highs = self.0.iter().map(Interval::hi).zip(other.0.iter().map(Interval::hi));
        for (a, b) in lows.chain(highs) {
            match a.total_cmp(&b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}
