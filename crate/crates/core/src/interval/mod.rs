//! Closed-interval arithmetic with outward rounding.
//!
//! Every operation returns an interval enclosing all pointwise results of the
//! operands. Endpoints are rounded outward with [`round`].

mod boxes;
mod eval;
pub mod format;
mod matrix;
pub mod round;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use boxes::IntervalBox;
pub use eval::{eval_hessian_interval, eval_interval, eval_jacobian_interval, eval_system_interval};
pub(crate) use matrix::point_mul_vec;
pub use matrix::IntervalMatrix;

use round::{add_down, add_up, div_down, div_up, mul_down, mul_up, pow_down, pow_up, sub_down, sub_up};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("division by an interval containing zero: {0}")]
    DivisionByZero(Interval),
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a box needs at least one component")]
    EmptyBox,
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Checked constructor: `lo <= hi`, neither NaN.
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IntervalError::InvalidBounds { lo, hi })
        }
    }

    pub(crate) const fn from_bounds(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub const fn symmetric_unit() -> Self {
        Interval { lo: -1.0, hi: 1.0 }
    }

    /// `[m - r, m + r]` rounded outward.
    pub fn midrad(m: f64, r: f64) -> Result<Self, IntervalError> {
        if !(r >= 0.0) {
            return Err(IntervalError::NegativeRadius(r));
        }
        Ok(Interval {
            lo: sub_down(m, r),
            hi: add_up(m, r),
        })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint, nearest-rounded; always lies inside the interval.
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Radius about [`Self::mid`], rounded up so that
    /// `self ⊆ midrad(mid, rad)`.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        sub_up(m, self.lo).max(sub_up(self.hi, m))
    }

    /// `hi - lo` rounded up.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Largest modulus over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest modulus over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strict inclusion of both endpoints.
    pub fn is_interior(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains(0.0) {
            return Err(IntervalError::DivisionByZero(rhs));
        }
        let cands_lo = [
            div_down(self.lo, rhs.lo),
            div_down(self.lo, rhs.hi),
            div_down(self.hi, rhs.lo),
            div_down(self.hi, rhs.hi),
        ];
        let cands_hi = [
            div_up(self.lo, rhs.lo),
            div_up(self.lo, rhs.hi),
            div_up(self.hi, rhs.lo),
            div_up(self.hi, rhs.hi),
        ];
        Ok(Interval {
            lo: cands_lo.into_iter().fold(f64::INFINITY, f64::min),
            hi: cands_hi.into_iter().fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// Integer power. Even powers map through `[mig^k, mag^k]`, so sign
    /// information is not lost the way repeated `x * x` would lose it.
    pub fn powi(self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(1.0);
        }
        if k == 1 {
            return self;
        }
        if k % 2 == 0 {
            Interval {
                lo: pow_down(self.mig(), k),
                hi: pow_up(self.mag(), k),
            }
        } else {
            let lo = if self.lo >= 0.0 {
                pow_down(self.lo, k)
            } else {
                -pow_up(-self.lo, k)
            };
            let hi = if self.hi >= 0.0 {
                pow_up(self.hi, k)
            } else {
                -pow_down(-self.hi, k)
            };
            Interval { lo, hi }
        }
    }

    /// Multiplies by a real scalar.
    pub fn scale(self, c: f64) -> Interval {
        self * Interval::point(c)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        if a == b && c == d {
            return Interval {
                lo: mul_down(a, c),
                hi: mul_up(a, c),
            };
        }
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format::format_down(self.lo), format::format_up(self.hi))
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[f64; 2]>::deserialize(d)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}
