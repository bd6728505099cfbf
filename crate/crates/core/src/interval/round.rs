//! Directed rounding without touching the FPU rounding mode.
//!
//! Each primitive is computed in round-to-nearest, then the sign of the exact
//! rounding error (recovered with TwoSum or an FMA residual) decides whether
//! the result has to move one ulp outward. The result equals the correctly
//! rounded downward/upward value. When the magnitudes are small enough that
//! the residual itself may underflow, the result is widened by one ulp
//! unconditionally.

/// Below this magnitude FMA residuals can be inexact.
const TINY: f64 = 1.0e-280;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::INFINITY { f64::MAX } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY { f64::MIN } else { s };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY { f64::MAX } else { p };
    }
    if p.abs() < TINY {
        return if p == 0.0 && (a == 0.0 || b == 0.0) {
            0.0
        } else {
            p.next_down()
        };
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY { f64::MIN } else { p };
    }
    if p.abs() < TINY {
        return if p == 0.0 && (a == 0.0 || b == 0.0) {
            0.0
        } else {
            p.next_up()
        };
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Sign of `a/b - fl(a/b)`; `None` when the residual cannot be trusted.
#[inline]
fn div_err_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if q.abs() < TINY || a.abs() < TINY || !q.is_finite() {
        return None;
    }
    let r = (-q).mul_add(b, a);
    Some(r * b.signum())
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q == 0.0 && a == 0.0 {
        return 0.0;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e < 0.0 => q.next_down(),
        Some(_) => q,
        None if q == f64::INFINITY => f64::MAX,
        None => q.next_down(),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q == 0.0 && a == 0.0 {
        return 0.0;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e > 0.0 => q.next_up(),
        Some(_) => q,
        None if q == f64::NEG_INFINITY => f64::MIN,
        None => q.next_up(),
    }
}

/// `x^k` rounded down for `x >= 0`.
pub fn pow_down(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    pow_directed(x, k, mul_down)
}

/// `x^k` rounded up for `x >= 0`.
pub fn pow_up(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    pow_directed(x, k, mul_up)
}

fn pow_directed(x: f64, mut k: u32, mul: fn(f64, f64) -> f64) -> f64 {
    // For non-negative operands directed products are monotone, so binary
    // powering with every product rounded the same way stays a one-sided bound.
    let mut acc = 1.0;
    let mut sq = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(acc, sq);
        }
        k >>= 1;
        if k > 0 {
            sq = mul(sq, sq);
        }
    }
    acc
}
