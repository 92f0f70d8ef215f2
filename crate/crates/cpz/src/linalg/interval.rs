//! Closed real intervals with outward-rounded elementary-function arithmetic.
//!
//! Every result is a superset of the exact range of the operation over the
//! argument intervals. Instead of switching hardware rounding modes, each
//! computed bound is widened by one unit in the last place; operations that
//! are exact (adding a point zero, multiplying by a point zero) skip the
//! widening so that degenerate inputs stay degenerate.

use crate::{CpzError, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalScalar {
    lo: f64,
    hi: f64,
}

impl IntervalScalar {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        // the negated form also rejects NaN bounds
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(lo <= hi) {
            return Err(CpzError::Validation(format!(
                "invalid interval bounds: lo = {lo}, hi = {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn zero() -> Self {
        Self::point(0.0)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn halfwidth(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    fn is_exact_zero(&self) -> bool {
        self.lo == 0.0 && self.hi == 0.0
    }

    fn widened(lo: f64, hi: f64) -> Self {
        Self {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn add(&self, other: &IntervalScalar) -> IntervalScalar {
        if self.is_exact_zero() {
            return *other;
        }
        if other.is_exact_zero() {
            return *self;
        }
        Self::widened(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn sub(&self, other: &IntervalScalar) -> IntervalScalar {
        if other.is_exact_zero() {
            return *self;
        }
        if self.is_exact_zero() {
            return Self::widened(-other.hi, -other.lo);
        }
        Self::widened(self.lo - other.hi, self.hi - other.lo)
    }

    pub fn mul(&self, other: &IntervalScalar) -> IntervalScalar {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let candidates = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let lo = candidates.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Self::widened(lo, hi)
    }

    pub fn div(&self, other: &IntervalScalar) -> Result<IntervalScalar> {
        if other.contains(0.0) {
            return Err(CpzError::Domain(format!(
                "division by interval [{}, {}] containing zero",
                other.lo, other.hi
            )));
        }
        let candidates = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        let lo = candidates.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self::widened(lo, hi))
    }

    /// Integer power. Even exponents on sign-spanning intervals return
    /// `[0, max(lo^n, hi^n)]`.
    pub fn pow_int(&self, n: u32) -> IntervalScalar {
        match n {
            0 => Self::point(1.0),
            1 => *self,
            _ => {
                let a = self.lo.powi(n as i32);
                let b = self.hi.powi(n as i32);
                if n.is_multiple_of(2) && self.contains(0.0) {
                    Self {
                        lo: 0.0,
                        hi: a.max(b).next_up(),
                    }
                } else {
                    Self::widened(a.min(b), a.max(b))
                }
            }
        }
    }

    pub fn exp(&self) -> IntervalScalar {
        Self::widened(self.lo.exp(), self.hi.exp())
    }

    pub fn sin(&self) -> IntervalScalar {
        if self.hi - self.lo >= TWO_PI {
            return Self { lo: -1.0, hi: 1.0 };
        }
        let mut lo = self.lo.sin().min(self.hi.sin());
        let mut hi = self.lo.sin().max(self.hi.sin());
        // maxima at pi/2 + 2k pi, minima at -pi/2 + 2k pi
        if contains_periodic(self.lo, self.hi, std::f64::consts::FRAC_PI_2) {
            hi = 1.0;
        }
        if contains_periodic(self.lo, self.hi, -std::f64::consts::FRAC_PI_2) {
            lo = -1.0;
        }
        let out = Self::widened(lo, hi);
        Self {
            lo: out.lo.max(-1.0),
            hi: out.hi.min(1.0),
        }
    }

    pub fn cos(&self) -> IntervalScalar {
        if self.hi - self.lo >= TWO_PI {
            return Self { lo: -1.0, hi: 1.0 };
        }
        let mut lo = self.lo.cos().min(self.hi.cos());
        let mut hi = self.lo.cos().max(self.hi.cos());
        if contains_periodic(self.lo, self.hi, 0.0) {
            hi = 1.0;
        }
        if contains_periodic(self.lo, self.hi, std::f64::consts::PI) {
            lo = -1.0;
        }
        let out = Self::widened(lo, hi);
        Self {
            lo: out.lo.max(-1.0),
            hi: out.hi.min(1.0),
        }
    }
}

/// Does `[a, b]` contain `c + 2k pi` for some integer k? A small slack makes
/// the test err on the side of containment, which only widens results.
fn contains_periodic(a: f64, b: f64, c: f64) -> bool {
    const SLACK: f64 = 1e-9;
    let k = ((a - c) / TWO_PI).ceil();
    c + k * TWO_PI <= b + SLACK || c + (k - 1.0) * TWO_PI >= a - SLACK && c + (k - 1.0) * TWO_PI <= b + SLACK
}
