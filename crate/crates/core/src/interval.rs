use std::fmt;

use crate::error::{Error, Result};
use crate::round::{add_down, add_up, div_down, div_up, mul_down, mul_up, sub_up};

/// A closed interval of reals with finite machine endpoints, always
/// proper (`lo <= hi`). Improper intervals are never materialized;
/// formulas that would need them are rewritten into endpoint arithmetic
/// at the call site. The empty set is represented by `Option::None`
/// where it can arise (intersection), never by reversed endpoints.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Overflow);
        }
        if lo > hi {
            return Err(Error::Domain(format!(
                "reversed interval endpoints [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Internal constructor for endpoints already known to be ordered.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "raw interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    fn checked(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() {
            Ok(Self::raw(lo, hi))
        } else {
            Err(Error::Overflow)
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Midpoint, rounded to nearest; always lies inside the interval.
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            m
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Radius, rounded up far enough that [mid-rad, mid+rad] covers self.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        sub_up(m, self.lo).max(sub_up(self.hi, m))
    }

    /// Largest absolute value over the interval (exact).
    #[inline]
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval, 0 if it straddles zero
    /// (exact).
    #[inline]
    pub fn mig(&self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Set intersection; `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval::raw(lo, hi))
        } else {
            None
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn add(&self, o: &Interval) -> Result<Interval> {
        Self::checked(add_down(self.lo, o.lo), add_up(self.hi, o.hi))
    }

    pub fn sub(&self, o: &Interval) -> Result<Interval> {
        Self::checked(add_down(self.lo, -o.hi), add_up(self.hi, -o.lo))
    }

    pub fn mul(&self, o: &Interval) -> Result<Interval> {
        let (a, b) = (self.lo, self.hi);
        let (c, d) = (o.lo, o.hi);
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Self::checked(lo, hi)
    }

    /// Division; the denominator must not contain zero.
    pub fn div(&self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::Domain(format!(
                "division by interval {o} containing zero"
            )));
        }
        let (a, b) = (self.lo, self.hi);
        let (c, d) = (o.lo, o.hi);
        let lo = div_down(a, c)
            .min(div_down(a, d))
            .min(div_down(b, c))
            .min(div_down(b, d));
        let hi = div_up(a, c)
            .max(div_up(a, d))
            .max(div_up(b, c))
            .max(div_up(b, d));
        Self::checked(lo, hi)
    }
}

impl std::ops::Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
