// SPDX-License-Identifier: MIT OR Apache-2.0

use std::ops::{Add, Sub};

use super::interval::{Interval, IntervalSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a2 * mu^2 + a1 * mu + a0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadraticPoly<T> {
    pub a2: T,
    pub a1: T,
    pub a0: T,
}

impl<T: Scalar> QuadraticPoly<T> {
    pub fn new(a2: T, a1: T, a0: T) -> Self {
        Self { a2, a1, a0 }
    }

    pub fn constant(c: T) -> Self {
        Self::new(T::zero(), T::zero(), c)
    }

    pub fn eval(&self, mu: T) -> T {
        (self.a2 * mu + self.a1) * mu + self.a0
    }

    /// Adds `w * (y - mu)^2`.
    pub fn add_observation(&mut self, y: T, w: T) {
        let wy = w * y;
        self.a2 = self.a2 + w;
        self.a1 = self.a1 - T::two() * wy;
        self.a0 = self.a0 + wy * y;
    }

    fn require_convex(&self) -> Result<()> {
        if self.a2 > T::zero() {
            Ok(())
        } else {
            Err(Error::DegenerateQuadratic(self.a2.to_string()))
        }
    }

    /// Unconstrained minimiser `-a1 / (2 a2)`.
    pub fn vertex(&self) -> Result<T> {
        self.require_convex()?;
        Ok(-self.a1 / (T::two() * self.a2))
    }

    /// Minimum value and argmin over `z`, or `None` when `z` has no intervals.
    pub fn min_on(&self, z: &IntervalSet<T>) -> Result<Option<(T, T)>> {
        let v = self.vertex()?;
        if z.is_empty() {
            return Ok(None);
        }
        if z.contains(v) {
            return Ok(Some((self.eval(v), v)));
        }
        // the vertex lies in a gap or outside: the best point is the endpoint
        // closest to it on either side
        let idx = z.intervals().partition_point(|iv| iv.hi < v);
        let left = idx.checked_sub(1).map(|k| z.intervals()[k].hi);
        let right = z.intervals().get(idx).map(|iv| iv.lo);
        let best =
            [left, right]
                .into_iter()
                .flatten()
                .map(|mu| (self.eval(mu), mu))
                .fold(None, |acc: Option<(T, T)>, cur| match acc {
                    Some(a) if a.0 <= cur.0 => Some(a),
                    _ => Some(cur),
                });
        Ok(best)
    }

    /// `{mu in domain : self(mu) <= 0}` for a quadratic with `a2 > 0`, or a
    /// constant one. Roots come from the sign-aware quadratic formula; a
    /// negative discriminant gives the empty set.
    pub fn nonpositive_on(&self, domain: &Interval<T>) -> Result<Option<Interval<T>>> {
        if self.a2 == T::zero() {
            if self.a1 != T::zero() {
                return Err(Error::DegenerateComparison(format!(
                    "linear difference {} mu + {}",
                    self.a1, self.a0
                )));
            }
            return Ok((self.a0 <= T::zero()).then_some(*domain));
        }
        if self.a2 < T::zero() {
            return Err(Error::DegenerateComparison(format!(
                "difference has negative leading coefficient {}",
                self.a2
            )));
        }
        let (a, b, c) = (self.a2, self.a1, self.a0);
        let disc = b * b - T::lit(4.0) * a * c;
        if disc < T::zero() {
            return Ok(None);
        }
        let sq = disc.sqrt();
        let q = if b >= T::zero() {
            -(b + sq) / T::two()
        } else {
            -(b - sq) / T::two()
        };
        let (r1, r2) = if q == T::zero() {
            // b = 0 and disc = 0, hence c = 0: double root at the origin
            (T::zero(), T::zero())
        } else {
            (q / a, c / q)
        };
        let iv = Interval {
            lo: r1.min(r2),
            hi: r1.max(r2),
        };
        Ok(iv.intersect(domain))
    }
}

impl<T: Scalar> Sub for QuadraticPoly<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a2 - rhs.a2, self.a1 - rhs.a1, self.a0 - rhs.a0)
    }
}

impl<T: Scalar> Add<T> for QuadraticPoly<T> {
    type Output = Self;

    fn add(self, rhs: T) -> Self {
        Self::new(self.a2, self.a1, self.a0 + rhs)
    }
}
