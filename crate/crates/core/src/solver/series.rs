// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::cost::Interval;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Observations `y_1..y_n` with strictly positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    values: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// Unit-weight series.
    pub fn new(values: Vec<T>) -> Result<Self> {
        let weights = vec![T::one(); values.len()];
        Self::with_weights(values, weights)
    }

    pub fn with_weights(values: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return domain("series must contain at least one observation");
        }
        if values.len() != weights.len() {
            return domain(format!("{} values but {} weights", values.len(), weights.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("value at index {i} is not finite"));
        }
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > T::zero())) {
            return domain(format!("weight at index {i} is not strictly positive"));
        }
        Ok(Self { values, weights })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Multiplies every value by `factor`, keeping the weights.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        Self::with_weights(self.values.iter().map(|&v| v * factor).collect(), self.weights.clone())
    }

    /// Range of segment means: `[min y, max y]`. A constant series gets a unit
    /// window around its value so that living sets keep a positive width.
    pub fn domain(&self) -> Interval<T> {
        let (lo, hi) = self
            .values
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        if lo < hi {
            Interval { lo, hi }
        } else {
            let half = T::lit(0.5);
            Interval {
                lo: lo - half,
                hi: hi + half,
            }
        }
    }
}

/// Cumulative sums of `w`, `w y` and `w y^2`, each of length `n + 1`.
#[derive(Clone, Debug)]
pub(crate) struct PrefixSums<T> {
    pub w: Vec<T>,
    pub wy: Vec<T>,
    pub wyy: Vec<T>,
}

impl<T: Scalar> PrefixSums<T> {
    pub fn new(series: &Series<T>) -> Self {
        let n = series.len();
        let mut w = Vec::with_capacity(n + 1);
        let mut wy = Vec::with_capacity(n + 1);
        let mut wyy = Vec::with_capacity(n + 1);
        let (mut a, mut b, mut c) = (T::zero(), T::zero(), T::zero());
        w.push(a);
        wy.push(b);
        wyy.push(c);
        for (&y, &wt) in series.values().iter().zip(series.weights()) {
            a = a + wt;
            b = b + wt * y;
            c = c + wt * y * y;
            w.push(a);
            wy.push(b);
            wyy.push(c);
        }
        Self { w, wy, wyy }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Series::<f64>::new(vec![]).is_err());
        assert!(Series::new(vec![1.0, f64::NAN]).is_err());
        assert!(Series::with_weights(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(Series::with_weights(vec![1.0, 2.0], vec![1.0, 0.0]).is_err());
        let s = Series::with_weights(vec![1.0, 2.0], vec![1.0, 0.5]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.weights(), &[1.0, 0.5]);
    }

    #[test]
    fn domain_bounds() {
        let s = Series::new(vec![3.0, -1.0, 2.0]).unwrap();
        assert_eq!(s.domain(), Interval { lo: -1.0, hi: 3.0 });
        let c = Series::new(vec![4.0, 4.0]).unwrap();
        assert_eq!(c.domain(), Interval { lo: 3.5, hi: 4.5 });
    }

    #[test]
    fn prefix_sums() {
        let s = Series::with_weights(vec![1.0, 2.0], vec![1.0, 2.0]).unwrap();
        let p = PrefixSums::new(&s);
        assert_eq!(p.w, vec![0.0, 1.0, 3.0]);
        assert_eq!(p.wy, vec![0.0, 1.0, 5.0]);
        assert_eq!(p.wyy, vec![0.0, 1.0, 9.0]);
    }
}
