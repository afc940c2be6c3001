// SPDX-License-Identifier: MIT OR Apache-2.0

use super::interval::{Interval, IntervalSet};
use super::quadratic::QuadraticPoly;
use crate::error::{domain, Error, Result};
use crate::penalty::PenaltyModel;
use crate::scalar::Scalar;

/// A candidate last change `s`: its cost as a function of the last segment
/// mean, and the region of means where it may still be optimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate<T> {
    pub s: usize,
    pub quad: QuadraticPoly<T>,
    pub living: IntervalSet<T>,
    /// Number of observations absorbed since birth (`t - s`).
    pub len: usize,
}

impl<T: Scalar> Candidate<T> {
    /// Candidate born at `s` with constant cost `value` (that is `F_s + alpha`).
    pub fn fresh(s: usize, value: T, living: IntervalSet<T>) -> Self {
        Self {
            s,
            quad: QuadraticPoly::constant(value),
            living,
            len: 0,
        }
    }

    /// Absorbs observation `y` with weight `w`, including the change in the
    /// length reward `beta * (g(len) - g(len + 1))`.
    pub fn add_point(&mut self, y: T, w: T, model: &PenaltyModel<T>) -> Result<()> {
        if !(w > T::zero() && w.is_finite()) {
            return domain(format!("observation weight must be positive, got {w}"));
        }
        self.quad.add_observation(y, w);
        self.quad.a0 = self.quad.a0 + model.beta() * (model.g(self.len) - model.g(self.len + 1));
        self.len += 1;
        Ok(())
    }

    /// Unchecked update against a table of `beta * g(len)`.
    #[inline]
    pub(crate) fn push(&mut self, y: T, w: T, beta_g: &[T]) {
        self.quad.add_observation(y, w);
        self.quad.a0 = self.quad.a0 + beta_g[self.len] - beta_g[self.len + 1];
        self.len += 1;
    }

    pub(crate) fn time(&self) -> usize {
        self.s + self.len
    }
}

/// Set of means, within `domain`, on which `cs` costs no more than `cs2`
/// once `correction` is added to the difference `cs - cs2`.
pub fn compare_interval<T: Scalar>(
    cs: &Candidate<T>,
    cs2: &Candidate<T>,
    correction: T,
    domain: &Interval<T>,
) -> Result<IntervalSet<T>> {
    Ok(comparison(&cs.quad, &cs2.quad, correction, domain)?
        .map(IntervalSet::from_interval)
        .unwrap_or_default())
}

#[inline]
pub(crate) fn comparison<T: Scalar>(
    q: &QuadraticPoly<T>,
    q2: &QuadraticPoly<T>,
    correction: T,
    domain: &Interval<T>,
) -> Result<Option<Interval<T>>> {
    (*q - *q2 + correction).nonpositive_on(domain)
}

/// Set of means on which the older candidate `cs2` beats `cs` for every later
/// time: the length rewards are added back so the comparison no longer
/// depends on `t`.
pub fn limit_interval<T: Scalar>(
    cs2: &Candidate<T>,
    cs: &Candidate<T>,
    model: &PenaltyModel<T>,
    t: usize,
    domain: &Interval<T>,
) -> Result<IntervalSet<T>> {
    if cs2.s >= cs.s {
        return Err(Error::Domain(format!(
            "limit comparison needs an older candidate first, got {} and {}",
            cs2.s, cs.s
        )));
    }
    if cs2.time() != t || cs.time() != t {
        return Err(Error::Domain(format!(
            "candidates {} and {} are not synchronised at t = {t}",
            cs2.s, cs.s
        )));
    }
    let correction = model.beta() * (model.g(cs2.len) - model.g(cs.len));
    compare_interval(cs2, cs, correction, domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ms(n: usize) -> PenaltyModel<f64> {
        PenaltyModel::multiscale(n, 2.25, 9.0).unwrap()
    }

    fn cand(s: usize, quad: QuadraticPoly<f64>, len: usize) -> Candidate<f64> {
        Candidate {
            s,
            quad,
            living: IntervalSet::empty(),
            len,
        }
    }

    #[test]
    fn add_point_bic() {
        let bic = PenaltyModel::bic(10, None).unwrap();
        let mut c = cand(0, QuadraticPoly::new(2.0, -4.0, 3.0), 2);
        c.add_point(1.0, 1.0, &bic).unwrap();
        assert_eq!(c.quad, QuadraticPoly::new(3.0, -6.0, 4.0));
        assert_eq!(c.len, 3);
    }

    #[test]
    fn add_point_multiscale() {
        let mut c = cand(0, QuadraticPoly::new(1.0, -2.0, 4.0), 1);
        c.add_point(0.0, 1.0, &ms(10)).unwrap();
        assert_eq!(c.quad.a2, 2.0);
        assert_eq!(c.quad.a1, -2.0);
        assert_abs_diff_eq!(c.quad.a0, 2.440419, epsilon = 1e-6);
    }

    #[test]
    fn add_point_fresh_has_no_length_correction() {
        let mut c = Candidate::fresh(3, 5.0, IntervalSet::empty());
        c.add_point(2.0, 1.0, &ms(10)).unwrap();
        assert_eq!(c.quad, QuadraticPoly::new(1.0, -4.0, 9.0));
    }

    #[test]
    fn add_point_rejects_bad_weight() {
        let mut c = Candidate::fresh(0, 0.0, IntervalSet::empty());
        assert!(c.add_point(1.0, 0.0, &ms(10)).is_err());
        assert!(c.add_point(1.0, -1.0, &ms(10)).is_err());
        assert_eq!(c.len, 0);
    }

    #[test]
    fn compare_interval_examples() {
        let d = Interval::new(-10.0, 10.0).unwrap();
        let zero = cand(1, QuadraticPoly::default(), 0);
        let c = cand(0, QuadraticPoly::new(1.0, -2.0, 0.0), 0);
        assert_eq!(
            compare_interval(&c, &zero, 0.0, &d).unwrap(),
            IntervalSet::from_interval(Interval::new(0.0, 2.0).unwrap())
        );
        let c = cand(0, QuadraticPoly::new(1.0, 0.0, 1.0), 0);
        assert!(compare_interval(&c, &zero, 0.0, &d).unwrap().is_empty());
        let c = cand(0, QuadraticPoly::new(0.0, 1.0, 0.0), 0);
        assert!(matches!(
            compare_interval(&c, &zero, 0.0, &d),
            Err(Error::DegenerateComparison(_))
        ));
    }

    #[test]
    fn limit_interval_correction() {
        let model = ms(20);
        let d = Interval::new(-10.0, 10.0).unwrap();
        // identical quadratics: only the correction beta (g(8) - g(5)) separates them
        let q = QuadraticPoly::new(8.0, 0.0, -1.0);
        let mut q2 = q;
        q2.a2 = 5.0;
        let old = cand(2, q, 8);
        let new = cand(5, q2, 5);
        let correction = 2.25 * (8f64.ln() - 5f64.ln());
        assert_abs_diff_eq!(correction, 1.057509, epsilon = 1e-6);
        let got = limit_interval(&old, &new, &model, 10, &d).unwrap();
        let expect = compare_interval(&old, &new, correction, &d).unwrap();
        assert_eq!(got, expect);
        assert!(limit_interval(&new, &old, &model, 10, &d).is_err());
        assert!(limit_interval(&old, &new, &model, 11, &d).is_err());
    }

    #[test]
    fn limit_interval_bic_equals_current() {
        let model = PenaltyModel::bic(20, None).unwrap();
        let d = Interval::new(-10.0, 10.0).unwrap();
        let old = cand(2, QuadraticPoly::new(8.0, -3.0, -1.0), 8);
        let new = cand(5, QuadraticPoly::new(5.0, 1.0, -2.0), 5);
        assert_eq!(
            limit_interval(&old, &new, &model, 10, &d).unwrap(),
            compare_interval(&old, &new, 0.0, &d).unwrap()
        );
    }
}
