// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{domain, Error, Result};
use crate::penalty::PenaltyModel;
use crate::scalar::Scalar;

use super::series::Series;

/// Optimal changepoints, the fitted mean of each segment and the penalized
/// objective. Changepoint `tau` is the last index (1-based) of a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct Segmentation<T> {
    pub changepoints: Vec<usize>,
    pub means: Vec<T>,
    pub objective: T,
}

impl<T: Scalar> Segmentation<T> {
    /// Fits segment means for `changepoints` and evaluates the criterion.
    pub fn from_changepoints(series: &Series<T>, model: &PenaltyModel<T>, changepoints: Vec<usize>) -> Result<Self> {
        let objective = evaluate_criterion(series, model, &changepoints)?;
        let means = segment_means(series, &changepoints)?;
        Ok(Self {
            changepoints,
            means,
            objective,
        })
    }

    pub fn n_changes(&self) -> usize {
        self.changepoints.len()
    }

    /// Segment index of every position `0..n`.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        segment_labels(&self.changepoints, n)
    }

    /// Piecewise-constant fit: the segment mean at every position.
    pub fn fitted(&self, n: usize) -> Vec<T> {
        self.labels(n).into_iter().map(|k| self.means[k]).collect()
    }
}

pub(crate) fn segment_labels(changepoints: &[usize], n: usize) -> Vec<usize> {
    let mut labels = Vec::with_capacity(n);
    let mut start = 0;
    for (k, end) in changepoints.iter().copied().chain([n]).enumerate() {
        labels.extend(std::iter::repeat_n(k, end.saturating_sub(start)));
        start = end;
    }
    labels
}

fn check_changepoints(changepoints: &[usize], n: usize) -> Result<()> {
    let mut prev = 0;
    for &tau in changepoints {
        if tau <= prev || tau >= n {
            return domain(format!(
                "changepoints must be strictly increasing within 1..{n}, got {changepoints:?}"
            ));
        }
        prev = tau;
    }
    Ok(())
}

/// `(start, end)` half-open bounds of each segment.
fn segments(changepoints: &[usize], n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    std::iter::once(0)
        .chain(changepoints.iter().copied())
        .zip(changepoints.iter().copied().chain([n]))
}

fn weighted_mean<T: Scalar>(y: &[T], w: &[T]) -> T {
    let (sw, swy) = y
        .iter()
        .zip(w)
        .fold((T::zero(), T::zero()), |(a, b), (&y, &w)| (a + w, b + w * y));
    swy / sw
}

pub(crate) fn segment_means<T: Scalar>(series: &Series<T>, changepoints: &[usize]) -> Result<Vec<T>> {
    let n = series.len();
    check_changepoints(changepoints, n)?;
    let (y, w) = (series.values(), series.weights());
    Ok(segments(changepoints, n)
        .map(|(a, b)| weighted_mean(&y[a..b], &w[a..b]))
        .collect())
}

/// Penalized least-squares criterion of a segmentation:
/// `sum over segments of (weighted SSE - beta g(len) + alpha)`.
pub fn evaluate_criterion<T: Scalar>(series: &Series<T>, model: &PenaltyModel<T>, changepoints: &[usize]) -> Result<T> {
    let n = series.len();
    if model.n() != n {
        return domain(format!("penalty bound to n = {} but series has {n}", model.n()));
    }
    check_changepoints(changepoints, n)?;
    let (y, w) = (series.values(), series.weights());
    segments(changepoints, n).try_fold(T::zero(), |acc, (a, b)| {
        let m = weighted_mean(&y[a..b], &w[a..b]);
        let sse = y[a..b]
            .iter()
            .zip(&w[a..b])
            .fold(T::zero(), |s, (&y, &w)| s + w * (y - m) * (y - m));
        Ok(acc + sse + model.segment_penalty(b - a)?)
    })
}

/// Follows best-last-change pointers from `n` back to 0. `cp[t]` is the last
/// change of the optimal segmentation of `1..t`; the result excludes 0 and `n`.
pub fn backtrack(cp: &[usize], n: usize) -> Result<Vec<usize>> {
    if cp.len() <= n {
        return Err(Error::CorruptedState(format!(
            "pointer array of length {} cannot describe n = {n}",
            cp.len()
        )));
    }
    let mut out = Vec::new();
    let mut t = n;
    while t > 0 {
        let s = cp[t];
        if s >= t {
            return Err(Error::CorruptedState(format!("cp[{t}] = {s} does not point backwards")));
        }
        if s > 0 {
            out.push(s);
        }
        t = s;
    }
    out.reverse();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn backtrack_examples() {
        assert_eq!(backtrack(&[0, 0, 0, 0, 2], 4).unwrap(), vec![2]);
        assert_eq!(backtrack(&[0, 0, 0, 0], 3).unwrap(), Vec::<usize>::new());
        assert_eq!(backtrack(&[0, 0, 0, 2, 2, 2, 5], 6).unwrap(), vec![2, 5]);
        assert!(backtrack(&[0, 0, 2], 2).is_err());
        assert!(backtrack(&[0, 0], 4).is_err());
    }

    #[test]
    fn criterion_values() {
        let s = Series::new(vec![0.0, 0.0, 10.0, 10.0]).unwrap();
        let m = PenaltyModel::multiscale(4, 2.25, 9.0).unwrap();
        assert_abs_diff_eq!(evaluate_criterion(&s, &m, &[2]).unwrap(), 21.119162, epsilon = 1e-6);
        // single segment: SSE 100 plus gamma
        assert_abs_diff_eq!(evaluate_criterion(&s, &m, &[]).unwrap(), 109.0, epsilon = 1e-12);
        assert!(evaluate_criterion(&s, &m, &[0]).is_err());
        assert!(evaluate_criterion(&s, &m, &[2, 2]).is_err());
        assert!(evaluate_criterion(&s, &m, &[4]).is_err());
    }

    #[test]
    fn weighted_means_and_labels() {
        let s = Series::with_weights(vec![1.0, 3.0, 5.0], vec![3.0, 1.0, 1.0]).unwrap();
        let m = PenaltyModel::bic(3, None).unwrap();
        let seg = Segmentation::from_changepoints(&s, &m, vec![2]).unwrap();
        assert_eq!(seg.means, vec![1.5, 5.0]);
        assert_eq!(seg.labels(3), vec![0, 0, 1]);
        assert_eq!(seg.fitted(3), vec![1.5, 1.5, 5.0]);
        // weighted SSE of the first segment: 3 * 0.25 + 1 * 2.25
        assert_abs_diff_eq!(seg.objective, 3.0 + 2.0 * m.alpha(), epsilon = 1e-12);
    }
}
