// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::solver::Series;

/// Consistency factor turning a MAD into a Gaussian standard deviation.
pub const MAD_SCALE: f64 = 1.4826;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaEstimate<T> {
    pub sigma: T,
    /// Set when the estimate is zero and must not be used as a divisor.
    pub degenerate: bool,
}

fn median<T: Scalar>(mut v: Vec<T>) -> T {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / T::two()
    }
}

/// Noise level from first differences:
/// `1.4826 * median(|dy - median(dy)|) / sqrt(2)`.
pub fn estimate_sigma_mad<T: Scalar>(series: &Series<T>) -> Result<SigmaEstimate<T>> {
    if series.len() < 2 {
        return domain("variance estimation needs at least two observations");
    }
    let diffs: Vec<T> = series.values().windows(2).map(|w| w[1] - w[0]).collect();
    let center = median(diffs.clone());
    let mad = median(diffs.into_iter().map(|d| (d - center).abs()).collect());
    let sigma = T::lit(MAD_SCALE) * mad / T::two().sqrt();
    Ok(SigmaEstimate {
        sigma,
        degenerate: sigma <= T::zero(),
    })
}
