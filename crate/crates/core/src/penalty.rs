// SPDX-License-Identifier: MIT OR Apache-2.0

//! Penalty families and the pruning constants derived from them.
//!
//! A segmentation with segments of lengths `l_1..l_k` is charged
//! `sum_j (alpha - beta * g(l_j))`. The BIC family uses `g = 0`; the multiscale
//! family uses `g = ln` with `alpha = gamma + beta * ln(n)`, so each segment
//! costs `gamma + beta * ln(n / l_j)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PenaltyKind {
    Bic,
    Multiscale,
}

impl PenaltyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PenaltyKind::Bic => "bic",
            PenaltyKind::Multiscale => "multiscale",
        }
    }
}

/// Segment-length function `g`. Both variants are concave and satisfy the
/// requirement that `g(t - s2) - g(t - s)` is non-decreasing in `t` with limit 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LengthFn {
    Zero,
    Log,
}

impl LengthFn {
    fn is_concave(self) -> bool {
        matches!(self, LengthFn::Zero | LengthFn::Log)
    }
}

/// A penalty bound to a series length `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltyModel<T> {
    kind: PenaltyKind,
    beta: T,
    gamma: T,
    alpha: T,
    n: usize,
}

impl<T: Scalar> PenaltyModel<T> {
    /// Multiscale penalty `gamma + beta * ln(n / len)` per segment.
    pub fn multiscale(n: usize, beta: T, gamma: T) -> Result<Self> {
        if n == 0 {
            return domain("series length must be positive");
        }
        if !(beta.is_finite() && beta > T::zero()) {
            return domain(format!("multiscale penalty requires beta > 0, got {beta}"));
        }
        if !(gamma.is_finite() && gamma > T::zero()) {
            return domain(format!("multiscale penalty requires gamma > 0, got {gamma}"));
        }
        let alpha = gamma + beta * T::from_usize_exact(n).ln();
        Ok(Self {
            kind: PenaltyKind::Multiscale,
            beta,
            gamma,
            alpha,
            n,
        })
    }

    /// Multiscale penalty parameterised by `L` and `q`: `beta = 2L`, `gamma = qL`.
    pub fn from_l_q(n: usize, l: T, q: T) -> Result<Self> {
        Self::multiscale(n, T::two() * l, q * l)
    }

    /// Constant per-segment penalty `alpha`; defaults to `2 ln(n)`.
    pub fn bic(n: usize, alpha: Option<T>) -> Result<Self> {
        if n == 0 {
            return domain("series length must be positive");
        }
        let alpha = alpha.unwrap_or_else(|| T::two() * T::from_usize_exact(n).ln());
        if !alpha.is_finite() {
            return domain(format!("bic penalty requires a finite alpha, got {alpha}"));
        }
        Ok(Self {
            kind: PenaltyKind::Bic,
            beta: T::zero(),
            gamma: T::zero(),
            alpha,
            n,
        })
    }

    /// The same penalty constants bound to a different series length.
    pub fn rebind(&self, n: usize) -> Result<Self> {
        match self.kind {
            PenaltyKind::Multiscale => Self::multiscale(n, self.beta, self.gamma),
            PenaltyKind::Bic => Self::bic(n, Some(self.alpha)),
        }
    }

    pub fn kind(&self) -> PenaltyKind {
        self.kind
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `L = beta / 2`.
    pub fn l(&self) -> T {
        self.beta / T::two()
    }

    /// `q = gamma / L`; undefined for the BIC family.
    pub fn q(&self) -> Option<T> {
        match self.kind {
            PenaltyKind::Multiscale => Some(self.gamma / self.l()),
            PenaltyKind::Bic => None,
        }
    }

    pub(crate) fn length_fn(&self) -> LengthFn {
        match self.kind {
            PenaltyKind::Bic => LengthFn::Zero,
            PenaltyKind::Multiscale => LengthFn::Log,
        }
    }

    /// `g(len)` with the convention `g(0) = 0`.
    pub(crate) fn g(&self, len: usize) -> T {
        match self.length_fn() {
            LengthFn::Zero => T::zero(),
            LengthFn::Log if len == 0 => T::zero(),
            LengthFn::Log => T::from_usize_exact(len).ln(),
        }
    }

    /// `beta * g(len)` for `len = 0..=n`, the table the solvers index into.
    pub(crate) fn weighted_length_table(&self) -> Vec<T> {
        (0..=self.n).map(|len| self.beta * self.g(len)).collect()
    }

    /// Segment-length function `g(len)` for `len >= 1`.
    pub fn g_eval(&self, len: usize) -> Result<T> {
        if len == 0 {
            return domain("segment length must be at least 1");
        }
        Ok(self.g(len))
    }

    /// `h(t, s, s2) = g(t - s2) - g(t - s)` for `s <= s2 < t`.
    pub fn h_eval(&self, t: usize, s: usize, s2: usize) -> Result<T> {
        if !(s <= s2 && s2 < t) {
            return domain(format!("h requires s <= s2 < t, got s={s}, s2={s2}, t={t}"));
        }
        Ok(self.g(t - s2) - self.g(t - s))
    }

    /// Penalty charged to one segment of length `len`: `alpha - beta * g(len)`.
    pub fn segment_penalty(&self, len: usize) -> Result<T> {
        if len == 0 || len > self.n {
            return domain(format!("segment length {len} outside 1..={}", self.n));
        }
        Ok(self.alpha - self.beta * self.g(len))
    }

    /// PELT constant for concave `g`: `2 beta g(1) - beta g(2)`.
    pub fn pelt_constant_k(&self) -> T {
        match self.length_fn() {
            LengthFn::Zero => T::zero(),
            LengthFn::Log => -self.beta * T::two().ln(),
        }
    }

    /// PELT constant valid for any bounded `g` on `1..=n`:
    /// `2 beta min g - beta max g`.
    pub fn pelt_constant_k_general(&self) -> T {
        let (lo, hi) = (1..=self.n)
            .map(|len| self.g(len))
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(v), hi.max(v)));
        T::two() * self.beta * lo - self.beta * hi
    }

    /// Length-adaptive PELT constant `beta (g(len) + g(1) - g(len + 1))`.
    pub fn pelt_adaptive_k(&self, len: usize) -> Result<T> {
        if len == 0 {
            return domain("adaptive constant requires len >= 1");
        }
        let g = self.length_fn();
        if !g.is_concave() {
            return Err(Error::UnsupportedMode(
                "adaptive pruning requires a concave length function".into(),
            ));
        }
        Ok(match g {
            LengthFn::Zero => T::zero(),
            // ln(len) - ln(len + 1) = -ln(1 + 1/len)
            LengthFn::Log => -self.beta * (T::one() / T::from_usize_exact(len)).ln_1p(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PruningMode {
    None,
    Constant,
    Adaptive,
}

/// Inequality-based pruning rule for the PELT solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruningBound {
    pub mode: PruningMode,
    /// In constant mode, use the bound valid for arbitrary `g` instead of the
    /// concave one.
    pub general_constant: bool,
}

impl PruningBound {
    pub fn none() -> Self {
        Self {
            mode: PruningMode::None,
            general_constant: false,
        }
    }

    pub fn constant() -> Self {
        Self {
            mode: PruningMode::Constant,
            general_constant: false,
        }
    }

    pub fn constant_general() -> Self {
        Self {
            mode: PruningMode::Constant,
            general_constant: true,
        }
    }

    pub fn adaptive() -> Self {
        Self {
            mode: PruningMode::Adaptive,
            general_constant: false,
        }
    }

    /// Pruning constant `K` for a segment of current length `len`, or `None`
    /// when pruning is disabled.
    pub fn k<T: Scalar>(&self, model: &PenaltyModel<T>, len: usize) -> Result<Option<T>> {
        match self.mode {
            PruningMode::None => Ok(None),
            PruningMode::Constant if self.general_constant => Ok(Some(model.pelt_constant_k_general())),
            PruningMode::Constant => Ok(Some(model.pelt_constant_k())),
            PruningMode::Adaptive => model.pelt_adaptive_k(len).map(Some),
        }
    }
}

impl Default for PruningBound {
    fn default() -> Self {
        Self::adaptive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ms() -> PenaltyModel<f64> {
        PenaltyModel::multiscale(1000, 2.25, 9.0).unwrap()
    }

    #[test]
    fn g_values() {
        let m = ms();
        assert_eq!(m.g_eval(1).unwrap(), 0.0);
        assert_abs_diff_eq!(m.g_eval(2).unwrap(), std::f64::consts::LN_2, epsilon = 1e-12);
        let bic = PenaltyModel::<f64>::bic(100, None).unwrap();
        assert_eq!(bic.g_eval(17).unwrap(), 0.0);
        assert!(m.g_eval(0).is_err());
    }

    #[test]
    fn h_values() {
        let m = ms();
        assert_abs_diff_eq!(m.h_eval(10, 2, 5).unwrap(), -0.470004, epsilon = 1e-6);
        assert_abs_diff_eq!(m.h_eval(20, 2, 5).unwrap(), -0.182322, epsilon = 1e-6);
        assert_eq!(m.h_eval(9, 4, 4).unwrap(), 0.0);
        assert!(m.h_eval(5, 3, 2).is_err());
        assert!(m.h_eval(5, 2, 5).is_err());
    }

    #[test]
    fn segment_penalty_values() {
        let m = ms();
        assert_abs_diff_eq!(m.segment_penalty(1000).unwrap(), 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            m.segment_penalty(1).unwrap(),
            9.0 + 2.25 * 1000f64.ln(),
            epsilon = 1e-12
        );
        let bic = PenaltyModel::<f64>::bic(100, None).unwrap();
        for len in [1, 7, 100] {
            assert_abs_diff_eq!(bic.segment_penalty(len).unwrap(), 9.210340, epsilon = 1e-6);
        }
        assert!(m.segment_penalty(0).is_err());
        assert!(m.segment_penalty(1001).is_err());
    }

    #[test]
    fn constants_relations() {
        let m = ms();
        assert_abs_diff_eq!(m.alpha(), 9.0 + 2.25 * 1000f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.l(), 1.125);
        assert_abs_diff_eq!(m.q().unwrap(), 8.0);
        let m2 = PenaltyModel::from_l_q(1000, 1.125, 8.0).unwrap();
        assert_eq!(m2.beta(), 2.25);
        assert_eq!(m2.gamma(), 9.0);
    }

    #[test]
    fn constructor_validation() {
        assert!(PenaltyModel::<f64>::multiscale(10, 0.0, 9.0).is_err());
        assert!(PenaltyModel::<f64>::multiscale(10, 2.25, 0.0).is_err());
        assert!(PenaltyModel::<f64>::multiscale(0, 2.25, 9.0).is_err());
        assert!(PenaltyModel::<f64>::bic(10, Some(f64::NAN)).is_err());
    }

    #[test]
    fn pelt_constants() {
        let m = ms();
        assert_abs_diff_eq!(m.pelt_constant_k(), -1.559581, epsilon = 1e-6);
        assert_eq!(PenaltyModel::<f64>::bic(50, None).unwrap().pelt_constant_k(), 0.0);
        let m100 = PenaltyModel::multiscale(100, 2.25, 9.0).unwrap();
        assert_abs_diff_eq!(m100.pelt_constant_k_general(), -2.25 * 100f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn adaptive_constant() {
        let m = ms();
        assert_abs_diff_eq!(m.pelt_adaptive_k(1).unwrap(), -1.559581, epsilon = 1e-6);
        assert_abs_diff_eq!(
            m.pelt_adaptive_k(3).unwrap(),
            -2.25 * (4f64 / 3.0).ln(),
            epsilon = 1e-12
        );
        let far = m.pelt_adaptive_k(1_000_000).unwrap();
        assert!(far < 0.0);
        assert!(far > m.pelt_adaptive_k(999_999).unwrap());
        assert_abs_diff_eq!(far, -2.25e-6, epsilon = 1e-11);
        assert!(m.pelt_adaptive_k(0).is_err());
    }

    #[test]
    fn adaptive_constant_monotone() {
        let m = ms();
        let mut prev = m.pelt_adaptive_k(1).unwrap();
        for len in 2..=10_000 {
            let k = m.pelt_adaptive_k(len).unwrap();
            assert!(k <= 0.0);
            assert!(prev <= k, "len {len}");
            prev = k;
        }
    }

    #[test]
    fn multiscale_segment_penalty_floor() {
        let m = PenaltyModel::multiscale(500, 2.25, 9.0).unwrap();
        for len in 1..500 {
            assert!(m.segment_penalty(len).unwrap() > m.gamma());
        }
        assert_abs_diff_eq!(m.segment_penalty(500).unwrap(), m.gamma(), epsilon = 1e-12);
    }

    #[test]
    fn pruning_bound_dispatch() {
        let m = ms();
        assert_eq!(PruningBound::none().k(&m, 5).unwrap(), None);
        assert_eq!(PruningBound::constant().k(&m, 5).unwrap(), Some(m.pelt_constant_k()));
        assert_eq!(
            PruningBound::adaptive().k(&m, 5).unwrap(),
            Some(m.pelt_adaptive_k(5).unwrap())
        );
        assert_eq!(
            PruningBound::constant_general().k(&m, 5).unwrap(),
            Some(m.pelt_constant_k_general())
        );
    }

    #[test]
    fn works_in_f32() {
        let m = PenaltyModel::<f32>::multiscale(1000, 2.25, 9.0).unwrap();
        assert!((m.segment_penalty(1).unwrap() - 24.54245).abs() < 1e-4);
    }
}
