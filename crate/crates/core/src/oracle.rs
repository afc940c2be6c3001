// SPDX-License-Identifier: MIT OR Apache-2.0

//! Slow reference computations used to check the solvers.
//!
//! Nothing here shares code with the solvers beyond the input types: the
//! enumeration and the grid evaluation keep their own cumulative sums.

use crate::error::{Error, Result};
use crate::penalty::{PenaltyKind, PenaltyModel};
use crate::scalar::Scalar;
use crate::solver::{Segmentation, Series};

pub const BRUTE_FORCE_MAX_N: usize = 20;
pub const GRID_MAX_N: usize = 200;
pub const DEFAULT_GRID_COUNT: usize = 1024;

struct Sums<T> {
    w: Vec<T>,
    wy: Vec<T>,
    wyy: Vec<T>,
}

impl<T: Scalar> Sums<T> {
    fn new(series: &Series<T>) -> Self {
        let mut s = Sums {
            w: vec![T::zero()],
            wy: vec![T::zero()],
            wyy: vec![T::zero()],
        };
        for (&y, &w) in series.values().iter().zip(series.weights()) {
            s.w.push(*s.w.last().unwrap() + w);
            s.wy.push(*s.wy.last().unwrap() + w * y);
            s.wyy.push(*s.wyy.last().unwrap() + w * y * y);
        }
        s
    }

    /// Weight, weighted sum and weighted sum of squares over positions `a..b`.
    fn range(&self, a: usize, b: usize) -> (T, T, T) {
        (
            self.w[b] - self.w[a],
            self.wy[b] - self.wy[a],
            self.wyy[b] - self.wyy[a],
        )
    }

    fn sse(&self, a: usize, b: usize) -> T {
        let (w, wy, wyy) = self.range(a, b);
        wyy - wy * wy / w
    }
}

fn length_reward<T: Scalar>(model: &PenaltyModel<T>, len: usize) -> T {
    match model.kind() {
        PenaltyKind::Bic => T::zero(),
        PenaltyKind::Multiscale if len == 0 => T::zero(),
        PenaltyKind::Multiscale => model.beta() * T::from_usize_exact(len).ln(),
    }
}

/// Exhaustive search over all `2^(n-1)` segmentations. Ties go to fewer
/// changes, then to the lexicographically smallest changepoint vector.
pub fn brute_force_segment<T: Scalar>(series: &Series<T>, model: &PenaltyModel<T>) -> Result<Segmentation<T>> {
    let n = series.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::SizeGuard {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    if model.n() != n {
        return Err(Error::Domain(format!(
            "penalty bound to n = {} but series has {n} points",
            model.n()
        )));
    }
    let sums = Sums::new(series);
    let alpha = model.alpha();
    let segment_cost = |a: usize, b: usize| sums.sse(a, b) + alpha - length_reward(model, b - a);

    let mut best: Option<(T, Vec<usize>)> = None;
    let mut cps = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << (n - 1)) {
        cps.clear();
        cps.extend((1..n).filter(|&tau| mask & (1 << (tau - 1)) != 0));
        let mut start = 0;
        let mut total = T::zero();
        for &end in cps.iter().chain(std::iter::once(&n)) {
            total = total + segment_cost(start, end);
            start = end;
        }
        let better = match &best {
            None => true,
            Some((b, bc)) => total < *b || (total == *b && (cps.len(), &cps) < (bc.len(), bc)),
        };
        if better {
            best = Some((total, cps.clone()));
        }
    }
    let (objective, changepoints) = best.expect("at least one segmentation");
    let mut start = 0;
    let means = changepoints
        .iter()
        .chain(std::iter::once(&n))
        .map(|&end| {
            let (w, wy, _) = sums.range(start, end);
            start = end;
            wy / w
        })
        .collect();
    Ok(Segmentation {
        changepoints,
        means,
        objective,
    })
}

/// Exact living sets sampled on a uniform grid of means.
#[derive(Clone, Debug)]
pub struct GridAtlas<T> {
    pub grid: Vec<T>,
    /// `membership[t][s][k]`: candidate `s` attains the pointwise minimum of
    /// all candidate costs at time `t` at grid point `k`.
    membership: Vec<Vec<Vec<bool>>>,
}

impl<T: Scalar> GridAtlas<T> {
    /// Largest time index covered (the series length).
    pub fn last_t(&self) -> usize {
        self.membership.len() - 1
    }

    pub fn membership(&self, t: usize, s: usize) -> Option<&[bool]> {
        self.membership.get(t)?.get(s).map(Vec::as_slice)
    }

    /// Grid values at which candidate `s` is a pointwise minimiser at time `t`.
    pub fn members(&self, t: usize, s: usize) -> impl Iterator<Item = T> + '_ {
        self.membership(t, s)
            .unwrap_or(&[])
            .iter()
            .zip(&self.grid)
            .filter_map(|(&m, &mu)| m.then_some(mu))
    }
}

/// Evaluates every unpruned candidate cost at every grid point for every
/// time `0..=n` and marks the pointwise minimisers (all of them on ties).
pub fn grid_living_sets<T: Scalar>(
    series: &Series<T>,
    model: &PenaltyModel<T>,
    grid_count: usize,
) -> Result<GridAtlas<T>> {
    let n = series.len();
    if n > GRID_MAX_N {
        return Err(Error::SizeGuard { n, limit: GRID_MAX_N });
    }
    if grid_count < 10 {
        return Err(Error::Domain(format!(
            "grid needs at least 10 points, got {grid_count}"
        )));
    }
    if model.n() != n {
        return Err(Error::Domain(format!(
            "penalty bound to n = {} but series has {n} points",
            model.n()
        )));
    }
    let d = series.domain();
    let step = (d.hi - d.lo) / T::from_usize_exact(grid_count - 1);
    let grid: Vec<T> = (0..grid_count)
        .map(|k| {
            if k + 1 == grid_count {
                d.hi
            } else {
                d.lo + step * T::from_usize_exact(k)
            }
        })
        .collect();

    let sums = Sums::new(series);
    let alpha = model.alpha();
    let mut f = vec![-alpha];
    let mut membership = Vec::with_capacity(n + 1);
    let mut values: Vec<T> = Vec::with_capacity(n + 1);
    for t in 0..=n {
        if t > 0 {
            let f_t = (0..t)
                .map(|s| f[s] + alpha + sums.sse(s, t) - length_reward(model, t - s))
                .fold(T::infinity(), T::min);
            f.push(f_t);
        }
        // cost of candidate s at mean mu: F_s + alpha + sum w (y - mu)^2 - beta g(t - s)
        let coeffs: Vec<(T, T, T)> = (0..=t)
            .map(|s| {
                let (w, wy, wyy) = sums.range(s, t);
                (w, -T::two() * wy, f[s] + alpha + wyy - length_reward(model, t - s))
            })
            .collect();
        let mut rows = vec![vec![false; grid_count]; t + 1];
        for (k, &mu) in grid.iter().enumerate() {
            values.clear();
            values.extend(coeffs.iter().map(|&(a2, a1, a0)| a2 * mu * mu + a1 * mu + a0));
            let lowest = values.iter().copied().fold(T::infinity(), T::min);
            for (s, &v) in values.iter().enumerate() {
                if v == lowest {
                    rows[s][k] = true;
                }
            }
        }
        membership.push(rows);
    }
    Ok(GridAtlas { grid, membership })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ms(n: usize) -> PenaltyModel<f64> {
        PenaltyModel::multiscale(n, 2.25, 9.0).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let s = Series::new(vec![0.0, 0.0, 10.0, 10.0]).unwrap();
        let seg = brute_force_segment(&s, &ms(4)).unwrap();
        assert_eq!(seg.changepoints, vec![2]);
        assert_abs_diff_eq!(seg.objective, 18.0 + 4.5 * 2f64.ln(), epsilon = 1e-12);
        assert_eq!(seg.means, vec![0.0, 10.0]);

        let c = Series::new(vec![2.5; 7]).unwrap();
        assert!(brute_force_segment(&c, &ms(7)).unwrap().changepoints.is_empty());
        assert_abs_diff_eq!(brute_force_segment(&c, &ms(7)).unwrap().objective, 9.0, epsilon = 1e-12);
        let bic = PenaltyModel::bic(7, None).unwrap();
        assert_abs_diff_eq!(
            brute_force_segment(&c, &bic).unwrap().objective,
            bic.alpha(),
            epsilon = 1e-12
        );

        let one = Series::new(vec![4.0]).unwrap();
        let seg = brute_force_segment(&one, &ms(1)).unwrap();
        assert!(seg.changepoints.is_empty());
        assert_abs_diff_eq!(seg.objective, ms(1).segment_penalty(1).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn brute_force_guard() {
        let s = Series::new(vec![0.0; 21]).unwrap();
        assert_eq!(
            brute_force_segment(&s, &ms(21)).unwrap_err(),
            Error::SizeGuard { n: 21, limit: 20 }
        );
    }

    #[test]
    fn grid_single_point_covers_all() {
        let s = Series::new(vec![1.5]).unwrap();
        let atlas = grid_living_sets(&s, &ms(1), 64).unwrap();
        assert_eq!(atlas.last_t(), 1);
        assert!(atlas.membership(0, 0).unwrap().iter().all(|&m| m));
        assert!(atlas.membership(1, 0).unwrap().iter().all(|&m| m));
        assert!(atlas.membership(1, 1).unwrap().iter().all(|&m| !m));
    }

    #[test]
    fn grid_guards() {
        let s = Series::new(vec![0.0; 201]).unwrap();
        assert!(grid_living_sets(&s, &ms(201), 64).is_err());
        let s = Series::new(vec![0.0, 1.0]).unwrap();
        assert!(grid_living_sets(&s, &ms(2), 9).is_err());
    }

    #[test]
    fn grid_is_a_cover() {
        let y: Vec<f64> = (0..25).map(|i| ((i * 7919) % 13) as f64 / 4.0).collect();
        let s = Series::new(y).unwrap();
        let atlas = grid_living_sets(&s, &ms(25), 128).unwrap();
        for t in 0..=atlas.last_t() {
            for k in 0..atlas.grid.len() {
                assert!((0..=t).any(|s| atlas.membership(t, s).unwrap()[k]));
            }
        }
    }
}
