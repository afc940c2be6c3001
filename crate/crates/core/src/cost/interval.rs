// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;

use crate::scalar::Scalar;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    /// Returns `None` when `lo > hi` or either bound is NaN.
    pub fn new(lo: T, hi: T) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, mu: T) -> bool {
        self.lo <= mu && mu <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RestrictMode {
    Intersect,
    Subtract,
}

/// Sorted list of pairwise disjoint closed intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet<T> {
    intervals: Vec<Interval<T>>,
}

impl<T> Default for IntervalSet<T> {
    fn default() -> Self {
        Self { intervals: Vec::new() }
    }
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_interval(iv: Interval<T>) -> Self {
        Self { intervals: vec![iv] }
    }

    /// Builds a set from arbitrary intervals, sorting and merging overlaps.
    pub fn from_intervals(items: impl IntoIterator<Item = Interval<T>>) -> Self {
        let mut items: Vec<_> = items.into_iter().collect();
        items.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("interval bounds are not NaN"));
        let mut intervals: Vec<Interval<T>> = Vec::with_capacity(items.len());
        for iv in items {
            match intervals.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => intervals.push(iv),
            }
        }
        Self { intervals }
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// No intervals at all. See [`IntervalSet::is_void`] for the pruning test.
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total width of the set.
    pub fn measure(&self) -> T {
        self.intervals.iter().fold(T::zero(), |acc, iv| acc + iv.width())
    }

    /// True when the total width is zero: point intervals count as empty.
    pub fn is_void(&self) -> bool {
        self.measure() <= T::zero()
    }

    pub fn contains(&self, mu: T) -> bool {
        // intervals are sorted, so the first one ending at or after mu decides
        let idx = self.intervals.partition_point(|iv| iv.hi < mu);
        self.intervals.get(idx).is_some_and(|iv| iv.lo <= mu)
    }

    /// Like [`IntervalSet::contains`] with every interval widened by `tol`.
    pub fn contains_within(&self, mu: T, tol: T) -> bool {
        self.intervals.iter().any(|iv| iv.lo - tol <= mu && mu <= iv.hi + tol)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { intervals: out }
    }

    pub fn subtract(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for iv in &other.intervals {
            out.subtract_interval(iv);
            if out.is_empty() {
                break;
            }
        }
        out
    }

    /// In-place intersection with a single interval.
    pub fn intersect_interval(&mut self, iv: &Interval<T>) {
        self.intervals.retain_mut(|cur| match cur.intersect(iv) {
            Some(x) => {
                *cur = x;
                true
            }
            None => false,
        });
    }

    /// In-place removal of a closed interval. The remaining pieces keep their
    /// endpoints (closure of the difference); zero-width leftovers are dropped.
    pub fn subtract_interval(&mut self, iv: &Interval<T>) {
        // removing a single point does not change the closure
        if self.intervals.is_empty() || iv.lo == iv.hi {
            return;
        }
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        for cur in &self.intervals {
            if cur.hi < iv.lo || cur.lo > iv.hi {
                out.push(*cur);
                continue;
            }
            if cur.lo < iv.lo {
                out.push(Interval { lo: cur.lo, hi: iv.lo });
            }
            if iv.hi < cur.hi {
                out.push(Interval { lo: iv.hi, hi: cur.hi });
            }
        }
        self.intervals = out;
    }

    pub fn clear(&mut self) {
        self.intervals.clear();
    }
}

/// `z ∩ i` or `z \ i`.
pub fn restrict<T: Scalar>(z: &IntervalSet<T>, i: &IntervalSet<T>, mode: RestrictMode) -> IntervalSet<T> {
    match mode {
        RestrictMode::Intersect => z.intersect(i),
        RestrictMode::Subtract => z.subtract(i),
    }
}

impl<T: fmt::Display> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    fn set(items: &[(f64, f64)]) -> IntervalSet<f64> {
        IntervalSet::from_intervals(items.iter().map(|&(a, b)| iv(a, b)))
    }

    #[test]
    fn restrict_examples() {
        let z = set(&[(0.0, 5.0)]);
        assert_eq!(
            restrict(&z, &set(&[(1.0, 2.0)]), RestrictMode::Intersect),
            set(&[(1.0, 2.0)])
        );
        assert_eq!(
            restrict(&z, &set(&[(1.0, 2.0)]), RestrictMode::Subtract),
            set(&[(0.0, 1.0), (2.0, 5.0)])
        );
        assert!(restrict(&z, &set(&[(-1.0, 6.0)]), RestrictMode::Subtract).is_empty());
    }

    #[test]
    fn from_intervals_merges() {
        let s = set(&[(3.0, 4.0), (0.0, 1.0), (0.5, 2.0)]);
        assert_eq!(s.intervals(), &[iv(0.0, 2.0), iv(3.0, 4.0)]);
        assert_eq!(s.measure(), 3.0);
    }

    #[test]
    fn point_intervals_are_void() {
        let mut s = set(&[(0.0, 1.0)]);
        s.intersect_interval(&iv(1.0, 3.0));
        assert_eq!(s.len(), 1);
        assert!(!s.is_empty());
        assert!(s.is_void());
        assert!(s.contains(1.0));
    }

    #[test]
    fn subtract_touching_edge_leaves_no_sliver() {
        let mut s = set(&[(0.0, 5.0)]);
        s.subtract_interval(&iv(0.0, 2.0));
        assert_eq!(s.intervals(), &[iv(2.0, 5.0)]);
        s.subtract_interval(&iv(4.0, 5.0));
        assert_eq!(s.intervals(), &[iv(2.0, 4.0)]);
    }

    #[test]
    fn contains_and_display() {
        let s = set(&[(0.0, 1.0), (2.0, 3.0)]);
        assert!(s.contains(0.5));
        assert!(s.contains(2.0));
        assert!(!s.contains(1.5));
        assert!(!s.contains(3.5));
        assert_eq!(s.to_string(), "{[0, 1], [2, 3]}");
        assert_eq!(IntervalSet::<f64>::empty().to_string(), "{}");
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet<f64>> {
        prop::collection::vec((-10.0f64..10.0, 0.0f64..3.0), 0..5)
            .prop_map(|v| IntervalSet::from_intervals(v.into_iter().map(|(a, w)| iv(a, a + w))))
    }

    fn well_formed(s: &IntervalSet<f64>) -> bool {
        s.intervals().iter().all(|iv| iv.lo <= iv.hi) && s.intervals().windows(2).all(|w| w[0].hi < w[1].lo)
    }

    proptest! {
        #[test]
        fn restrict_is_monotone_and_well_formed(z in arb_set(), i in arb_set(), probe in -12.0f64..12.0) {
            let inter = restrict(&z, &i, RestrictMode::Intersect);
            let diff = restrict(&z, &i, RestrictMode::Subtract);
            prop_assert!(well_formed(&inter));
            prop_assert!(well_formed(&diff));
            prop_assert!(inter.measure() <= z.measure() + 1e-12);
            prop_assert!(diff.measure() <= z.measure() + 1e-12);
            if inter.contains(probe) {
                prop_assert!(z.contains(probe) && i.contains(probe));
            }
            if diff.contains(probe) {
                prop_assert!(z.contains(probe));
            }
            // pointwise semantics away from boundaries
            let on_boundary = z.intervals().iter().chain(i.intervals()).any(|iv| iv.lo == probe || iv.hi == probe);
            if !on_boundary {
                prop_assert_eq!(inter.contains(probe), z.contains(probe) && i.contains(probe));
                prop_assert_eq!(diff.contains(probe), z.contains(probe) && !i.contains(probe));
            }
            // measures add up
            prop_assert!((inter.measure() + diff.measure() - z.measure()).abs() < 1e-9);
        }
    }
}
