use crate::error::{Error, Result};

use super::Sample;

/// Threshold counts at `t >= 0`.
///
/// With strict comparisons (the default, [`SortedSample::counts`]):
///
/// * `gt_neg = #{X_i > -t}`
/// * `ge_pos = #{X_i >= t}`
/// * `lt_pos = #{X_i < t}`
/// * `le_neg = #{X_i <= -t}`
///
/// so that the number of `k`-subsets with `|min| < t` is
/// `C(gt_neg, k) - C(ge_pos, k)` and with `|max| < t` is
/// `C(lt_pos, k) - C(le_neg, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceedanceCounts {
    pub gt_neg: usize,
    pub ge_pos: usize,
    pub lt_pos: usize,
    pub le_neg: usize,
}

/// A private sorted copy of a sample answering threshold counts by binary
/// search.
#[derive(Debug, Clone)]
pub struct SortedSample {
    sorted: Vec<f64>,
}

impl SortedSample {
    pub fn new(sample: &Sample) -> Self {
        let mut sorted = sample.values().to_vec();
        sorted.sort_by(f64::total_cmp);
        SortedSample { sorted }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    fn count_lt(&self, x: f64) -> usize {
        self.sorted.partition_point(|&v| v < x)
    }

    fn count_le(&self, x: f64) -> usize {
        self.sorted.partition_point(|&v| v <= x)
    }

    /// Strict-threshold counts (left limits in `t`), optionally leaving out
    /// one observation with value `excluded`.
    pub fn counts(&self, t: f64, excluded: Option<f64>) -> ExceedanceCounts {
        let n = self.sorted.len();
        let le_neg = self.count_le(-t);
        let lt_pos = self.count_lt(t);
        let mut c = ExceedanceCounts {
            gt_neg: n - le_neg,
            ge_pos: n - lt_pos,
            lt_pos,
            le_neg,
        };
        if let Some(x) = excluded {
            c.gt_neg -= usize::from(x > -t);
            c.ge_pos -= usize::from(x >= t);
            c.lt_pos -= usize::from(x < t);
            c.le_neg -= usize::from(x <= -t);
        }
        c
    }

    /// Closed-threshold counts (right limits in `t`): `#{X_i >= -t}`,
    /// `#{X_i > t}`, `#{X_i <= t}`, `#{X_i < -t}`, stored in the same slots,
    /// so the subset formulas count `|min| <= t` and `|max| <= t`.
    pub fn counts_closed(&self, t: f64, excluded: Option<f64>) -> ExceedanceCounts {
        let n = self.sorted.len();
        let lt_neg = self.count_lt(-t);
        let le_pos = self.count_le(t);
        let mut c = ExceedanceCounts {
            gt_neg: n - lt_neg,
            ge_pos: n - le_pos,
            lt_pos: le_pos,
            le_neg: lt_neg,
        };
        if let Some(x) = excluded {
            c.gt_neg -= usize::from(x >= -t);
            c.ge_pos -= usize::from(x > t);
            c.lt_pos -= usize::from(x <= t);
            c.le_neg -= usize::from(x < -t);
        }
        c
    }
}

/// Threshold counts for a single query. Sorts a copy of the sample; use
/// [`SortedSample`] directly for repeated queries.
pub fn exceedance_counts(sample: &Sample, t: f64, exclude: Option<usize>) -> ExceedanceCounts {
    assert!(t >= 0.0, "threshold must be nonnegative, got {t}");
    let sorted = SortedSample::new(sample);
    sorted.counts(t, exclude.map(|i| sample.values()[i]))
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(m: usize, k: usize) -> Option<u128> {
    if k > m {
        return Some(0);
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (m - i) is divisible by (i + 1) since acc = C(m, i)
        acc = acc.checked_mul((m - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn difference_of_binomials(hi: usize, lo: usize, k: usize) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidArgument("subset size k must be at least 1".into()));
    }
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "count {lo} exceeds {hi}; the threshold interval is empty"
        )));
    }
    let overflow = || Error::CountOverflow { n: hi, degree: k };
    let big = binomial(hi, k).ok_or_else(overflow)?;
    let small = binomial(lo, k).ok_or_else(overflow)?;
    Ok(big - small)
}

/// Number of `k`-subsets whose minimum lies in `(-t, t)`, given
/// `a = #{X_i > -t}` and `b = #{X_i >= t}`.
pub fn count_min_lt(a: usize, b: usize, k: usize) -> Result<u128> {
    difference_of_binomials(a, b, k)
}

/// Number of `k`-subsets whose maximum lies in `(-t, t)`, given
/// `c = #{X_i < t}` and `d = #{X_i <= -t}`.
pub fn count_max_lt(c: usize, d: usize, k: usize) -> Result<u128> {
    difference_of_binomials(c, d, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn counts_direct_example() {
        let c = exceedance_counts(&sample(&[-1.0, 0.5]), 0.7, None);
        assert_eq!(
            c,
            ExceedanceCounts { gt_neg: 1, ge_pos: 0, lt_pos: 2, le_neg: 1 }
        );
    }

    #[test]
    fn counts_at_zero_threshold() {
        let s = sample(&[-0.2, 0.0, 0.4, 1.0, -3.0]);
        let c = exceedance_counts(&s, 0.0, None);
        assert_eq!(c.gt_neg, 2);
        assert_eq!(c.ge_pos, 3);
    }

    #[test]
    fn counts_boundary_strictness() {
        let c = exceedance_counts(&sample(&[-0.3]), 0.3, None);
        assert_eq!(
            c,
            ExceedanceCounts { gt_neg: 0, ge_pos: 0, lt_pos: 1, le_neg: 1 }
        );
    }

    #[test]
    fn exclusion_removes_one_observation() {
        let s = sample(&[-1.0, 0.5, 0.9, -0.2]);
        let full = exceedance_counts(&s, 0.9, None);
        let without = exceedance_counts(&s, 0.9, Some(2));
        assert_eq!(without.gt_neg, full.gt_neg - 1);
        assert_eq!(without.ge_pos, full.ge_pos - 1);
        assert_eq!(without.lt_pos, full.lt_pos);
        assert_eq!(without.le_neg, full.le_neg);
    }

    #[test]
    fn closed_counts_flip_strictness() {
        let s = SortedSample::new(&sample(&[-0.3, 0.3, 0.1]));
        let c = s.counts_closed(0.3, None);
        assert_eq!(c.gt_neg, 3); // >= -0.3
        assert_eq!(c.ge_pos, 0); // > 0.3
        assert_eq!(c.lt_pos, 3); // <= 0.3
        assert_eq!(c.le_neg, 0); // < -0.3
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(1, 2), Some(0));
        assert_eq!(binomial(10_000, 7), Some(1_979_963_788_224_528_536_430_000));
        assert_eq!(binomial(1000, 500), None);
    }

    #[test]
    fn min_and_max_counts() {
        assert_eq!(count_min_lt(2, 0, 2).unwrap(), 1);
        assert_eq!(count_min_lt(4, 4, 3).unwrap(), 0);
        assert_eq!(count_max_lt(2, 0, 2).unwrap(), 1);
        assert!(count_min_lt(1, 2, 2).is_err());
        assert!(matches!(count_min_lt(2000, 0, 1000), Err(Error::CountOverflow { .. })));
    }

    #[test]
    fn min_count_matches_pair_enumeration() {
        // pairs with |min| < 0.5 among {-0.9, -0.1, 0.4}: only {-0.1, 0.4}
        let s = sample(&[-0.9, -0.1, 0.4]);
        let t = 0.5;
        let brute = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .filter(|&&(i, j)| s.values()[i].min(s.values()[j]).abs() < t)
            .count() as u128;
        assert_eq!(brute, 1);
        let c = exceedance_counts(&s, t, None);
        assert_eq!(c.gt_neg, 2);
        assert_eq!(count_min_lt(c.gt_neg, c.ge_pos, 2).unwrap(), brute);
    }
}
