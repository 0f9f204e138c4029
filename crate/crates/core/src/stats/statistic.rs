use crate::error::{Error, Result};

use super::counting::{binomial, ExceedanceCounts, SortedSample};
use super::{Kind, Sample, StatValue, Variant};

/// Largest characterization order accepted without opting in.
pub const DEFAULT_MAX_ORDER: usize = 6;
/// Absolute ceiling on the order; counts beyond this overflow for any
/// realistic `n`.
pub const HARD_MAX_ORDER: usize = 32;

/// `terms[m]` is the number of size-`degree` index sets drawn from `m`
/// eligible observations: `C(m, degree)` for U, `m^degree` for V.
struct SubsetCounts {
    terms: Vec<u128>,
}

impl SubsetCounts {
    fn new(n: usize, degree: usize, variant: Variant) -> Result<Self> {
        let overflow = || Error::CountOverflow { n, degree };
        let terms = (0..=n)
            .map(|m| match variant {
                Variant::U => binomial(m, degree),
                Variant::V => (m as u128).checked_pow(degree as u32),
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(overflow)?;
        Ok(SubsetCounts { terms })
    }

    /// `(#{|min| in window}, #{|max| in window})` for the given counts.
    fn min_max(&self, c: &ExceedanceCounts) -> (u128, u128) {
        let t = &self.terms;
        (t[c.gt_neg] - t[c.ge_pos], t[c.lt_pos] - t[c.le_neg])
    }
}

fn check_order(k: usize, allow_high_order: bool) -> Result<()> {
    let max = if allow_high_order { HARD_MAX_ORDER } else { DEFAULT_MAX_ORDER };
    if (2..=max).contains(&k) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { k, min: 2, max })
    }
}

fn check_size(n: usize, kind: Kind, k: usize, variant: Variant) -> Result<()> {
    let required = match variant {
        Variant::U => kind.degree(k),
        Variant::V => 1,
    };
    if n < required {
        Err(Error::InsufficientSample { n, required })
    } else {
        Ok(())
    }
}

/// Evaluates a statistic of any kind. `allow_high_order` lifts the order cap
/// from [`DEFAULT_MAX_ORDER`] to [`HARD_MAX_ORDER`].
pub fn evaluate(
    sample: &Sample,
    kind: Kind,
    k: usize,
    variant: Variant,
    allow_high_order: bool,
) -> Result<StatValue> {
    check_order(k, allow_high_order)?;
    check_size(sample.len(), kind, k, variant)?;
    let value = match kind {
        Kind::Integral => integral_value(sample, k, variant)?,
        Kind::Kolmogorov => kolmogorov_value(sample, k, variant)?,
    };
    Ok(StatValue { kind, k, variant, n: sample.len(), value })
}

/// The integral statistic `I_n^(k+1)` (U) or its V-statistic form `J_n`.
pub fn compute_i(sample: &Sample, k: usize, variant: Variant) -> Result<StatValue> {
    evaluate(sample, Kind::Integral, k, variant, false)
}

/// The Kolmogorov-type statistic `D_n^(k)`.
pub fn compute_d(sample: &Sample, k: usize, variant: Variant) -> Result<StatValue> {
    evaluate(sample, Kind::Kolmogorov, k, variant, false)
}

// Each (k+1)-subset contributes (k+1) * Psi = sum over its members j of
// [|min(rest)| < |X_j|] - [|max(rest)| < |X_j|]; regrouping by j gives one
// threshold query per observation, with j itself excluded in the U case.
fn integral_value(sample: &Sample, k: usize, variant: Variant) -> Result<f64> {
    let n = sample.len();
    let sorted = SortedSample::new(sample);
    let counts = SubsetCounts::new(n, k, variant)?;
    let overflow = || Error::CountOverflow { n, degree: k + 1 };

    let denominator = match variant {
        Variant::U => binomial(n.saturating_sub(1), k).and_then(|c| c.checked_mul(n as u128)),
        Variant::V => (n as u128).checked_pow(k as u32 + 1),
    }
    .filter(|&d| d <= i128::MAX as u128)
    .ok_or_else(overflow)?;

    let mut total: i128 = 0;
    for &x in sample.values() {
        let t = x.abs();
        if t == 0.0 {
            // |min| < 0 never holds
            continue;
        }
        let excluded = match variant {
            Variant::U => Some(x),
            Variant::V => None,
        };
        let (min_lt, max_lt) = counts.min_max(&sorted.counts(t, excluded));
        // both counts are bounded by the denominator, which fits in i128
        total += min_lt as i128 - max_lt as i128;
    }
    Ok(total as f64 / denominator as f64)
}

// G_n - H_n is a step function of t that only moves at the |X_i|, so the sup
// is attained at a left or right limit at one of them.
fn kolmogorov_value(sample: &Sample, k: usize, variant: Variant) -> Result<f64> {
    let n = sample.len();
    let sorted = SortedSample::new(sample);
    let counts = SubsetCounts::new(n, k, variant)?;

    let mut thresholds: Vec<f64> = sample.values().iter().map(|x| x.abs()).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let mut best: u128 = 0;
    for &t in thresholds.iter().filter(|&&t| t > 0.0) {
        for c in [sorted.counts(t, None), sorted.counts_closed(t, None)] {
            let (g, h) = counts.min_max(&c);
            best = best.max(g.abs_diff(h));
        }
    }
    Ok(best as f64 / counts.terms[n] as f64)
}
