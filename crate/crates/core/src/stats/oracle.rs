//! Literal enumeration of the kernels over all index subsets or tuples.
//! Exponential in the degree; used as a test oracle for the counting path.

use crate::error::{Error, Result};

use super::{Kind, Sample, StatValue, Variant};

/// Maximum number of enumerated subsets or tuples.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

fn enumeration_size(n: usize, degree: usize, variant: Variant) -> Option<u128> {
    match variant {
        Variant::U => super::binomial(n, degree),
        Variant::V => (n as u128).checked_pow(degree as u32),
    }
}

/// Calls `visit` with every index set of size `degree`: strictly increasing
/// subsets for U, all tuples with repetition for V.
fn for_each_index_set(n: usize, degree: usize, variant: Variant, mut visit: impl FnMut(&[usize])) {
    if degree == 0 || (variant == Variant::U && degree > n) || n == 0 {
        return;
    }
    let mut idx: Vec<usize> = match variant {
        Variant::U => (0..degree).collect(),
        Variant::V => vec![0; degree],
    };
    loop {
        visit(&idx);
        // advance to the next index set in lexicographic order
        let mut pos = degree;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let limit = match variant {
                Variant::U => n - degree + pos,
                Variant::V => n - 1,
            };
            if idx[pos] < limit {
                idx[pos] += 1;
                for q in pos + 1..degree {
                    idx[q] = match variant {
                        Variant::U => idx[q - 1] + 1,
                        Variant::V => 0,
                    };
                }
                break;
            }
        }
    }
}

fn abs_min_max(x: &[f64], members: impl Iterator<Item = usize>) -> (f64, f64) {
    let (lo, hi) = members.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
        (lo.min(x[i]), hi.max(x[i]))
    });
    (lo.abs(), hi.abs())
}

/// Evaluates the statistic by direct enumeration of its kernel.
///
/// For the integral kind the U variant sums the symmetrized kernel
/// `(k+1) Psi_{k+1}` over `(k+1)`-subsets; the V variant sums the
/// unsymmetrized kernel over all `(k+1)`-tuples. For the Kolmogorov kind the
/// `|min|` and `|max|` of every `k`-subset (tuple) are listed and the
/// empirical dfs compared at every candidate threshold.
pub fn brute_force_statistic(
    sample: &Sample,
    kind: Kind,
    k: usize,
    variant: Variant,
) -> Result<StatValue> {
    if k < 2 {
        return Err(Error::OrderOutOfRange { k, min: 2, max: super::HARD_MAX_ORDER });
    }
    let n = sample.len();
    let degree = kind.degree(k);
    let required = if variant == Variant::U { degree } else { 1 };
    if n < required {
        return Err(Error::InsufficientSample { n, required });
    }
    let size = enumeration_size(n, degree, variant).unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge { size, limit: BRUTE_FORCE_LIMIT });
    }

    let x = sample.values();
    let value = match kind {
        Kind::Integral => {
            let mut total: i64 = 0;
            let mut terms: u64 = 0;
            for_each_index_set(n, degree, variant, |set| match variant {
                Variant::U => {
                    for (pos, &j) in set.iter().enumerate() {
                        let rest = set.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &i)| i);
                        let (amin, amax) = abs_min_max(x, rest);
                        let target = x[j].abs();
                        total += i64::from(amin < target) - i64::from(amax < target);
                        terms += 1;
                    }
                }
                Variant::V => {
                    let (amin, amax) = abs_min_max(x, set[..k].iter().copied());
                    let target = x[set[k]].abs();
                    total += i64::from(amin < target) - i64::from(amax < target);
                    terms += 1;
                }
            });
            total as f64 / terms as f64
        }
        Kind::Kolmogorov => {
            let mut pairs = Vec::new();
            for_each_index_set(n, degree, variant, |set| {
                pairs.push(abs_min_max(x, set.iter().copied()));
            });
            let mut best: u64 = 0;
            let candidates = std::iter::once(0.0).chain(x.iter().map(|v| v.abs()));
            for t in candidates {
                let g_open = pairs.iter().filter(|p| p.0 < t).count() as u64;
                let h_open = pairs.iter().filter(|p| p.1 < t).count() as u64;
                let g_closed = pairs.iter().filter(|p| p.0 <= t).count() as u64;
                let h_closed = pairs.iter().filter(|p| p.1 <= t).count() as u64;
                best = best.max(g_open.abs_diff(h_open)).max(g_closed.abs_diff(h_closed));
            }
            best as f64 / pairs.len() as f64
        }
    };
    Ok(StatValue { kind, k, variant, n, value })
}
