use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::{Error, Result};
use crate::stats::{evaluate, Kind, Sample, Variant};

use super::inference::{p_value, Sided};
use super::seed::derive_seed;
use super::table::{simulate_null, NullTable};

// Stream tags separating the null table from the power trials.
const TABLE_STREAM: u64 = 0x7AB1E;
const TRIAL_STREAM: u64 = 0x7E57;

/// Settings shared by every point of a power curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub family: Family,
    pub kind: Kind,
    pub k: usize,
    pub variant: Variant,
    pub n: usize,
    pub trials: usize,
    pub alpha: f64,
    pub sided: Sided,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerPoint {
    pub theta: f64,
    pub rejection_rate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / trials)`.
    pub std_error: f64,
    pub trials: usize,
}

impl PowerSpec {
    /// Null table for these settings, seeded from the master seed on its own
    /// stream.
    pub fn null_table(&self, reps: usize) -> Result<NullTable> {
        simulate_null(
            self.kind,
            self.k,
            self.variant,
            self.n,
            reps,
            derive_seed(self.master_seed, TABLE_STREAM),
        )
    }
}

/// Empirical rejection rate under location shifts `thetas` of
/// `spec.family`. Trial `i` at the `j`-th shift uses seed
/// `derive_seed(derive_seed(master, TRIAL_STREAM + j), i)`.
pub fn power_curve(spec: &PowerSpec, thetas: &[f64], table: &NullTable) -> Result<Vec<PowerPoint>> {
    if spec.trials == 0 {
        return Err(Error::InvalidArgument("power needs at least one trial".into()));
    }
    if !(spec.alpha > 0.0 && spec.alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {}",
            spec.alpha
        )));
    }

    thetas
        .iter()
        .enumerate()
        .map(|(j, &theta)| {
            let stream = derive_seed(spec.master_seed, TRIAL_STREAM + j as u64);
            let rejections = (0..spec.trials as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(stream, i));
                    let values = (0..spec.n).map(|_| theta + spec.family.sample(&mut rng)).collect();
                    let stat = evaluate(&Sample::new(values)?, spec.kind, spec.k, spec.variant, true)?;
                    Ok::<u64, Error>(u64::from(p_value(table, &stat, spec.sided)? <= spec.alpha))
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let rate = rejections as f64 / spec.trials as f64;
            Ok(PowerPoint {
                theta,
                rejection_rate: rate,
                std_error: (rate * (1.0 - rate) / spec.trials as f64).sqrt(),
                trials: spec.trials,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strong_shift_is_detected() {
        let spec = PowerSpec {
            family: Family::Normal,
            kind: Kind::Kolmogorov,
            k: 2,
            variant: Variant::U,
            n: 60,
            trials: 100,
            alpha: 0.05,
            sided: Sided::Right,
            master_seed: 3,
        };
        let table = spec.null_table(500).unwrap();
        let curve = power_curve(&spec, &[0.0, 1.5], &table).unwrap();
        assert!(curve[1].rejection_rate > 0.9, "{curve:?}");
        assert!(curve[0].rejection_rate < 0.2);
    }

    #[test]
    fn reproducible_for_fixed_seed() {
        let spec = PowerSpec {
            family: Family::Logistic,
            kind: Kind::Integral,
            k: 2,
            variant: Variant::U,
            n: 30,
            trials: 50,
            alpha: 0.1,
            sided: Sided::Two,
            master_seed: 8,
        };
        let table = spec.null_table(200).unwrap();
        let a = power_curve(&spec, &[0.2, 0.4], &table).unwrap();
        let b = power_curve(&spec, &[0.2, 0.4], &table).unwrap();
        assert_eq!(a, b);
    }
}
