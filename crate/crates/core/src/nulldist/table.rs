use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::{Error, Result};
use crate::stats::{evaluate, Kind, Sample, StatValue, Variant};

use super::seed::derive_seed;

pub const FORMAT_VERSION: u32 = 1;

/// Probability levels exported by [`NullTable::quantiles_csv`].
pub const QUANTILE_LEVELS: [f64; 5] = [0.8, 0.9, 0.95, 0.99, 0.999];

const MIN_REPS: usize = 100;

/// Simulated null distribution of one statistic at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullTable {
    pub format_version: u32,
    pub kind: Kind,
    pub k: usize,
    pub variant: Variant,
    pub n: usize,
    pub rep_count: usize,
    pub master_seed: u64,
    /// Seconds since the Unix epoch at creation.
    pub created: u64,
    /// Replicate statistic values, ascending.
    pub replicates: Vec<f64>,
}

/// Simulates `reps` replicates of the statistic on Uniform[-1, 1] samples.
pub fn simulate_null(
    kind: Kind,
    k: usize,
    variant: Variant,
    n: usize,
    reps: usize,
    master_seed: u64,
) -> Result<NullTable> {
    simulate_null_from(Family::Uniform, kind, k, variant, n, reps, master_seed)
}

/// As [`simulate_null`], drawing null samples from another symmetric family.
pub fn simulate_null_from(
    family: Family,
    kind: Kind,
    k: usize,
    variant: Variant,
    n: usize,
    reps: usize,
    master_seed: u64,
) -> Result<NullTable> {
    if reps < MIN_REPS {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_REPS} replicates are required, got {reps}"
        )));
    }
    if n < k + 1 {
        return Err(Error::InsufficientSample { n, required: k + 1 });
    }

    let mut replicates = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, r));
            let values = (0..n).map(|_| family.sample(&mut rng)).collect();
            evaluate(&Sample::new(values)?, kind, k, variant, true).map(|s| s.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    replicates.sort_by(f64::total_cmp);

    Ok(NullTable {
        format_version: FORMAT_VERSION,
        kind,
        k,
        variant,
        n,
        rep_count: reps,
        master_seed,
        created: unix_now(),
        replicates,
    })
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl NullTable {
    /// Identifier encoding everything that determines the replicates, e.g.
    /// `integral-k2-u-n200-r10000-s42`.
    pub fn id(&self) -> String {
        Self::id_for(self.kind, self.k, self.variant, self.n, self.rep_count, self.master_seed)
    }

    pub fn id_for(kind: Kind, k: usize, variant: Variant, n: usize, reps: usize, seed: u64) -> String {
        format!("{kind}-k{k}-{variant}-n{n}-r{reps}-s{seed}")
    }

    /// Whether the table calibrates statistics with this signature.
    pub fn matches(&self, stat: &StatValue) -> bool {
        self.kind == stat.kind && self.k == stat.k && self.variant == stat.variant && self.n == stat.n
    }

    pub(crate) fn ensure_matches(&self, stat: &StatValue) -> Result<()> {
        if self.matches(stat) {
            Ok(())
        } else {
            Err(Error::TableMismatch {
                table: format!("{}-k{}-{}-n{}", self.kind, self.k, self.variant, self.n),
                statistic: stat.label(),
            })
        }
    }

    /// Empirical quantile `inf{x : F_R(x) >= p}` of the replicates.
    pub fn quantile(&self, p: f64) -> f64 {
        let r = self.replicates.len();
        let rank = (p * r as f64).ceil() as usize;
        self.replicates[rank.clamp(1, r) - 1]
    }

    /// `p,quantile` rows for [`QUANTILE_LEVELS`], with a header line.
    pub fn quantiles_csv(&self) -> String {
        let mut out = String::from("p,quantile\n");
        for p in QUANTILE_LEVELS {
            out.push_str(&format!("{p},{}\n", self.quantile(p)));
        }
        out
    }

    /// Checks the structural invariants after loading from disk.
    pub fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported table format version {}",
                self.format_version
            )));
        }
        if self.replicates.len() != self.rep_count {
            return Err(Error::InvalidArgument(format!(
                "table declares {} replicates but holds {}",
                self.rep_count,
                self.replicates.len()
            )));
        }
        if self.replicates.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("table replicates are not sorted".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: NullTable = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
