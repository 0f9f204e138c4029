use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{evaluate, Kind, Sample, StatValue, Variant};

use super::table::NullTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sided {
    /// Compare `|observed|` against `|replicates|`.
    Two,
    /// Large values are evidence against symmetry.
    Right,
}

impl fmt::Display for Sided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sided::Two => "two",
            Sided::Right => "right",
        })
    }
}

impl FromStr for Sided {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "two" => Ok(Sided::Two),
            "right" => Ok(Sided::Right),
            other => Err(Error::InvalidArgument(format!("unknown sidedness `{other}`"))),
        }
    }
}

impl Sided {
    /// Kolmogorov statistics are nonnegative and only ever right-sided.
    pub fn effective(self, kind: Kind) -> Sided {
        match kind {
            Kind::Kolmogorov => Sided::Right,
            Kind::Integral => self,
        }
    }
}

/// Monte Carlo p-value `(1 + #{replicates at least as extreme}) / (R + 1)`.
pub fn p_value(table: &NullTable, observed: &StatValue, sided: Sided) -> Result<f64> {
    table.ensure_matches(observed)?;
    let r = table.replicates.len();
    let exceed = match sided.effective(observed.kind) {
        Sided::Right => r - table.replicates.partition_point(|&v| v < observed.value),
        Sided::Two => {
            let level = observed.value.abs();
            table.replicates.iter().filter(|v| v.abs() >= level).count()
        }
    };
    Ok((1 + exceed) as f64 / (r + 1) as f64)
}

/// Outcome of one test, with enough provenance to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestDecision {
    pub statistic: StatValue,
    pub p_value: f64,
    pub alpha: f64,
    pub sided: Sided,
    pub reject: bool,
    pub table_id: String,
    pub table_master_seed: u64,
    pub table_rep_count: usize,
}

/// Computes the statistic on `sample` and tests it against `table`;
/// rejects when the p-value is at most `alpha`.
pub fn run_test(
    sample: &Sample,
    kind: Kind,
    k: usize,
    variant: Variant,
    alpha: f64,
    sided: Sided,
    table: &NullTable,
) -> Result<TestDecision> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let statistic = evaluate(sample, kind, k, variant, true)?;
    let sided = sided.effective(kind);
    let p = p_value(table, &statistic, sided)?;
    Ok(TestDecision {
        statistic,
        p_value: p,
        alpha,
        sided,
        reject: p <= alpha,
        table_id: table.id(),
        table_master_seed: table.master_seed,
        table_rep_count: table.rep_count,
    })
}
