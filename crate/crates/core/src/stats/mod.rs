//! Exact evaluation of the integral statistic `I_n^(k+1)` and the
//! Kolmogorov-type statistic `D_n^(k)`.
//!
//! All kernels are indicators of comparisons between `|min|`/`|max|` of a
//! tuple and a threshold, so every statistic reduces to counting subsets
//! whose minimum (maximum) lies in `(-t, t)`. Those counts follow from four
//! threshold counts over one sorted copy of the sample, see
//! [`SortedSample`].

mod counting;
mod oracle;
mod sample;
mod statistic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use counting::{
    binomial, count_max_lt, count_min_lt, exceedance_counts, ExceedanceCounts, SortedSample,
};
pub use oracle::{brute_force_statistic, BRUTE_FORCE_LIMIT};
pub use sample::Sample;
pub use statistic::{compute_d, compute_i, evaluate, DEFAULT_MAX_ORDER, HARD_MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `I_n^(k+1)`: mean of the symmetrized degree-`k+1` kernel.
    Integral,
    /// `D_n^(k)`: sup distance between the `|min|` and `|max|` U-empirical dfs.
    Kolmogorov,
}

/// U: distinct-index subsets. V: all tuples with repetition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    U,
    V,
}

/// A computed statistic together with what was computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatValue {
    pub kind: Kind,
    pub k: usize,
    pub variant: Variant,
    pub n: usize,
    pub value: f64,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Integral => "integral",
            Kind::Kolmogorov => "kolmogorov",
        }
    }

    /// Degree of the kernel (or kernel family) for characterization order `k`.
    pub fn degree(self, k: usize) -> usize {
        match self {
            Kind::Integral => k + 1,
            Kind::Kolmogorov => k,
        }
    }
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::U => "u",
            Variant::V => "v",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "integral" | "i" => Ok(Kind::Integral),
            "kolmogorov" | "d" => Ok(Kind::Kolmogorov),
            other => Err(Error::InvalidArgument(format!("unknown statistic kind `{other}`"))),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u" => Ok(Variant::U),
            "v" => Ok(Variant::V),
            other => Err(Error::InvalidArgument(format!("unknown variant `{other}`"))),
        }
    }
}

impl StatValue {
    /// Short label such as `integral-k2-u-n200`.
    pub fn label(&self) -> String {
        format!("{}-k{}-{}-n{}", self.kind, self.k, self.variant, self.n)
    }
}
