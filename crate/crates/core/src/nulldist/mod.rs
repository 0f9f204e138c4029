//! Monte Carlo null distributions.
//!
//! Under the null hypothesis every statistic in this crate is
//! distribution-free, so a single table simulated from Uniform[-1, 1]
//! calibrates the test for any continuous symmetric distribution.
//! Replicate `r` draws from its own generator seeded with
//! [`derive_seed`]`(master_seed, r)`, which makes tables independent of the
//! order and the thread count in which replicates run.

mod inference;
mod power;
mod seed;
mod table;

pub use inference::{p_value, run_test, Sided, TestDecision};
pub use power::{power_curve, PowerPoint, PowerSpec};
pub use seed::{derive_seed, splitmix64};
pub use table::{simulate_null, simulate_null_from, NullTable, FORMAT_VERSION, QUANTILE_LEVELS};
