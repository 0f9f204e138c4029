//! Nonparametric tests of symmetry about zero built on the equidistribution
//! of `|min(X_1, ..., X_k)|` and `|max(X_1, ..., X_k)|` under symmetry.
//!
//! Two families of statistics are provided:
//!
//! * the integral statistic `I_n^(k+1)`, a U-statistic of degree `k + 1`
//!   (and its V-statistic counterpart), and
//! * the Kolmogorov-type statistic `D_n^(k)`, the supremum distance between
//!   the U-empirical distribution functions of `|min|` and `|max|` over
//!   `k`-subsets.
//!
//! Both are evaluated exactly in `O(n log n)` with integer counting, and both
//! are distribution-free under the null hypothesis, so finite-sample
//! calibration uses one Monte Carlo table per `(kind, k, variant, n)`.
//!
//! The [`efficiency`] module computes the exact projection variances and the
//! local Bahadur efficiencies of the tests under location alternatives.
//!
//! ```
//! use symtest::{compute_i, Sample, Variant};
//!
//! let sample = Sample::new(vec![0.3, -0.3, 1.2, -1.2]).unwrap();
//! let stat = compute_i(&sample, 2, Variant::U).unwrap();
//! assert_eq!(stat.value, 0.0);
//! ```

pub mod distributions;
pub mod efficiency;
mod error;
pub mod nulldist;
pub mod optimize;
pub mod quadrature;
pub mod stats;

pub use distributions::{fisher_information, sample_location, Family};
pub use efficiency::{
    efficiency_table, equivalence_check_k3, integral_slope_coefficient,
    kolmogorov_slope_coefficient, projection_integral, sigma2_exact, variance_function,
    variance_function_max, Rational, SlopeReport,
};
pub use error::{Error, Result};
pub use nulldist::{p_value, power_curve, run_test, simulate_null, NullTable, Sided, TestDecision};
pub use stats::{
    brute_force_statistic, compute_d, compute_i, count_max_lt, count_min_lt, exceedance_counts,
    Kind, Sample, StatValue, Variant,
};
