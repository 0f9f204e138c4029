//! Local Bahadur efficiencies of the integral and Kolmogorov tests under
//! location alternatives.
//!
//! Null variances of the integral kernels are exact rationals; projection
//! integrals and suprema are evaluated numerically in the probability scale
//! `u = F(x)`, which keeps heavy tails on a bounded interval.

mod slopes;
mod table;
mod variance;

pub use slopes::{
    integral_slope_coefficient, kolmogorov_prefactor, kolmogorov_rate_constant,
    kolmogorov_slope_coefficient, kolmogorov_sup, projection_integral, slope_coefficient,
    variance_function, variance_function_max, SlopeReport,
};
pub use table::{
    config_label, efficiency_table, equivalence_check_k3, EfficiencyTable, EquivalenceReport,
    DEFAULT_CONFIGS,
};
pub use variance::{
    integral_null_variance, integral_prefactor, integral_rate_constant, projection, sigma2_exact,
    Rational, MAX_EXACT_ORDER,
};
