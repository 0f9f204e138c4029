use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::distributions::{fisher_information, Family};
use crate::error::{Error, Result};
use crate::optimize::{bisect, golden_section_max, grid, local_maxima};
use crate::quadrature;
use crate::stats::Kind;

use super::variance::{integral_prefactor, sigma2_exact};

const GRID_POINTS: usize = 10_001;
/// Upper end of the search in probability scale; `Q(1 - 1e-12)` in `x`.
const U_MAX: f64 = 1.0 - 1e-12;

/// Local Bahadur slope of one test under location alternatives of one
/// family: `c(theta) ~ slope_coefficient * theta^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub kind: Kind,
    pub k: usize,
    pub family: Family,
    /// Distribution-free factor in front of the squared inner quantity.
    pub prefactor: f64,
    /// Projection integral (integral kind) or supremum (Kolmogorov kind).
    pub inner: f64,
    /// `sigma^2_{k+1}` (integral kind) or the variance-function maximum.
    pub null_variance: f64,
    pub slope_coefficient: f64,
    pub fisher_info: f64,
    /// `slope_coefficient / fisher_info`.
    pub efficiency: f64,
}

fn check_order(k: usize) -> Result<()> {
    if k >= 2 {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { k, min: 2, max: usize::MAX })
    }
}

/// `∫_0^∞ (F^{k-1}(x) - F^{k-1}(-x)) f^2(x) dx`, integrated in the
/// probability scale `u = F(x)` so the tail maps onto a finite interval:
/// `∫_{1/2}^1 (u^{k-1} - (1-u)^{k-1}) f(Q(u)) du`.
pub fn projection_integral(k: usize, family: Family) -> Result<f64> {
    check_order(k)?;
    let p = k as i32 - 1;
    let integrand =
        |u: f64| (u.powi(p) - (1.0 - u).powi(p)) * family.density_quantile(u);
    Ok(quadrature::integrate(integrand, 0.5, 1.0, 1e-13, 0.0)?.value)
}

/// Local slope of `I_n^(k+1)`:
/// `16 k^2 / ((k+1)^2 sigma^2_{k+1}) * projection_integral^2`.
pub fn integral_slope_coefficient(k: usize, family: Family) -> Result<SlopeReport> {
    check_order(k)?;
    let fisher = fisher_information(family)?;
    let prefactor = integral_prefactor(k)?.to_f64().expect("finite prefactor");
    let sigma2 = sigma2_exact(k)?.to_f64().expect("finite variance");
    let inner = projection_integral(k, family)?;
    let slope = prefactor * inner * inner;
    Ok(SlopeReport {
        kind: Kind::Integral,
        k,
        family,
        prefactor,
        inner,
        null_variance: sigma2,
        slope_coefficient: slope,
        fisher_info: fisher,
        efficiency: slope / fisher,
    })
}

/// Variance function of the Kolmogorov kernel family,
/// `xi_k(t) = (1 - t) ((1+t)^{k-1} - (1-t)^{k-1})^2 / 4^{k-1}`.
pub fn variance_function(k: usize, t: f64) -> f64 {
    let g = spread(k, t);
    (1.0 - t) * g * g
}

fn spread(k: usize, t: f64) -> f64 {
    let p = k as i32 - 1;
    ((1.0 + t).powi(p) - (1.0 - t).powi(p)) / 2f64.powi(p)
}

fn variance_function_derivative(k: usize, t: f64) -> f64 {
    let p = k as i32 - 1;
    let g = spread(k, t);
    let dg = (k - 1) as f64 * ((1.0 + t).powi(p - 1) + (1.0 - t).powi(p - 1)) / 2f64.powi(p);
    g * (2.0 * (1.0 - t) * dg - g)
}

/// Location and value of the maximum of `xi_k` on `[0, 1]`.
///
/// A grid scan locates the peak and checks that it is the only interior
/// local maximum; the derivative's sign change around it is then bisected.
pub fn variance_function_max(k: usize) -> Result<(f64, f64)> {
    check_order(k)?;
    let scan = grid(|t| variance_function(k, t), 0.0, 1.0, GRID_POINTS);
    let peaks = local_maxima(&scan);
    if peaks.len() != 1 {
        return Err(Error::MultipleMaxima { k, count: peaks.len() });
    }
    let i = peaks[0];
    let t_star = bisect(
        |t| variance_function_derivative(k, t),
        scan[i - 1].0,
        scan[i + 1].0,
        1e-15,
    )?;
    Ok((t_star, variance_function(k, t_star)))
}

/// Coefficient `c` in `h_k(a) ~ c a^2` for `D_n^(k)`:
/// `c = 1 / (2 k^2 max xi_k)`.
pub fn kolmogorov_rate_constant(k: usize) -> Result<f64> {
    let (_, xi_max) = variance_function_max(k)?;
    Ok(1.0 / (2.0 * (k * k) as f64 * xi_max))
}

/// `4 / max xi_k`: the slope is this times the squared supremum.
pub fn kolmogorov_prefactor(k: usize) -> Result<f64> {
    let (_, xi_max) = variance_function_max(k)?;
    Ok(4.0 / xi_max)
}

/// `sup_{x > 0} f(x) (F^{k-1}(x) - F^{k-1}(-x))` and its argmax `x`.
///
/// Searched in the probability scale `u = F(x)` over `(1/2, 1 - 1e-12]`: a
/// grid pre-scan brackets the global maximum, golden-section search
/// refines it.
pub fn kolmogorov_sup(k: usize, family: Family) -> Result<(f64, f64)> {
    check_order(k)?;
    let p = k as i32 - 1;
    let objective = |u: f64| family.density_quantile(u) * (u.powi(p) - (1.0 - u).powi(p));

    let scan = grid(objective, 0.5, U_MAX, GRID_POINTS);
    let best = (1..scan.len() - 1)
        .max_by(|&a, &b| scan[a].1.total_cmp(&scan[b].1))
        .ok_or_else(|| Error::Optimization("empty grid".into()))?;
    if scan[best].1.is_nan() || scan[best].1 <= 0.0 {
        return Err(Error::Optimization(format!(
            "objective for {family}, k = {k} is not positive on the grid"
        )));
    }
    let (mut u_star, mut value) =
        golden_section_max(objective, scan[best - 1].0, scan[best + 1].0, 1e-14);
    if value < scan[best].1 {
        (u_star, value) = scan[best];
    }
    Ok((family.quantile(u_star), value))
}

/// Local slope of `D_n^(k)`: `4 sup^2 / max xi_k`.
pub fn kolmogorov_slope_coefficient(k: usize, family: Family) -> Result<SlopeReport> {
    check_order(k)?;
    let fisher = fisher_information(family)?;
    let (_, xi_max) = variance_function_max(k)?;
    let (_, sup) = kolmogorov_sup(k, family)?;
    let prefactor = 4.0 / xi_max;
    let slope = prefactor * sup * sup;
    Ok(SlopeReport {
        kind: Kind::Kolmogorov,
        k,
        family,
        prefactor,
        inner: sup,
        null_variance: xi_max,
        slope_coefficient: slope,
        fisher_info: fisher,
        efficiency: slope / fisher,
    })
}

/// Slope report for either kind.
pub fn slope_coefficient(kind: Kind, k: usize, family: Family) -> Result<SlopeReport> {
    match kind {
        Kind::Integral => integral_slope_coefficient(k, family),
        Kind::Kolmogorov => kolmogorov_slope_coefficient(k, family),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variance_function_special_cases() {
        for t in [0.0, 0.2, 0.5, 2.0 / 3.0, 0.9, 1.0] {
            let k2 = t * t * (1.0 - t);
            assert!((variance_function(2, t) - k2).abs() < 1e-15);
            assert!((variance_function(3, t) - k2).abs() < 1e-15);
            let k4 = (1.0 - t) * (3.0 * t + t.powi(3)).powi(2) / 16.0;
            assert!((variance_function(4, t) - k4).abs() < 1e-15);
        }
        for k in 2..=8 {
            assert_eq!(variance_function(k, 0.0), 0.0);
            assert_eq!(variance_function(k, 1.0), 0.0);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for k in 2..=6 {
            for t in [0.1, 0.4, 0.7, 0.95] {
                let fd = (variance_function(k, t + h) - variance_function(k, t - h)) / (2.0 * h);
                assert!((variance_function_derivative(k, t) - fd).abs() < 1e-8, "k={k} t={t}");
            }
        }
    }

    #[test]
    fn maximum_for_k2_and_k3() {
        for k in [2, 3] {
            let (t, xi) = variance_function_max(k).unwrap();
            assert!((t - 2.0 / 3.0).abs() < 1e-12, "k={k} t={t}");
            assert!((xi - 4.0 / 27.0).abs() < 1e-15);
        }
    }

    #[test]
    fn kolmogorov_k2_closed_form() {
        // 4 / (4/27) = 27 and sup (2F - 1) f for the logistic is 1/(6 sqrt 3)
        // at F = (3 + sqrt 3)/6, i.e. u (1 - u)(2u - 1) maximized
        let report = kolmogorov_slope_coefficient(2, Family::Logistic).unwrap();
        assert!((report.prefactor - 27.0).abs() < 1e-12);
        let expected_sup = 1.0 / (6.0 * 3f64.sqrt());
        assert!((report.inner - expected_sup).abs() < 1e-12, "{}", report.inner);
        assert!((report.efficiency - 0.75).abs() < 1e-10);
    }

    #[test]
    fn projection_integral_k2_is_positive() {
        for family in Family::ALL {
            assert!(projection_integral(2, family).unwrap() > 0.0);
        }
    }

    #[test]
    fn uniform_slopes_are_unsupported() {
        assert!(integral_slope_coefficient(2, Family::Uniform).is_err());
        assert!(kolmogorov_slope_coefficient(2, Family::Uniform).is_err());
    }
}
