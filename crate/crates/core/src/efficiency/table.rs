use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::Result;
use crate::stats::Kind;

use super::slopes::{
    integral_slope_coefficient, kolmogorov_rate_constant, kolmogorov_slope_coefficient,
    slope_coefficient, SlopeReport,
};
use super::variance::{integral_rate_constant, Rational};

/// Statistic configurations reported by default: `I^(3)`, `I^(5)`, `D^(2)`
/// and `D^(4)`.
pub const DEFAULT_CONFIGS: [(Kind, usize); 4] =
    [(Kind::Integral, 2), (Kind::Integral, 4), (Kind::Kolmogorov, 2), (Kind::Kolmogorov, 4)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyTable {
    pub rows: Vec<SlopeReport>,
}

/// Short label of a configuration, e.g. `I3` or `D4`.
pub fn config_label(kind: Kind, k: usize) -> String {
    match kind {
        Kind::Integral => format!("I{}", k + 1),
        Kind::Kolmogorov => format!("D{k}"),
    }
}

/// Local Bahadur efficiencies of every configuration under every family.
pub fn efficiency_table(families: &[Family], configs: &[(Kind, usize)]) -> Result<EfficiencyTable> {
    let mut rows = Vec::with_capacity(families.len() * configs.len());
    for &family in families {
        for &(kind, k) in configs {
            rows.push(slope_coefficient(kind, k, family)?);
        }
    }
    Ok(EfficiencyTable { rows })
}

impl EfficiencyTable {
    pub fn get(&self, family: Family, kind: Kind, k: usize) -> Option<&SlopeReport> {
        self.rows.iter().find(|r| r.family == family && r.kind == kind && r.k == k)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "family,statistic,kind,k,prefactor,inner,null_variance,slope_coefficient,fisher_info,efficiency\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{:e},{:e},{:e},{:e},{:e},{:e}",
                r.family,
                config_label(r.kind, r.k),
                r.kind,
                r.k,
                r.prefactor,
                r.inner,
                r.null_variance,
                r.slope_coefficient,
                r.fisher_info,
                r.efficiency
            );
        }
        out
    }

    /// Families as rows, configurations as columns, efficiencies to
    /// `decimals` places.
    pub fn to_text(&self, decimals: usize) -> String {
        let mut families: Vec<Family> = Vec::new();
        let mut configs: Vec<(Kind, usize)> = Vec::new();
        for r in &self.rows {
            if !families.contains(&r.family) {
                families.push(r.family);
            }
            if !configs.contains(&(r.kind, r.k)) {
                configs.push((r.kind, r.k));
            }
        }
        let width = decimals + 4;
        let mut out = format!("{:<10}", "family");
        for &(kind, k) in &configs {
            let _ = write!(out, " {:>width$}", config_label(kind, k));
        }
        out.push('\n');
        for &family in &families {
            let _ = write!(out, "{:<10}", family.name());
            for &(kind, k) in &configs {
                match self.get(family, kind, k) {
                    Some(r) => {
                        let _ = write!(out, " {:>width$.decimals$}", r.efficiency);
                    }
                    None => {
                        let _ = write!(out, " {:>width$}", "-");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Side-by-side comparison of the `k = 2` and `k = 3` versions of each test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub integral_rate_k2: f64,
    pub integral_rate_k3: f64,
    pub kolmogorov_rate_k2: f64,
    pub kolmogorov_rate_k3: f64,
    /// `(family, efficiency k = 2, efficiency k = 3)` for the integral kind.
    pub integral: Vec<(Family, f64, f64)>,
    pub kolmogorov: Vec<(Family, f64, f64)>,
    /// Largest relative discrepancy among the paired slope coefficients.
    pub max_relative_gap: f64,
    /// Whether both pairs of rate constants differ between `k = 2` and
    /// `k = 3`.
    pub rates_differ: bool,
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Compares `k = 2` with `k = 3` across the smooth families: local slopes
/// must agree while the large-deviation rate constants need not.
pub fn equivalence_check_k3() -> Result<EquivalenceReport> {
    let rate = |r: Rational| r.to_f64().expect("finite rate");
    let integral_rate_k2 = rate(integral_rate_constant(2)?);
    let integral_rate_k3 = rate(integral_rate_constant(3)?);
    let kolmogorov_rate_k2 = kolmogorov_rate_constant(2)?;
    let kolmogorov_rate_k3 = kolmogorov_rate_constant(3)?;

    let mut integral = Vec::new();
    let mut kolmogorov = Vec::new();
    let mut gap: f64 = 0.0;
    for family in Family::SMOOTH {
        let (a, b) = (integral_slope_coefficient(2, family)?, integral_slope_coefficient(3, family)?);
        gap = gap.max(rel_gap(a.slope_coefficient, b.slope_coefficient));
        integral.push((family, a.efficiency, b.efficiency));

        let (a, b) = (kolmogorov_slope_coefficient(2, family)?, kolmogorov_slope_coefficient(3, family)?);
        gap = gap.max(rel_gap(a.slope_coefficient, b.slope_coefficient));
        kolmogorov.push((family, a.efficiency, b.efficiency));
    }

    let rates_differ = integral_rate_constant(2)? != integral_rate_constant(3)?
        && rel_gap(kolmogorov_rate_k2, kolmogorov_rate_k3) > 1e-8;
    Ok(EquivalenceReport {
        integral_rate_k2,
        integral_rate_k3,
        kolmogorov_rate_k2,
        kolmogorov_rate_k3,
        integral,
        kolmogorov,
        max_relative_gap: gap,
        rates_differ,
    })
}
