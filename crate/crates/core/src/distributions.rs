//! Symmetric location families used for null sampling, power simulation and
//! efficiency calculations.
//!
//! Every family is symmetric about zero. Sampling draws a random sign and a
//! magnitude from the quantile function of `|X|`, so the ordering of the
//! magnitudes and the signs of a sample depend only on the underlying
//! uniforms. Two families fed the same random stream therefore produce
//! samples with identical sign/magnitude patterns.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::distr::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::stats::Sample;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Uniform on `[-1, 1]`.
    Uniform,
    /// Standard normal.
    Normal,
    /// Standard logistic, `F(x) = 1 / (1 + e^{-x})`.
    Logistic,
    /// Standard Cauchy.
    Cauchy,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Uniform, Family::Normal, Family::Logistic, Family::Cauchy];

    /// Families with a differentiable density, in the column order of the
    /// efficiency table.
    pub const SMOOTH: [Family; 3] = [Family::Logistic, Family::Normal, Family::Cauchy];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Normal => "normal",
            Family::Logistic => "logistic",
            Family::Cauchy => "cauchy",
        }
    }

    pub fn pdf(self, x: f64) -> f64 {
        match self {
            Family::Uniform => {
                if x.abs() <= 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
            Family::Normal => INV_SQRT_2PI * (-0.5 * x * x).exp(),
            Family::Logistic => {
                let e = (-x.abs()).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            Family::Cauchy => 1.0 / (PI * (1.0 + x * x)),
        }
    }

    /// Derivative of the density. Zero for the uniform family away from its
    /// jump points.
    pub fn pdf_derivative(self, x: f64) -> f64 {
        match self {
            Family::Uniform => 0.0,
            Family::Normal => -x * self.pdf(x),
            Family::Logistic => -self.pdf(x) * (0.5 * x).tanh(),
            Family::Cauchy => {
                let s = 1.0 + x * x;
                -2.0 * x / (PI * s * s)
            }
        }
    }

    pub fn cdf(self, x: f64) -> f64 {
        match self {
            Family::Uniform => (0.5 * (x + 1.0)).clamp(0.0, 1.0),
            Family::Normal => 0.5 * libm::erfc(-x * FRAC_1_SQRT_2),
            Family::Logistic => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
            Family::Cauchy => 0.5 + x.atan() / PI,
        }
    }

    /// Inverse of [`Family::cdf`] on `(0, 1)`; returns `-inf`/`+inf` at the
    /// endpoints for unbounded families.
    pub fn quantile(self, p: f64) -> f64 {
        match self {
            Family::Uniform => 2.0 * p.clamp(0.0, 1.0) - 1.0,
            Family::Normal => normal_quantile(p),
            Family::Logistic => p.ln() - (-p).ln_1p(),
            Family::Cauchy => {
                if p <= 0.0 {
                    f64::NEG_INFINITY
                } else if p >= 1.0 {
                    f64::INFINITY
                } else {
                    (PI * (p - 0.5)).tan()
                }
            }
        }
    }

    /// Quantile function of `|X|`, i.e. `quantile((1 + v) / 2)` evaluated
    /// without the cancellation of forming `(1 + v) / 2`.
    pub fn abs_quantile(self, v: f64) -> f64 {
        match self {
            Family::Uniform => v,
            Family::Normal => -normal_quantile(0.5 * (1.0 - v)),
            Family::Logistic => v.ln_1p() - (-v).ln_1p(),
            Family::Cauchy => (0.5 * PI * v).tan(),
        }
    }

    /// Density at the `u`-quantile, `f(Q(u))`, in closed form where one
    /// exists.
    pub fn density_quantile(self, u: f64) -> f64 {
        match self {
            Family::Uniform => 0.5,
            Family::Normal => self.pdf(self.quantile(u)),
            Family::Logistic => u * (1.0 - u),
            Family::Cauchy => {
                let s = (PI * u).sin();
                s * s / PI
            }
        }
    }

    /// One draw from the family, centred at zero.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        let negative: bool = rng.random();
        let v: f64 = Open01.sample(rng);
        let magnitude = self.abs_quantile(v);
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }

    /// Fisher information for location, `None` where the density is not
    /// differentiable (uniform).
    pub fn fisher_info(self) -> Option<f64> {
        match self {
            Family::Uniform => None,
            Family::Normal => Some(1.0),
            Family::Logistic => Some(1.0 / 3.0),
            Family::Cauchy => Some(0.5),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(Family::Uniform),
            "normal" | "gaussian" => Ok(Family::Normal),
            "logistic" => Ok(Family::Logistic),
            "cauchy" => Ok(Family::Cauchy),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Draws `n` i.i.d. observations from `F(x - theta)`.
pub fn sample_location(family: Family, theta: f64, n: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n).map(|_| theta + family.sample(&mut rng)).collect();
    Sample::from_trusted(values)
}

/// Fisher information for location of `family`.
pub fn fisher_information(family: Family) -> Result<f64> {
    family
        .fisher_info()
        .ok_or(Error::UnsupportedFamily(family.name()))
}

/// `∫ f'(x)^2 / f(x) dx` by quadrature, as an independent check on the
/// analytic constants.
pub fn fisher_information_numeric(family: Family) -> Result<f64> {
    if family.fisher_info().is_none() {
        return Err(Error::UnsupportedFamily(family.name()));
    }
    let integrand = |x: f64| {
        let f = family.pdf(x);
        if f > 0.0 {
            let d = family.pdf_derivative(x);
            d * d / f
        } else {
            0.0
        }
    };
    let half = quadrature::integrate_to_infinity(integrand, 0.0, 1e-13)?;
    Ok(2.0 * half.value)
}

// Acklam's rational approximation to the standard normal quantile
// (relative error below 1.15e-9), followed by one Halley step against the
// erfc-based cdf.
fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }

    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let x = if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (-p).ln_1p()).sqrt())
    };

    // Halley refinement; in the upper tail work with the complement so the
    // residual keeps its precision.
    let (e, sign) = if x > 0.0 {
        (0.5 * libm::erfc(x / SQRT_2) - (1.0 - p), -1.0)
    } else {
        (0.5 * libm::erfc(-x / SQRT_2) - p, 1.0)
    };
    let u = sign * e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_points(family: Family) -> Vec<f64> {
        let hi = match family {
            Family::Uniform => 0.999,
            _ => 8.0,
        };
        (0..=400).map(|i| -hi + 2.0 * hi * i as f64 / 400.0).collect()
    }

    #[test]
    fn densities_are_symmetric() {
        for family in Family::ALL {
            for x in interior_points(family) {
                assert_eq!(family.pdf(x), family.pdf(-x), "{family} at {x}");
            }
        }
    }

    #[test]
    fn cdf_reflects_and_increases() {
        for family in Family::ALL {
            let xs = interior_points(family);
            for w in xs.windows(2) {
                assert!(family.cdf(w[0]) <= family.cdf(w[1]));
            }
            for x in xs {
                assert!((family.cdf(-x) - (1.0 - family.cdf(x))).abs() < 1e-15, "{family} {x}");
            }
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for family in Family::ALL {
            for x in interior_points(family) {
                let back = family.quantile(family.cdf(x));
                // one ulp of the cdf near 1 moves x by about eps / pdf(x)
                let tol = 1e-9 + 4.0 * f64::EPSILON / family.pdf(x);
                assert!((back - x).abs() < tol, "{family}: {x} -> {back}");
            }
        }
    }

    #[test]
    fn abs_quantile_matches_quantile() {
        for family in Family::ALL {
            for i in 1..100 {
                let v = i as f64 / 100.0;
                let a = family.abs_quantile(v);
                let b = family.quantile(0.5 * (1.0 + v));
                assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "{family} {v}");
            }
        }
    }

    #[test]
    fn normal_quantile_known_values() {
        assert_eq!(normal_quantile(0.5), 0.0);
        assert!((normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((normal_quantile(1e-10) + 6.361_340_902_404_056).abs() < 1e-9);
    }

    #[test]
    fn density_quantile_matches_composition() {
        for family in Family::ALL {
            for i in 1..200 {
                let u = i as f64 / 200.0;
                let direct = family.pdf(family.quantile(u));
                assert!((family.density_quantile(u) - direct).abs() < 1e-12, "{family} {u}");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for family in Family::ALL {
            assert_eq!(family.name().parse::<Family>().unwrap(), family);
        }
        assert!(matches!("laplace".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn uniform_support_containment() {
        let s = sample_location(Family::Uniform, 0.0, 3, 17);
        assert_eq!(s.len(), 3);
        assert!(s.values().iter().all(|x| (-1.0..=1.0).contains(x)));
    }

    #[test]
    fn normal_sample_mean_near_zero() {
        let n = 100_000;
        let s = sample_location(Family::Normal, 0.0, n, 2024);
        let mean = s.values().iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn logistic_shift_moves_mean() {
        let s = sample_location(Family::Logistic, 1.0, 100_000, 99);
        let mean = s.values().iter().sum::<f64>() / 1e5;
        assert!((mean - 1.0).abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_location(Family::Cauchy, 0.5, 50, 7);
        let b = sample_location(Family::Cauchy, 0.5, 50, 7);
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn uniform_has_no_fisher_information() {
        assert!(matches!(
            fisher_information(Family::Uniform),
            Err(Error::UnsupportedFamily("uniform"))
        ));
    }

    #[test]
    fn fisher_information_quadrature_agrees() {
        for family in Family::SMOOTH {
            let exact = fisher_information(family).unwrap();
            let numeric = fisher_information_numeric(family).unwrap();
            assert!(
                ((numeric - exact) / exact).abs() < 1e-6,
                "{family}: {numeric} vs {exact}"
            );
        }
    }
}
