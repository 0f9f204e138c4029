//! Adaptive Gauss-Kronrod quadrature on finite intervals, plus an
//! interval-doubling driver for half-infinite ranges.

use crate::error::{Error, Result};

const MAX_SEGMENTS: usize = 4000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of a quadrature: the estimate and its absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
}

/// One 21-point Gauss-Kronrod panel on `[a, b]`, with the QUADPACK error
/// heuristic.
pub fn gauss_kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Integral {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = f_center * WGK[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        // odd Kronrod nodes coincide with the Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Integral { value, abs_error: err }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`:
/// the panel with the largest error estimate is bisected until the summed
/// error drops below `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral> {
    let first = gauss_kronrod21(&f, a, b);
    let mut segments = vec![(a, b, first)];

    loop {
        let value: f64 = segments.iter().map(|s| s.2.value).sum();
        let error: f64 = segments.iter().map(|s| s.2.abs_error).sum();
        if !value.is_finite() {
            return Err(Error::QuadratureFailure { estimate: value, error });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral { value, abs_error: error });
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureFailure { estimate: value, error });
        }

        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.abs_error.total_cmp(&y.1 .2.abs_error))
            .map(|(i, _)| i)
            .expect("segment list is never empty");
        let (lo, hi, _) = segments.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval cannot be split further in floating point
            return Err(Error::QuadratureFailure { estimate: value, error });
        }
        segments.push((lo, mid, gauss_kronrod21(&f, lo, mid)));
        segments.push((mid, hi, gauss_kronrod21(&f, mid, hi)));
    }
}

/// Integrates `f` over `[a, inf)` by summing panels `[a + w, a + 2w]` of
/// doubling width until two consecutive panels contribute less than
/// `abs_tol` each.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64) -> Result<Integral> {
    let panel_tol = abs_tol / 4.0;
    let mut width = 1.0;
    let head = integrate(&f, a, a + width, panel_tol, 0.0)?;
    let mut value = head.value;
    let mut error = head.abs_error;
    let mut quiet = 0;

    for _ in 0..64 {
        let piece = integrate(&f, a + width, a + 2.0 * width, panel_tol, 0.0)?;
        value += piece.value;
        error += piece.abs_error;
        if piece.value.abs() < panel_tol {
            quiet += 1;
            if quiet == 2 {
                return Ok(Integral { value, abs_error: error });
            }
        } else {
            quiet = 0;
        }
        width *= 2.0;
    }
    Err(Error::QuadratureFailure { estimate: value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn panel_is_exact_for_polynomials() {
        let r = gauss_kronrod21(&|x: f64| x.powi(7) - 3.0 * x * x, 0.0, 2.0);
        assert!((r.value - (32.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // integral of ln(x) on (0, 1] is -1
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn half_line_gaussian() {
        let r = integrate_to_infinity(|x: f64| (-x * x).exp(), 0.0, 1e-12).unwrap();
        assert!((r.value - PI.sqrt() / 2.0).abs() < 1e-11);
    }

    #[test]
    fn half_line_heavy_tail() {
        // 1/(1+x^2) on [0, inf) has slowly decaying panels
        let r = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x).powi(2), 0.0, 1e-12).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn non_finite_integrand_fails() {
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10, 0.0).is_err());
    }
}
