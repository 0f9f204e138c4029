//! One-dimensional search helpers: grid scans, golden-section maximization
//! and bisection on a sign change.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)`; stops once the bracket is narrower than `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Bisection for a root of `f` on `[a, b]` where `f(a)` and `f(b)` differ in
/// sign. Runs until the bracket is below `tol` or cannot shrink further.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Optimization(format!(
            "no sign change on [{a}, {b}]"
        )));
    }
    while (b - a) > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Evaluates `f` on `points` equally spaced nodes covering `[a, b]`.
pub fn grid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, points: usize) -> Vec<(f64, f64)> {
    let step = (b - a) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let x = if i + 1 == points { b } else { a + step * i as f64 };
            (x, f(x))
        })
        .collect()
}

/// Indices of strict interior local maxima on a grid scan.
pub fn local_maxima(values: &[(f64, f64)]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i].1 > values[i - 1].1 && values[i].1 >= values[i + 1].1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-14);
    }

    #[test]
    fn bisect_resolves_to_ulp_scale() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn local_maxima_counts_peaks() {
        let g = grid(|x| (3.0 * std::f64::consts::PI * x).sin(), 0.0, 1.0, 1001);
        assert_eq!(local_maxima(&g).len(), 2);
    }
}
