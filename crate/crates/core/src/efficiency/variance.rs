//! Exact projection variances of the integral kernels.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub const MAX_EXACT_ORDER: usize = 64;

fn check_order(k: usize) -> Result<()> {
    if (2..=MAX_EXACT_ORDER).contains(&k) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { k, min: 2, max: MAX_EXACT_ORDER })
    }
}

/// Integer coefficients (ascending powers of `s`) of
/// `(1 + s)^k + (1 - s)^k - 2`.
fn kernel_polynomial(k: usize) -> Vec<BigInt> {
    let two = BigInt::from(2);
    (0..=k)
        .map(|j| {
            if j == 0 || j % 2 == 1 {
                BigInt::zero()
            } else {
                &two * binomial(BigInt::from(k), BigInt::from(j))
            }
        })
        .collect()
}

fn square(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); 2 * p.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in p.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `∫_0^1 p(s) ds` for integer coefficients `p`.
fn integrate_unit(p: &[BigInt]) -> Rational {
    p.iter()
        .enumerate()
        .map(|(m, c)| Rational::new(c.clone(), BigInt::from(m + 1)))
        .fold(Rational::zero(), |acc, term| acc + term)
}

/// Variance `sigma^2_{k+1}` of the projection of the degree-`(k+1)` kernel
/// under the null:
/// `[2^{2k-2} (k+1)^2]^{-1} ∫_0^1 ((1+s)^k + (1-s)^k - 2)^2 ds`.
pub fn sigma2_exact(k: usize) -> Result<Rational> {
    check_order(k)?;
    let integral = integrate_unit(&square(&kernel_polynomial(k)));
    let scale = (BigInt::one() << (2 * k - 2)) * BigInt::from((k + 1) * (k + 1));
    Ok(integral / Rational::from_integer(scale))
}

/// Limiting null variance `(k+1)^2 sigma^2_{k+1}` of `sqrt(n) I_n^(k+1)`.
pub fn integral_null_variance(k: usize) -> Result<Rational> {
    let m = BigInt::from((k + 1) * (k + 1));
    Ok(sigma2_exact(k)? * Rational::from_integer(m))
}

/// Coefficient `c` in the small-`a` large deviation rate `f(a) ~ c a^2` of
/// `I_n^(k+1)`: `c = 1 / (2 (k+1)^2 sigma^2_{k+1})`.
pub fn integral_rate_constant(k: usize) -> Result<Rational> {
    let two = Rational::from_integer(BigInt::from(2));
    Ok((two * integral_null_variance(k)?).recip())
}

/// `16 k^2 / ((k+1)^2 sigma^2_{k+1})`, the factor multiplying the squared
/// projection integral in the local slope.
pub fn integral_prefactor(k: usize) -> Result<Rational> {
    let num = Rational::from_integer(BigInt::from(16 * k * k));
    Ok(num / integral_null_variance(k)?)
}

/// Closed-form projection `psi_{k+1}(s)` of the integral kernel under
/// Uniform[-1, 1].
pub fn projection(k: usize, s: f64) -> f64 {
    let core = (1.0 + s).powi(k as i32) + (1.0 - s).powi(k as i32) - 2.0;
    let scale = (k + 1) as f64 * 2f64.powi(k as i32 - 1);
    if s > 0.0 {
        core / scale
    } else {
        -core / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn low_order_values() {
        assert_eq!(sigma2_exact(2).unwrap(), r(1, 45));
        assert_eq!(sigma2_exact(4).unwrap(), r(2843, 126_000));
        assert_eq!(sigma2_exact(6).unwrap(), r(421_691, 37_669_632));
    }

    #[test]
    fn null_variance_and_rate_for_k2() {
        assert_eq!(integral_null_variance(2).unwrap(), r(1, 5));
        assert_eq!(integral_rate_constant(2).unwrap(), r(5, 2));
        assert_eq!(integral_prefactor(2).unwrap(), r(320, 1));
        assert_eq!(integral_prefactor(3).unwrap(), r(320, 1));
        assert_eq!(integral_prefactor(4).unwrap(), r(1_290_240, 2843));
    }

    #[test]
    fn positive_up_to_max_order() {
        for k in 2..=MAX_EXACT_ORDER {
            assert!(sigma2_exact(k).unwrap() > Rational::zero(), "k = {k}");
        }
        assert!(sigma2_exact(1).is_err());
        assert!(sigma2_exact(65).is_err());
    }

    #[test]
    fn projection_is_odd_and_vanishes_at_zero() {
        for k in 2..=6 {
            assert_eq!(projection(k, 0.0), 0.0);
            for s in [0.1, 0.5, 0.9, 1.0] {
                assert_eq!(projection(k, -s), -projection(k, s));
            }
        }
        // k = 2: psi_3(s) = s^2 / 3 for s > 0
        assert!((projection(2, 0.6) - 0.12).abs() < 1e-15);
    }
}
