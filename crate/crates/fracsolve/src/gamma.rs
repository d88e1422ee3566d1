//! Gamma function and its reciprocal.
//!
//! `gamma` targets relative error below 1e-12 across (0, 170]; `rgamma` is the
//! entire reciprocal, exactly zero at the poles of Gamma, which is what the
//! asymptotic Mittag-Leffler expansion and the Riemann-Liouville power rule
//! rely on.

use crate::dd::{lgamma_dd, Dd};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GammaError {
    #[error("gamma has a pole at non-positive integer argument {0}")]
    Pole(f64),
    #[error("gamma argument must be finite, got {0}")]
    NonFinite(f64),
}

/// True when `x` is an integer for all practical purposes.
#[inline]
pub(crate) fn is_integer(x: f64) -> bool {
    x == x.round()
}

/// sin(pi x), with argument reduction performed exactly so that the result is
/// exactly zero at integers and fully accurate near them.
pub(crate) fn sinpi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let n = r.round();
    let d = r - n; // |d| <= 0.5, exact
    let s = (std::f64::consts::PI * d).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Gamma(x) for real x that is not a non-positive integer.
pub fn gamma(x: f64) -> Result<f64, GammaError> {
    if !x.is_finite() {
        return Err(GammaError::NonFinite(x));
    }
    if x <= 0.0 && is_integer(x) {
        return Err(GammaError::Pole(x));
    }
    if x > 0.0 {
        Ok(lgamma_dd(Dd::from_f64(x)).exp().to_f64())
    } else {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
        let g = lgamma_dd(Dd::from_f64(1.0 - x)).exp().to_f64();
        Ok(std::f64::consts::PI / (sinpi(x) * g))
    }
}

/// 1 / Gamma(x) as an entire function: returns exactly 0 at non-positive
/// integers and never errors.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && is_integer(x) {
        return 0.0;
    }
    if x > 0.5 {
        (-lgamma_dd(Dd::from_f64(x))).exp().to_f64()
    } else {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        let g = lgamma_dd(Dd::from_f64(1.0 - x)).exp().to_f64();
        sinpi(x) * g / std::f64::consts::PI
    }
}

/// Gamma(a) / Gamma(b) for positive arguments; used by the exact power rules.
pub(crate) fn gamma_ratio_pos(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    crate::dd::gamma_ratio(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn gamma_one_is_one() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
    }

    #[test]
    fn gamma_five_is_24() {
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        // sqrt(pi) = 1.772453850905516...
        let g = gamma(0.5).unwrap();
        assert!(rel(g, 1.772_453_850_905_516) < 1e-12);
        assert!(rel(g, std::f64::consts::PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_large_arguments() {
        // Gamma(170) against the product recurrence from Gamma(150).
        let g150 = gamma(150.0).unwrap();
        let mut expect = g150;
        for k in 150..170 {
            expect *= k as f64;
        }
        assert!(rel(gamma(170.0).unwrap(), expect) < 1e-12);
    }

    #[test]
    fn gamma_recurrence_scan() {
        // Gamma(x+1) = x Gamma(x) across magnitudes.
        for i in 1..200 {
            let x = 0.07 * i as f64;
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn gamma_pole_errors() {
        assert!(matches!(gamma(0.0), Err(GammaError::Pole(_))));
        assert!(matches!(gamma(-3.0), Err(GammaError::Pole(_))));
        assert!(matches!(gamma(f64::NAN), Err(GammaError::NonFinite(_))));
    }

    #[test]
    fn gamma_negative_reflection() {
        // Gamma(-0.5) = -2 sqrt(pi)
        let g = gamma(-0.5).unwrap();
        assert!(rel(g, -2.0 * std::f64::consts::PI.sqrt()) < 1e-13);
    }

    #[test]
    fn rgamma_zero_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-1.0), 0.0);
        assert_eq!(rgamma(-120.0), 0.0);
    }

    #[test]
    fn rgamma_matches_gamma() {
        for &x in &[0.3, 1.0, 2.5, 10.0, -0.5, -2.3, -10.7] {
            let r = rgamma(x);
            let g = gamma(x).unwrap();
            assert!(rel(r, 1.0 / g) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn sinpi_exact_zeros() {
        assert_eq!(sinpi(3.0), 0.0);
        assert_eq!(sinpi(-7.0), 0.0);
        assert!((sinpi(0.5) - 1.0).abs() < 1e-15);
        assert!((sinpi(1.5) + 1.0).abs() < 1e-15);
    }
}
