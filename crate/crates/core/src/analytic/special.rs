//! Error function family.
//!
//! `erf` uses the all-positive-term series
//! `erf(x) = 2/√π · e^{-x²} · Σ (2x²)^n x / (1·3·…·(2n+1))` below
//! [`SERIES_CUTOFF`] and the Laplace continued fraction for the scaled
//! complement `erfcx(x) = e^{x²} erfc(x)` above it. Both are accurate to a
//! few ulps of `erf` on the whole real line; the documented bound is 1e-10
//! absolute.

use std::f64::consts::PI;

const SERIES_CUTOFF: f64 = 2.5;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax.is_infinite() {
        return 1.0f64.copysign(x);
    }
    let v = if ax < SERIES_CUTOFF {
        erf_series(ax)
    } else {
        1.0 - (-ax * ax).exp() * erfcx_cf(ax)
    };
    v.copysign(x)
}

/// Complementary error function `1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < SERIES_CUTOFF {
        1.0 - erf(x)
    } else if x.is_infinite() {
        0.0
    } else {
        (-x * x).exp() * erfcx_cf(x)
    }
}

/// Scaled complementary error function `e^{x²} erfc(x)`, for `x >= 0`.
///
/// Stays finite where `erfc` underflows, which keeps normal tail ratios
/// computable far from the mean.
pub fn erfcx(x: f64) -> f64 {
    debug_assert!(x >= 0.0 || x.is_nan(), "erfcx is only used on x >= 0");
    if x < SERIES_CUTOFF {
        (x * x).exp() * (1.0 - erf(x))
    } else {
        erfcx_cf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > sum * 1e-17 {
        n += 1.0;
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
    }
    FRAC_2_SQRT_PI * (-x * x).exp() * sum
}

/// `erfcx(x) = 1/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`,
/// evaluated with the modified Lentz algorithm.
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let a = n as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}
