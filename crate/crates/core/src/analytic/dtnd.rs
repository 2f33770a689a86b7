use std::f64::consts::SQRT_2;

use super::special::{erf, erfc, erfcx};
use crate::error::{BpError, Result};

/// Normal law with mean `u` and deviation `sigma`, truncated to `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtndParams {
    u: f64,
    sigma: f64,
    a: f64,
    b: f64,
}

impl DtndParams {
    /// Obstacle heights: truncated to `[0, h]`.
    pub fn new(u: f64, sigma: f64, h: f64) -> Result<Self> {
        Self::with_bounds(u, sigma, 0.0, h)
    }

    pub fn with_bounds(u: f64, sigma: f64, a: f64, b: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(BpError::InvalidModel(format!("sigma > 0 (got {sigma})")));
        }
        if !u.is_finite() {
            return Err(BpError::InvalidModel(format!(
                "mean must be finite (got {u})"
            )));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(BpError::InvalidModel(format!("a < b (got a={a}, b={b})")));
        }
        Ok(Self { u, sigma, a, b })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn standardize(&self, x: f64) -> f64 {
        (x - self.u) / self.sigma
    }

    /// `(erf(u/(√2σ)) - erf((u-x)/(√2σ))) / 2`: the untruncated normal mass
    /// on `[0, x]`, written directly in terms of `erf`.
    pub fn erf_mass(&self, x: f64) -> f64 {
        let s = SQRT_2 * self.sigma;
        (erf(self.u / s) - erf((self.u - x) / s)) / 2.0
    }

    /// Untruncated normal mass on `[a, b]`, i.e. the rejection-sampling
    /// acceptance rate. Tail-safe.
    pub fn mass(&self) -> f64 {
        let (lo, hi) = (self.standardize(self.a), self.standardize(self.b));
        if lo >= 0.0 {
            0.5 * (erfc(lo / SQRT_2) - erfc(hi / SQRT_2))
        } else if hi <= 0.0 {
            0.5 * (erfc(-hi / SQRT_2) - erfc(-lo / SQRT_2))
        } else {
            0.5 * (erf(hi / SQRT_2) - erf(lo / SQRT_2))
        }
    }

    /// CDF of the truncated law.
    ///
    /// Equals `erf_mass(x) / erf_mass(b)` for `a = 0`, but factors the
    /// dominant Gaussian tail out of numerator and denominator so the ratio
    /// stays finite when both underflow (mean many deviations outside
    /// `[a, b]`).
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.a {
            return 0.0;
        }
        if x >= self.b {
            return 1.0;
        }
        let lo = self.standardize(self.a);
        let mid = self.standardize(x);
        let hi = self.standardize(self.b);
        // e^{-(p² - q²)/2}, computed without forming the squares.
        let decay = |p: f64, q: f64| (-(p - q) * (p + q) / 2.0).exp();
        let v = if lo >= 0.0 {
            // Upper tails: Q(t) = ½ e^{-t²/2} erfcx(t/√2), scaled by e^{lo²/2}.
            let q_lo = erfcx(lo / SQRT_2);
            let num = q_lo - erfcx(mid / SQRT_2) * decay(mid, lo);
            let den = q_lo - erfcx(hi / SQRT_2) * decay(hi, lo);
            num / den
        } else if hi <= 0.0 {
            // Lower tails: Φ(t) = ½ e^{-t²/2} erfcx(-t/√2), scaled by e^{hi²/2}.
            let p_lo = erfcx(-lo / SQRT_2) * decay(lo, hi);
            let num = erfcx(-mid / SQRT_2) * decay(mid, hi) - p_lo;
            let den = erfcx(-hi / SQRT_2) - p_lo;
            num / den
        } else {
            (erf(mid / SQRT_2) - erf(lo / SQRT_2)) / (erf(hi / SQRT_2) - erf(lo / SQRT_2))
        };
        v.clamp(0.0, 1.0)
    }
}
