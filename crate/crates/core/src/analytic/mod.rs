//! Closed-form blocking probabilities.
//!
//! All single-obstacle results assume the obstacle height is uniform on
//! `(0, h)` and its location uniform on `(0, z_r)`, so every formula is
//! `C = 1/(h z_r)` times the area between the ceiling and the path
//! envelope. The per-case formulas are evaluated only on the domain where
//! they are singularity-free; [`classify_case`] picks the formula first.

mod dtnd;
mod segments;
pub mod special;

pub use dtnd::DtndParams;
pub use segments::bp_segment_terms;
pub use special::{erf, erfc, erfcx};

use crate::error::{BpError, Result};
use crate::geometry::{classify_case, CaseGeometry, CaseId, TunnelGeometry};

/// Raw closed-form output may stray this far outside `[0, 1]` before it is
/// treated as a bug rather than rounding.
pub const RANGE_TOL: f64 = 1e-9;

/// A value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(BpError::OutOfRange { value })
        }
    }

    /// Accepts raw formula output, clamping excursions up to [`RANGE_TOL`].
    pub fn from_raw(value: f64) -> Result<Self> {
        if value.is_nan() || !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&value) {
            return Err(BpError::OutOfRange { value });
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Statistical description of the obstacles in one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObstacleModel {
    /// One obstacle, uniform height on `(0, h)` and location on `(0, z_r)`.
    UniformSingle,
    /// `count` i.i.d. copies of [`ObstacleModel::UniformSingle`].
    UniformIid { count: u32 },
    /// Two obstacles at fixed locations with i.i.d. truncated-normal heights.
    DtndFixedPositions {
        d_o1: f64,
        d_o2: f64,
        params: DtndParams,
    },
}

impl ObstacleModel {
    pub fn iid(count: u32) -> Result<Self> {
        if count == 0 {
            return Err(BpError::InvalidModel("obstacle count must be >= 1".into()));
        }
        Ok(Self::UniformIid { count })
    }

    /// Obstacle count growing linearly with the receiver distance.
    pub fn iid_from_ratio(k_r: f64, z_r: f64) -> Result<Self> {
        Self::iid(obstacle_count(k_r, z_r)?)
    }
}

/// `N = ⌈z_r k_r⌉`, ignoring float noise below 1e-9 around an integer.
pub fn obstacle_count(k_r: f64, z_r: f64) -> Result<u32> {
    if !(k_r.is_finite() && k_r > 0.0 && z_r.is_finite() && z_r > 0.0) {
        return Err(BpError::InvalidModel(format!(
            "obstacle ratio needs k_r > 0 and z_r > 0 (got k_r={k_r}, z_r={z_r})"
        )));
    }
    let x = z_r * k_r;
    let nearest = x.round();
    let n = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    if n > u32::MAX as f64 {
        return Err(BpError::InvalidModel(format!(
            "obstacle count {n} too large"
        )));
    }
    Ok((n as u32).max(1))
}

/// Area term of the specular path alone on `(0, z_r)`.
fn snell_only(geom: &TunnelGeometry, cg: &CaseGeometry) -> f64 {
    let (h, y_r, z_r) = (geom.h(), geom.y_r(), geom.z_r());
    let (z_f, c) = (cg.z_f, cg.c);
    let k2 = cg.k2.expect("z_F > 0 for y_t < h");
    let k3 = cg.k3.expect("z_F < z_r");
    c * ((-h + y_r - k3 * z_r) * z_f + (k3 + k2) * z_f * z_f / 2.0)
        + c * ((h - y_r) * z_r + k3 * z_r * z_r / 2.0)
}

/// Blocking probability with no RIS installed.
pub fn bp_no_ris(geom: &TunnelGeometry) -> Probability {
    let cg = CaseGeometry::new(geom, f64::INFINITY);
    Probability::from_raw(snell_only(geom, &cg)).expect("specular area lies in [0, 1]")
}

/// Blocking probability with one RIS at `z_ris`.
pub fn bp_single_ris(geom: &TunnelGeometry, z_ris: f64) -> Result<Probability> {
    if !(z_ris.is_finite() && z_ris >= 0.0) {
        return Err(BpError::Domain(format!("z_R >= 0 (got {z_ris})")));
    }
    let case = classify_case(geom, z_ris);
    let raw = single_ris_raw(geom, z_ris, case);
    Probability::from_raw(raw)
}

/// Unclamped closed form for a known case.
pub(crate) fn single_ris_raw(geom: &TunnelGeometry, z_ris: f64, case: CaseId) -> f64 {
    let (h, y_t, y_r, z_r) = (geom.h(), geom.y_t(), geom.y_r(), geom.z_r());
    let cg = CaseGeometry::new(geom, z_ris);
    let (z_f, c) = (cg.z_f, cg.c);
    let k2 = cg.k2.expect("z_F > 0 for y_t < h");
    let k3 = cg.k3.expect("z_F < z_r");
    match case {
        CaseId::Case1 => {
            let k1 = cg.k1.expect("z_R <= z_F < z_r");
            let cross = -k2 * z_f + k1 * z_ris;
            c * ((h - y_t) * z_ris - k1 * z_ris * z_ris + cross * cross / (k1 - k2)) / 2.0
                + c * ((h - y_r) * z_r + z_f * (y_r - y_t)) / 2.0
        }
        CaseId::Case2 => {
            let k0 = cg.k0.expect("z_R > z_F > 0");
            let lift = y_t - y_r + k3 * z_r;
            c * ((-h + y_r - k3 * z_r) * z_f
                + (k2 + k3) * z_f * z_f / 2.0
                + lift * lift / (2.0 * (k3 - k0)))
                + c / 2.0 * ((h - y_t) * z_ris - (z_ris - z_r) * (h - y_r))
        }
        CaseId::Case3 | CaseId::Case4BelowZn => {
            let k0 = cg.k0.expect("z_R > z_r > 0");
            let lift = y_t - y_r + k3 * z_r;
            c * ((-h + y_r - k3 * z_r) * z_f + (k2 + k3) * z_f * z_f / 2.0)
                + c * (lift * lift / (2.0 * (k3 - k0)) + (h - y_t) * z_r - k0 * z_r * z_r / 2.0)
        }
        CaseId::Case4AboveZn => snell_only(geom, &cg),
    }
}

/// Blocking probability with two RISs, one on each side of the specular
/// reflection point: `0 <= z_R1 < z_F < z_R2 <= z_r`.
pub fn bp_two_ris(geom: &TunnelGeometry, z_ris1: f64, z_ris2: f64) -> Result<Probability> {
    let (h, y_t, y_r, z_r) = (geom.h(), geom.y_t(), geom.y_r(), geom.z_r());
    let z_f = geom.z_f();
    if z_ris1.is_nan() || z_ris2.is_nan() {
        return Err(BpError::Domain(format!(
            "RIS positions must be numbers (got z_R1={z_ris1}, z_R2={z_ris2})"
        )));
    }
    if z_ris1 < 0.0 {
        return Err(BpError::Domain(format!("0 <= z_R1 (got z_R1={z_ris1})")));
    }
    if z_ris1 >= z_f {
        return Err(BpError::Domain(format!(
            "z_R1 < z_F (got z_R1={z_ris1}, z_F={z_f})"
        )));
    }
    if z_ris2 <= z_f {
        return Err(BpError::Domain(format!(
            "z_F < z_R2 (got z_F={z_f}, z_R2={z_ris2})"
        )));
    }
    if z_ris2 > z_r {
        return Err(BpError::Domain(format!(
            "z_R2 <= z_r (got z_R2={z_ris2}, z_r={z_r})"
        )));
    }
    let c = geom.normalizer();
    let k2 = (h - y_t) / z_f;
    let k3 = (y_r - h) / (z_r - z_f);
    let k1 = (h - y_r) / (z_ris1 - z_r);
    let k0 = (h - y_t) / z_ris2;

    let cross = k1 * z_ris1 - k2 * z_f;
    let near = c * ((h - y_t) * z_ris1 / 2.0 - k1 * z_ris1 * z_ris1 / 2.0)
        + c * (cross * cross / (2.0 * (k1 - k2)) + k2 * z_f * z_f / 2.0);
    let lift = -y_r + k3 * z_r + y_t;
    let far = c * (lift * lift / (2.0 * (k3 - k0)) - (h - y_r + k3 * z_r) * z_f)
        + c * (k3 * z_f * z_f / 2.0 + (h - y_t) * z_ris2
            - (k0 * z_ris2 * z_ris2 + (z_ris2 - z_r) * (h - y_r)) / 2.0);
    Probability::from_raw(near + far)
}

/// Probability that at least one of `n` independent obstacles blocks.
pub fn bp_iid_obstacles(bp_one: Probability, n: u32) -> Result<Probability> {
    if n == 0 {
        return Err(BpError::InvalidModel("obstacle count must be >= 1".into()));
    }
    let survive = (1.0 - bp_one.value()).powi(n.min(i32::MAX as u32) as i32);
    Probability::from_raw(1.0 - survive)
}

/// Two obstacles at fixed locations on the RIS path, heights truncated
/// normal on `[0, h]`. Valid for a case-1 RIS with
/// `0 < d_o1 < z_R < d_o2 < z_C1`.
pub fn bp_dtnd_two_obstacles(
    geom: &TunnelGeometry,
    z_ris: f64,
    d_o1: f64,
    d_o2: f64,
    params: &DtndParams,
) -> Result<Probability> {
    if classify_case(geom, z_ris) != CaseId::Case1 {
        return Err(BpError::Domain(format!(
            "RIS must satisfy 0 <= z_R <= z_F (got z_R={z_ris}, z_F={})",
            geom.z_f()
        )));
    }
    if !(d_o1 > 0.0 && d_o1 < z_ris) {
        return Err(BpError::Domain(format!(
            "0 < d_o1 < z_R (got d_o1={d_o1}, z_R={z_ris})"
        )));
    }
    let cg = CaseGeometry::new(geom, z_ris);
    let z_c1 = cg.z_c1.expect("case-1 crossing exists");
    if !(d_o2 > z_ris && d_o2 < z_c1) {
        return Err(BpError::Domain(format!(
            "z_R < d_o2 < z_C1 (got d_o2={d_o2}, z_R={z_ris}, z_C1={z_c1})"
        )));
    }
    if (params.b() - geom.h()).abs() > 1e-12 * geom.h() || params.a() != 0.0 {
        return Err(BpError::InvalidModel(
            "height distribution must be truncated to [0, h]".into(),
        ));
    }
    let k0 = cg.k0.expect("z_R > d_o1 > 0");
    let k1 = cg.k1.expect("z_R < z_r");
    let pass1 = params.cdf(k0 * d_o1 + geom.y_t());
    let pass2 = params.cdf(k1 * d_o2 + geom.h() - k1 * z_ris);
    Probability::from_raw(1.0 - pass1 * pass2)
}

/// Rate at which blocking falls per meter of RIS offset when the
/// transmitter is at ceiling level and the RIS is before the receiver.
pub fn corollary1_rate(geom: &TunnelGeometry) -> f64 {
    geom.normalizer() * (geom.h() - geom.y_r()) / 2.0
}

/// Blocking probability with the RIS directly above the transmitter,
/// which does not depend on `z_r`.
pub fn corollary2_bp(geom: &TunnelGeometry) -> Result<Probability> {
    let (h, y_t, y_r) = (geom.h(), geom.y_t(), geom.y_r());
    let raw = (h - y_t).powi(2) / (2.0 * h * (2.0 * y_r - 3.0 * h + y_t))
        + (h - y_r) / (2.0 * h)
        + (y_r - y_t) * (y_t - h) / (2.0 * h * (y_r + y_t - 2.0 * h));
    Probability::from_raw(raw)
}

/// `P(SNR > γ) = 1 - BP` when only RIS-assisted paths carry the signal.
pub fn coverage_probability(bp: Probability) -> Probability {
    bp.complement()
}
