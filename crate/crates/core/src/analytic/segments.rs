//! Per-situation decomposition of the single-RIS blocking probability.
//!
//! The obstacle location range `(0, z_r)` is split at the points where the
//! envelope switches between line pieces; each piece contributes
//! `C ∫ (h - f(z)) dz` for its own threshold line `f`.

use super::Probability;
use crate::error::Result;
use crate::geometry::{classify_case, CaseGeometry, CaseId, TunnelGeometry};

/// `∫_{lo}^{hi} (h - f(z)) dz` for the line `f(z) = slope·z + (y_anchor - slope·z_anchor)`,
/// written as `(h - y_anchor + slope·z_anchor)(hi - lo) - slope (hi² - lo²)/2`.
fn line_term(h: f64, slope: f64, z_anchor: f64, y_anchor: f64, lo: f64, hi: f64) -> f64 {
    if hi == lo {
        return 0.0;
    }
    (h - y_anchor + slope * z_anchor) * (hi - lo) - slope * (hi * hi - lo * lo) / 2.0
}

/// Ordered per-situation terms for the case of `z_ris`; they sum to
/// [`super::bp_single_ris`].
///
/// Case 1 and case 2 have four terms, case 3 (and case 4 below `z_N`) three,
/// case 4 above `z_N` two. A term whose interval is empty is exactly 0 and
/// never touches the slope that would be singular there.
pub fn bp_segment_terms(geom: &TunnelGeometry, z_ris: f64) -> Result<Vec<Probability>> {
    if !(z_ris.is_finite() && z_ris >= 0.0) {
        return Err(crate::BpError::Domain(format!("z_R >= 0 (got {z_ris})")));
    }
    let (h, y_t, y_r, z_r) = (geom.h(), geom.y_t(), geom.y_r(), geom.z_r());
    let cg = CaseGeometry::new(geom, z_ris);
    let (z_f, c) = (cg.z_f, cg.c);
    let k2 = cg.k2.expect("z_F > 0 for y_t < h");
    let k3 = cg.k3.expect("z_F < z_r");

    // Threshold lines, each through a known point.
    let tx_f = |lo, hi| line_term(h, k2, z_f, h, lo, hi);
    let f_rx = |lo, hi| line_term(h, k3, z_r, y_r, lo, hi);
    let tx_ris = |lo, hi| match cg.k0 {
        Some(k0) => line_term(h, k0, 0.0, y_t, lo, hi),
        None => 0.0,
    };
    let ris_rx = |lo, hi| match cg.k1 {
        Some(k1) => line_term(h, k1, z_ris, h, lo, hi),
        None => 0.0,
    };

    let raw: Vec<f64> = match classify_case(geom, z_ris) {
        CaseId::Case1 => {
            let z_c1 = cg.z_c1.expect("case-1 crossing exists");
            vec![
                tx_ris(0.0, z_ris),
                ris_rx(z_ris, z_c1),
                tx_f(z_c1, z_f),
                f_rx(z_f, z_r),
            ]
        }
        CaseId::Case2 => {
            let z_c2 = cg.z_c2.expect("case-2 crossing exists");
            vec![
                tx_f(0.0, z_f),
                f_rx(z_f, z_c2),
                tx_ris(z_c2, z_ris),
                ris_rx(z_ris, z_r),
            ]
        }
        CaseId::Case3 | CaseId::Case4BelowZn => {
            let z_c3 = cg.z_c3.expect("case-3 crossing exists");
            vec![tx_f(0.0, z_f), f_rx(z_f, z_c3), tx_ris(z_c3, z_r)]
        }
        CaseId::Case4AboveZn => vec![tx_f(0.0, z_f), f_rx(z_f, z_r)],
    };
    raw.into_iter()
        .map(|t| Probability::from_raw(c * t))
        .collect()
}
