//! Closed forms against the envelope-area oracle.

use proptest::prelude::*;
use tunnelbp::analytic::{bp_no_ris, bp_segment_terms, bp_single_ris, bp_two_ris};
use tunnelbp::geometry::{classify_case, oracle_bp, RisPlacement};
use tunnelbp::{CaseId, TunnelGeometry};

const TOL: f64 = 1e-9;

prop_compose! {
    fn scene()(h in 1.0..10.0f64, ft in 0.02..0.98f64, fr in 0.02..0.98f64, z_r in 1.0..500.0f64)
        -> TunnelGeometry {
        TunnelGeometry::new(h, ft * h, fr * h, z_r).unwrap()
    }
}

/// A scene and a RIS position, with the case picked first so that every
/// branch gets equal weight.
fn scene_in_case() -> impl Strategy<Value = (TunnelGeometry, f64, CaseId)> {
    (scene(), 0..5usize, 0.0..1.0f64).prop_map(|(g, pick, t)| {
        let (lo, hi) = (g.y_t().min(g.y_r()), g.y_t().max(g.y_r()));
        let g = match pick {
            2 => g.with_y_t(hi).unwrap().with_y_r(lo).unwrap(),
            3 | 4 => {
                let hi = if hi > lo { hi } else { (lo + g.h()) / 2.0 };
                g.with_y_t(lo).unwrap().with_y_r(hi).unwrap()
            }
            _ => g,
        };
        let (z_f, z_r) = (g.z_f(), g.z_r());
        let z = match pick {
            0 => t * z_f,
            1 => z_f + (1.0 - t) * (z_r - z_f),
            2 => z_r * (1.0 + 2.0 * (1.0 - t)),
            3 => z_r + (1.0 - t) * (g.z_n().unwrap() - z_r),
            _ => g.z_n().unwrap() * (1.0 + t) + 1e-6,
        };
        (g, z, CaseId::ALL[pick])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn single_ris_matches_oracle((g, z, case) in scene_in_case()) {
        prop_assume!(classify_case(&g, z) == case);
        let closed = bp_single_ris(&g, z).unwrap().value();
        let oracle = oracle_bp(&g, &RisPlacement::single(z).unwrap());
        prop_assert!((closed - oracle).abs() <= TOL, "{g:?} z={z} {closed} vs {oracle}");
    }

    #[test]
    fn segment_terms_sum_to_closed_form((g, z, _) in scene_in_case()) {
        let sum: f64 = bp_segment_terms(&g, z).unwrap().iter().map(|p| p.value()).sum();
        prop_assert!((sum - bp_single_ris(&g, z).unwrap().value()).abs() <= TOL);
    }

    #[test]
    fn ris_never_hurts((g, z, _) in scene_in_case()) {
        prop_assert!(bp_single_ris(&g, z).unwrap().value() <= bp_no_ris(&g).value() + TOL);
    }

    #[test]
    fn two_ris_matches_oracle(g in scene(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let z1 = s * g.z_f() * (1.0 - 1e-9);
        let z2 = g.z_f() + (1.0 - t) * (g.z_r() - g.z_f());
        prop_assume!(z2 > g.z_f());
        let closed = bp_two_ris(&g, z1, z2).unwrap().value();
        let oracle = oracle_bp(&g, &RisPlacement::new(vec![z1, z2]).unwrap());
        prop_assert!((closed - oracle).abs() <= TOL, "{g:?} {z1} {z2}: {closed} vs {oracle}");
        let one = bp_single_ris(&g, z1).unwrap().value().min(bp_single_ris(&g, z2).unwrap().value());
        prop_assert!(closed <= one + TOL);
    }

    #[test]
    fn no_ris_matches_oracle(g in scene()) {
        let oracle = oracle_bp(&g, &RisPlacement::none());
        prop_assert!((bp_no_ris(&g).value() - oracle).abs() <= TOL);
    }
}

#[test]
fn case4_above_zn_is_exactly_no_ris() {
    let g = TunnelGeometry::new(4.0, 1.0, 3.0, 60.0).unwrap();
    let z_n = g.z_n().unwrap();
    for k in 1..50 {
        let z = z_n + k as f64 * 3.7;
        assert_eq!(classify_case(&g, z), CaseId::Case4AboveZn);
        assert_eq!(bp_single_ris(&g, z).unwrap(), bp_no_ris(&g));
    }
}
