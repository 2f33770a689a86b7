//! Shared fixtures for the benchmarks.

use tunnelbp::{CaseId, TunnelGeometry};

/// The 4 m tunnel with Tx and Rx both at mid-height, 100 m apart.
pub fn symmetric() -> TunnelGeometry {
    TunnelGeometry::new(4.0, 2.0, 2.0, 100.0).unwrap()
}

/// One scene and RIS position per single-RIS case.
pub fn case_fixtures() -> Vec<(CaseId, TunnelGeometry, f64)> {
    let high = TunnelGeometry::new(4.0, 3.5, 2.5, 100.0).unwrap();
    let low = TunnelGeometry::new(4.0, 2.0, 2.5, 100.0).unwrap();
    vec![
        (CaseId::Case1, high, 10.0),
        (CaseId::Case2, high, 60.0),
        (CaseId::Case3, high, 150.0),
        (CaseId::Case4BelowZn, low, 200.0),
        (CaseId::Case4AboveZn, low, 500.0),
    ]
}
