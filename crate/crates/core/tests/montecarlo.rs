use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tunnelbp::analytic::{bp_iid_obstacles, bp_single_ris};
use tunnelbp::geometry::RisPlacement;
use tunnelbp::montecarlo::{estimate_bp, Z_999};
use tunnelbp::placement::even_placement;
use tunnelbp::{McConfig, ObstacleModel, TunnelGeometry};

fn cfg(n_samples: u64, seed: u64) -> McConfig {
    McConfig { n_samples, seed }
}

#[test]
fn analytic_inside_wide_interval_for_random_scenes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut misses = 0;
    for i in 0..40 {
        let h = rng.random_range(2.0..8.0);
        let g = TunnelGeometry::new(
            h,
            rng.random_range(0.05..0.95) * h,
            rng.random_range(0.05..0.95) * h,
            rng.random_range(5.0..300.0),
        )
        .unwrap();
        let z = rng.random_range(0.0..1.5) * g.z_r();
        let want = bp_single_ris(&g, z).unwrap().value();
        let est = estimate_bp(
            &g,
            &RisPlacement::single(z).unwrap(),
            &ObstacleModel::UniformSingle,
            cfg(100_000, i),
        )
        .unwrap();
        if !est.contains(want, Z_999) {
            misses += 1;
        }
    }
    assert!(misses <= 1, "{misses} misses");
}

#[test]
fn iid_estimate_matches_composition() {
    let g = TunnelGeometry::new(4.0, 3.5, 2.5, 100.0).unwrap();
    let ris = RisPlacement::single(40.0).unwrap();
    let p1 = bp_single_ris(&g, 40.0).unwrap();
    let want = bp_iid_obstacles(p1, 5).unwrap().value();
    let est = estimate_bp(&g, &ris, &ObstacleModel::iid(5).unwrap(), cfg(400_000, 3)).unwrap();
    assert!(est.contains(want, Z_999), "{est:?} vs {want}");
}

#[test]
fn identical_inputs_identical_estimates() {
    let g = TunnelGeometry::new(4.0, 2.0, 2.0, 100.0).unwrap();
    let ris = RisPlacement::new(vec![10.0, 70.0]).unwrap();
    let model = ObstacleModel::iid(3).unwrap();
    let a = estimate_bp(&g, &ris, &model, cfg(50_001, 99)).unwrap();
    let b = estimate_bp(&g, &ris, &model, cfg(50_001, 99)).unwrap();
    assert_eq!(a, b);
    let c = estimate_bp(&g, &ris, &model, cfg(50_001, 100)).unwrap();
    assert_ne!(a.blocked, c.blocked);
}

#[test]
fn more_surfaces_never_block_more() {
    let g = TunnelGeometry::new(4.0, 3.5, 2.5, 100.0).unwrap();
    let model = ObstacleModel::UniformSingle;
    let mut last = u64::MAX;
    for n in 1..=8 {
        let ris = even_placement(n, 12.5, 0.0).unwrap();
        let est = estimate_bp(&g, &ris, &model, cfg(100_000, 5)).unwrap();
        assert!(est.blocked <= last, "n_ris={n}");
        last = est.blocked;
    }
}
