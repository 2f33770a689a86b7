use tunnelbp::analytic::{
    bp_dtnd_two_obstacles, bp_iid_obstacles, bp_no_ris, bp_single_ris, corollary1_rate,
    corollary2_bp,
};
use tunnelbp::geometry::{oracle_bp, RisPlacement};
use tunnelbp::placement::{effective_range, optimize_single_ris, optimize_tx_height};
use tunnelbp::{DtndParams, Probability, TunnelGeometry};

fn geom(h: f64, y_t: f64, y_r: f64, z_r: f64) -> TunnelGeometry {
    TunnelGeometry::new(h, y_t, y_r, z_r).unwrap()
}

#[test]
fn ceiling_tx_is_affine_in_ris_offset() {
    for (h, y_r, z_r) in [(4.0, 2.0, 100.0), (6.0, 1.0, 30.0), (3.0, 2.9, 250.0)] {
        let g = geom(h, h - 1e-9, y_r, z_r);
        let rate = corollary1_rate(&g);
        let b0 = bp_single_ris(&g, 0.0).unwrap().value();
        for i in 0..=200 {
            let z = z_r * i as f64 / 200.0;
            let bp = bp_single_ris(&g, z).unwrap().value();
            assert!((bp - (b0 - rate * z)).abs() <= 1e-6, "h={h} z={z}");
        }
    }
}

#[test]
fn tx_mounted_ris_ignores_receiver_distance() {
    let g = geom(4.0, 1.5, 3.0, 10.0);
    let want = corollary2_bp(&g).unwrap().value();
    for z_r in [1.0, 17.0, 100.0, 900.0] {
        let g = g.with_z_r(z_r).unwrap();
        assert!((bp_single_ris(&g, 0.0).unwrap().value() - want).abs() < 1e-12);
        assert!((oracle_bp(&g, &RisPlacement::single(0.0).unwrap()) - want).abs() < 1e-9);
    }
}

#[test]
fn tall_tunnel_limits() {
    let g = geom(1e6, 2.0, 2.0, 100.0);
    assert!((bp_single_ris(&g, 0.0).unwrap().value() - 1.0 / 3.0).abs() < 1e-3);
    assert!((bp_no_ris(&g).value() - 0.5).abs() < 1e-3);
}

#[test]
fn iid_composition_is_monotone_in_count() {
    let p = Probability::new(0.13).unwrap();
    let mut last = 0.0;
    for n in 1..40 {
        let v = bp_iid_obstacles(p, n).unwrap().value();
        assert!(v > last);
        last = v;
    }
}

#[test]
fn dtnd_monotone_in_mean_and_spread() {
    let g = geom(4.0, 3.5, 2.5, 100.0);
    let bp = |u: f64, s: f64, d1: f64| {
        let params = DtndParams::new(u, s, 4.0).unwrap();
        bp_dtnd_two_obstacles(&g, 15.0, d1, 20.0, &params)
            .unwrap()
            .value()
    };
    for d1 in [5.0, 10.0] {
        let mut last = 0.0;
        for i in 0..=40 {
            let u = -2.0 + 0.2 * i as f64;
            let v = bp(u, 1.0, d1);
            assert!(v >= last, "u={u}");
            last = v;
        }
        let mut last = 0.0;
        for i in 0..=19 {
            let s = 0.1 + 0.1 * i as f64;
            let v = bp(2.0, s, d1);
            assert!(v >= last, "sigma={s}");
            last = v;
        }
    }
    assert!((bp(2.0, 1.0, 10.0) - 0.0165).abs() <= 1e-3);
}

#[test]
fn placement_is_deterministic() {
    let g = geom(4.0, 3.5, 2.5, 100.0);
    assert_eq!(
        optimize_single_ris(&g, 120.0, 1.0).unwrap(),
        optimize_single_ris(&g, 120.0, 1.0).unwrap()
    );
    assert_eq!(
        optimize_tx_height(&g, 20.0, 0.25).unwrap(),
        optimize_tx_height(&g, 20.0, 0.25).unwrap()
    );
}

#[test]
fn optimum_within_scan_and_below_grid() {
    for (y_t, y_r) in [(0.5, 3.5), (3.9, 0.2), (2.0, 2.0), (1.0, 1.1)] {
        let g = geom(4.0, y_t, y_r, 80.0);
        let z_max = tunnelbp::placement::default_z_max(&g);
        let r = optimize_single_ris(&g, z_max, 1.0).unwrap();
        assert!((0.0..=z_max).contains(&r.argmin));
        for (_, bp) in &r.scan {
            assert!(r.bp_at_argmin <= *bp);
        }
        let at = bp_single_ris(&g, r.argmin).unwrap();
        assert_eq!(at, r.bp_at_argmin);
    }
}

#[test]
fn effective_range_endpoints_hit_threshold() {
    for (y_t, y_r, z_ris, thr) in [
        (3.5, 2.5, 60.0, 0.1),
        (1.0, 3.0, 10.0, 0.2),
        (2.0, 2.0, 30.0, 0.15),
    ] {
        let g = geom(4.0, y_t, y_r, 100.0);
        let z_r_max = 400.0;
        let ranges = effective_range(&g, z_ris, thr, z_r_max).unwrap();
        let mut prev_hi = -1.0;
        for &(lo, hi) in &ranges {
            assert!(lo > prev_hi && hi > lo);
            prev_hi = hi;
            for end in [lo, hi] {
                if end == 0.0 || end == z_r_max {
                    continue;
                }
                let bp = bp_single_ris(&g.with_z_r(end).unwrap(), z_ris)
                    .unwrap()
                    .value();
                assert!((bp - thr).abs() <= 1e-3, "end={end} bp={bp}");
            }
        }
    }
}
