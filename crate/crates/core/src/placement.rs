//! RIS position and transmitter height selection.
//!
//! The objective is the closed-form single-RIS blocking probability. Each
//! search is a grid scan followed by golden-section refinement inside the
//! bracket around the best grid point. The bracket is first cut at every
//! case boundary so each refinement runs on one closed-form branch, and the
//! branch winners are compared by value.

use crate::analytic::{bp_single_ris, Probability};
use crate::error::{BpError, Result};
use crate::geometry::{RisPlacement, TunnelGeometry};

pub const DEFAULT_GRID_STEP: f64 = 1.0;
/// Golden-section stopping width, meters.
pub const REFINE_TOL: f64 = 1e-3;
/// Bisection stopping width for effective-range endpoints, meters.
pub const RANGE_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult {
    pub argmin: f64,
    pub bp_at_argmin: Probability,
    /// Every grid point with its objective value.
    pub scan: Vec<(f64, Probability)>,
}

/// Scan range that reaches every single-RIS case, both case-4 branches
/// included: `max(1.2 z_r, z_N + 1)`.
pub fn default_z_max(geom: &TunnelGeometry) -> f64 {
    let base = 1.2 * geom.z_r();
    match geom.z_n() {
        Some(z_n) => base.max(z_n + 1.0),
        None => base,
    }
}

/// Best RIS position on `[0, z_max]`.
pub fn optimize_single_ris(
    geom: &TunnelGeometry,
    z_max: f64,
    grid_step: f64,
) -> Result<PlacementResult> {
    if !(z_max.is_finite() && z_max > 0.0) {
        return Err(BpError::InvalidArgument(format!("z_max > 0 (got {z_max})")));
    }
    let grid = closed_grid(0.0, z_max, grid_step)?;
    let mut breaks = vec![geom.z_f(), geom.z_r()];
    breaks.extend(geom.z_n());
    let objective = |z: f64| bp_single_ris(geom, z);
    search(&grid, &breaks, objective)
}

/// Best transmitter height in `(0, h)` for a RIS fixed at `z_ris`; the
/// template's own `y_t` is ignored.
pub fn optimize_tx_height(
    template: &TunnelGeometry,
    z_ris: f64,
    grid_step: f64,
) -> Result<PlacementResult> {
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(BpError::InvalidArgument(format!(
            "grid_step > 0 (got {grid_step})"
        )));
    }
    let h = template.h();
    let grid: Vec<f64> = (1..)
        .map(|i| i as f64 * grid_step)
        .take_while(|&y| y < h)
        .collect();
    if grid.is_empty() {
        return Err(BpError::InvalidArgument(format!(
            "grid_step {grid_step} leaves no transmitter height inside (0, {h})"
        )));
    }
    let objective =
        |y_t: f64| -> Result<Probability> { bp_single_ris(&template.with_y_t(y_t)?, z_ris) };
    if grid.len() == 1 {
        let bp = objective(grid[0])?;
        return Ok(PlacementResult {
            argmin: grid[0],
            bp_at_argmin: bp,
            scan: vec![(grid[0], bp)],
        });
    }
    search(&grid, &tx_height_breaks(template, z_ris), objective)
}

/// Transmitter heights where the case of a RIS at `z_ris` changes.
fn tx_height_breaks(template: &TunnelGeometry, z_ris: f64) -> Vec<f64> {
    let (h, y_r, z_r) = (template.h(), template.y_r(), template.z_r());
    let mut breaks = Vec::new();
    if z_ris != z_r {
        // z_F(y_t) = z_ris
        breaks.push((z_ris * (2.0 * h - y_r) - z_r * h) / (z_ris - z_r));
    }
    if z_ris > z_r {
        breaks.push(y_r);
        // z_N(y_t) = z_ris
        breaks.push(y_r - (h - y_r) * z_r / (z_ris - z_r));
    }
    breaks.retain(|&y| y > 0.0 && y < h);
    breaks
}

/// Receiver distances in `(0, z_r_max]` where a RIS at `z_ris` keeps the
/// blocking probability strictly below `threshold`; the template's own
/// `z_r` is ignored. Intervals are sorted and disjoint; a lower end of 0
/// stands for the open domain boundary.
pub fn effective_range(
    template: &TunnelGeometry,
    z_ris: f64,
    threshold: f64,
    z_r_max: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(BpError::InvalidArgument(format!(
            "threshold must lie in [0, 1] (got {threshold})"
        )));
    }
    if !(z_r_max.is_finite() && z_r_max > 0.0) {
        return Err(BpError::InvalidArgument(format!(
            "z_r_max > 0 (got {z_r_max})"
        )));
    }
    let bp =
        |z_r: f64| -> Result<f64> { Ok(bp_single_ris(&template.with_z_r(z_r)?, z_ris)?.value()) };
    let inside = |z_r: f64| -> Result<bool> { Ok(bp(z_r)? < threshold) };

    let n = ((z_r_max / 0.25).ceil() as usize).max(400);
    let grid: Vec<f64> = (1..=n).map(|i| z_r_max * i as f64 / n as f64).collect();
    let flags = grid
        .iter()
        .map(|&z| inside(z))
        .collect::<Result<Vec<_>>>()?;

    // Boundary between an inside and an outside grid point.
    let locate = |mut a: f64, mut b: f64, a_inside: bool| -> Result<f64> {
        while b - a > RANGE_TOL * 1e-2 {
            let mid = 0.5 * (a + b);
            if inside(mid)? == a_inside {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    };

    let mut intervals = Vec::new();
    let mut start = flags[0].then_some(0.0);
    for i in 1..n {
        match (flags[i - 1], flags[i]) {
            (false, true) => start = Some(locate(grid[i - 1], grid[i], false)?),
            (true, false) => {
                let end = locate(grid[i - 1], grid[i], true)?;
                intervals.push((start.take().unwrap_or(0.0), end));
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        intervals.push((s, z_r_max));
    }
    Ok(intervals)
}

/// `n_ris` RISs at `start + k · interval`.
pub fn even_placement(n_ris: usize, interval: f64, start: f64) -> Result<RisPlacement> {
    if n_ris == 0 {
        return Err(BpError::InvalidArgument("n_ris must be >= 1".into()));
    }
    if !(interval.is_finite() && interval > 0.0) {
        return Err(BpError::InvalidArgument(format!(
            "interval > 0 (got {interval})"
        )));
    }
    RisPlacement::new((0..n_ris).map(|k| start + k as f64 * interval).collect())
}

fn closed_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(BpError::InvalidArgument(format!(
            "grid_step > 0 (got {step})"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    if hi - grid[n] > 1e-9 * step {
        grid.push(hi);
    }
    Ok(grid)
}

fn search<F>(grid: &[f64], breaks: &[f64], objective: F) -> Result<PlacementResult>
where
    F: Fn(f64) -> Result<Probability>,
{
    let scan = grid
        .iter()
        .map(|&x| Ok((x, objective(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let (best_i, _) = scan
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.value().total_cmp(&b.1 .1.value()))
        .expect("non-empty grid");
    let (mut arg, mut val) = (scan[best_i].0, scan[best_i].1);

    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&b| b > lo && b < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    let mut edges = vec![lo];
    edges.extend(cuts);
    edges.push(hi);

    for w in edges.windows(2) {
        let f = |x: f64| objective(x).map(|p| p.value());
        for (x, v) in [
            golden_section(&f, w[0], w[1])?,
            (w[0], f(w[0])?),
            (w[1], f(w[1])?),
        ] {
            if v < val.value() {
                arg = x;
                val = Probability::from_raw(v)?;
            }
        }
    }
    Ok(PlacementResult {
        argmin: arg,
        bp_at_argmin: val,
        scan,
    })
}

/// Minimum of a unimodal `f` on the open interval `(a, b)`.
fn golden_section<F>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > REFINE_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}
