//! Per-point evaluation and CSV sweeps.

use std::fmt::Write as _;

use tunnelbp::analytic::{
    bp_dtnd_two_obstacles, bp_iid_obstacles, bp_no_ris, bp_single_ris, bp_two_ris, obstacle_count,
};
use tunnelbp::geometry::classify_case;
use tunnelbp::montecarlo::estimate_bp;
use tunnelbp::{
    BpError, BpEstimate, DtndParams, McConfig, ObstacleModel, RisPlacement, TunnelGeometry,
};

use crate::error::{CliError, Result};
use crate::numfmt::g9;
use crate::scenario::{Axis, ObstacleSpec, RisSpec, Scenario};

pub const HEADER: &str = "axis,analytic_bp,mc_mean,mc_ci_low,mc_ci_high,case";

/// One evaluated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: Option<f64>,
    /// Closed-form value, absent when no formula covers the configuration.
    pub analytic: Option<f64>,
    pub mc: Option<BpEstimate>,
    pub case: String,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(g9).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            opt(self.axis),
            opt(self.analytic),
            opt(self.mc.map(|e| e.mean.value())),
            opt(self.mc.map(|e| e.ci_low.value())),
            opt(self.mc.map(|e| e.ci_high.value())),
            self.case
        )
    }
}

/// The scenario with the sweep axis pinned to `value`.
pub fn at_axis(s: &Scenario, axis: Axis, value: f64) -> Result<Scenario> {
    let mut p = s.clone();
    p.sweep = None;
    let g = &s.geometry;
    match axis {
        Axis::ZR => match &s.ris {
            RisSpec::List(r) if r.len() <= 1 => p.ris = RisSpec::List(RisPlacement::single(value)?),
            _ => return Err(axis_needs(axis, "at most one RIS position")),
        },
        Axis::ZR1 | Axis::ZR2 => match &s.ris {
            RisSpec::List(r) if r.len() == 2 => {
                let mut pos = r.positions().to_vec();
                pos[if axis == Axis::ZR1 { 0 } else { 1 }] = value;
                p.ris = RisSpec::List(RisPlacement::from_unsorted(pos)?);
            }
            _ => return Err(axis_needs(axis, "exactly two RIS positions")),
        },
        Axis::Yt => p.geometry = g.with_y_t(value)?,
        Axis::Yr => p.geometry = g.with_y_r(value)?,
        Axis::Zr => p.geometry = g.with_z_r(value)?,
        Axis::H => p.geometry = g.with_h(value)?,
        Axis::NRis => match s.ris {
            RisSpec::Even {
                interval, start, ..
            } => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(CliError::Invalid(format!(
                        "n_ris values must be integers >= 1 (got {value})"
                    )));
                }
                p.ris = RisSpec::Even {
                    n: value as usize,
                    interval,
                    start,
                };
            }
            _ => return Err(axis_needs(axis, "`ris = even:<n>:<interval>:<start>`")),
        },
        Axis::Sigma | Axis::U | Axis::DO1 | Axis::DO2 => match s.obstacles {
            ObstacleSpec::Dtnd {
                mut u,
                mut sigma,
                mut d_o1,
                mut d_o2,
            } => {
                match axis {
                    Axis::Sigma => sigma = value,
                    Axis::U => u = value,
                    Axis::DO1 => d_o1 = value,
                    _ => d_o2 = value,
                }
                p.obstacles = ObstacleSpec::Dtnd {
                    u,
                    sigma,
                    d_o1,
                    d_o2,
                };
            }
            _ => return Err(axis_needs(axis, "`obstacles = dtnd:...`")),
        },
    }
    Ok(p)
}

fn axis_needs(axis: Axis, what: &str) -> CliError {
    CliError::Invalid(format!("sweep axis `{}` requires {what}", axis.name()))
}

/// Obstacle model resolved against the scene.
pub fn obstacle_model(spec: ObstacleSpec, geom: &TunnelGeometry) -> Result<ObstacleModel> {
    Ok(match spec {
        ObstacleSpec::Uniform => ObstacleModel::UniformSingle,
        ObstacleSpec::Iid(n) => ObstacleModel::iid(n)?,
        ObstacleSpec::IidRatio(k) => ObstacleModel::iid_from_ratio(k, geom.z_r())?,
        ObstacleSpec::Dtnd {
            u,
            sigma,
            d_o1,
            d_o2,
        } => ObstacleModel::DtndFixedPositions {
            d_o1,
            d_o2,
            params: DtndParams::new(u, sigma, geom.h())?,
        },
    })
}

/// Closed-form blocking probability and case label of a sweep-free
/// scenario.
pub fn analytic(s: &Scenario) -> Result<(Option<f64>, String)> {
    let g = &s.geometry;
    let ris = s.ris.placement()?;
    let pos = ris.positions();
    let (one, case) = match pos {
        [] => (Some(bp_no_ris(g)), "no_ris".to_string()),
        [z] => (
            Some(bp_single_ris(g, *z)?),
            classify_case(g, *z).as_str().to_string(),
        ),
        [z1, z2] => (domain_ok(bp_two_ris(g, *z1, *z2))?, "two_ris".to_string()),
        _ => (None, "multi_ris".to_string()),
    };
    let value = match s.obstacles {
        ObstacleSpec::Uniform => one,
        ObstacleSpec::Iid(n) => one.map(|p| bp_iid_obstacles(p, n)).transpose()?,
        ObstacleSpec::IidRatio(k) => {
            let n = obstacle_count(k, g.z_r())?;
            one.map(|p| bp_iid_obstacles(p, n)).transpose()?
        }
        ObstacleSpec::Dtnd {
            u,
            sigma,
            d_o1,
            d_o2,
        } => {
            let params = DtndParams::new(u, sigma, g.h())?;
            match pos {
                [z] => domain_ok(bp_dtnd_two_obstacles(g, *z, d_o1, d_o2, &params))?,
                _ => None,
            }
        }
    };
    Ok((value.map(|p| p.value()), case))
}

/// Maps "outside the formula's domain" to an absent value.
fn domain_ok<T>(r: tunnelbp::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(BpError::Domain(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Monte-Carlo estimate of a sweep-free scenario, or `None` when
/// `samples = 0`.
pub fn monte_carlo(s: &Scenario) -> Result<Option<BpEstimate>> {
    if s.samples == 0 {
        return Ok(None);
    }
    let model = obstacle_model(s.obstacles, &s.geometry)?;
    let cfg = McConfig {
        n_samples: s.samples,
        seed: s.seed,
    };
    Ok(Some(estimate_bp(
        &s.geometry,
        &s.ris.placement()?,
        &model,
        cfg,
    )?))
}

pub fn evaluate(s: &Scenario, axis: Option<f64>) -> Result<SweepRow> {
    let (analytic, case) = analytic(s)?;
    Ok(SweepRow {
        axis,
        analytic,
        mc: monte_carlo(s)?,
        case,
    })
}

/// Rows of the scenario's sweep, or its single point when it has none.
pub fn sweep_rows(s: &Scenario) -> Result<Vec<SweepRow>> {
    let Some(sweep) = s.sweep else {
        return Ok(vec![evaluate(s, None)?]);
    };
    let values = sweep.values();
    if values.is_empty() {
        return Err(CliError::Invalid(format!(
            "sweep `{}` from {} to {} is empty",
            sweep.axis.name(),
            sweep.start,
            sweep.stop
        )));
    }
    values
        .into_iter()
        .map(|v| evaluate(&at_axis(s, sweep.axis, v)?, Some(v)))
        .collect()
}

/// CSV for the scenario's sweep: the fixed header and one row per value.
pub fn run_sweep(s: &Scenario) -> Result<String> {
    if s.sweep.is_none() {
        return Err(CliError::Invalid("scenario has no `sweep` key".into()));
    }
    let mut out = String::new();
    write_rows(&mut out, &sweep_rows(s)?);
    Ok(format!("{HEADER}\n{out}"))
}

pub(crate) fn write_rows(out: &mut String, rows: &[SweepRow]) {
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv());
    }
}
