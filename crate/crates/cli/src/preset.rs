//! Built-in scenarios for the standard figure sweeps.
//!
//! Every value a preset has to assume is listed in its `assumptions` and
//! echoed as a `# assumption:` line ahead of the CSV.

use std::fmt::Write as _;

use tunnelbp::placement::effective_range;
use tunnelbp::{RisPlacement, TunnelGeometry};

use crate::error::{CliError, Result};
use crate::numfmt::g9;
use crate::scenario::{Axis, ObstacleSpec, RisSpec, Scenario, Sweep};
use crate::sweep::{sweep_rows, write_rows, HEADER};

pub const NAMES: [&str; 6] = [
    "fig2-left",
    "fig2-right",
    "fig3-left",
    "fig3-right",
    "fig4-left",
    "fig4-right",
];

const H: f64 = 4.0;
const Z_R: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub assumptions: Vec<String>,
    pub curves: Vec<Curve>,
}

impl Preset {
    /// Applies Monte-Carlo settings to every curve.
    pub fn with_mc(mut self, samples: Option<u64>, seed: Option<u64>) -> Self {
        for c in &mut self.curves {
            if let Some(n) = samples {
                c.scenario.samples = n;
            }
            if let Some(s) = seed {
                c.scenario.seed = s;
            }
        }
        self
    }
}

fn scene(y_t: f64, y_r: f64) -> TunnelGeometry {
    TunnelGeometry::new(H, y_t, y_r, Z_R).expect("preset geometry is valid")
}

fn sweep(axis: Axis, start: f64, stop: f64, step: f64) -> Option<Sweep> {
    Some(Sweep {
        axis,
        start,
        stop,
        step,
    })
}

fn ris(positions: &[f64]) -> RisSpec {
    RisSpec::List(RisPlacement::new(positions.to_vec()).expect("preset placement is valid"))
}

fn curve(label: String, scenario: Scenario) -> Curve {
    Curve { label, scenario }
}

pub fn preset(name: &str) -> Result<Preset> {
    let z_r_note = format!("z_r = {Z_R} m");
    let (name, assumptions, curves) = match name {
        "fig2-left" => {
            let mut curves = Vec::new();
            for obstacles in [ObstacleSpec::Uniform, ObstacleSpec::IidRatio(0.05)] {
                for (y_t, y_r) in [(3.5, 2.5), (2.5, 3.0)] {
                    let mut s = Scenario::new(scene(y_t, y_r));
                    s.ris = ris(&[0.0]);
                    s.obstacles = obstacles;
                    s.sweep = sweep(Axis::ZR, 0.0, 120.0, 1.0);
                    let obs = match obstacles {
                        ObstacleSpec::Uniform => "uniform".to_string(),
                        _ => "iid_kr:0.05".to_string(),
                    };
                    curves.push(curve(format!("y_t={y_t} y_r={y_r} obstacles={obs}"), s));
                }
            }
            ("fig2-left", vec![z_r_note], curves)
        }
        "fig2-right" => {
            let curves = [(2.0, 2.5), (3.5, 2.0)]
                .into_iter()
                .map(|(y_t, y_r)| {
                    let mut s = Scenario::new(scene(y_t, y_r));
                    s.ris = ris(&[0.0, 100.0]);
                    s.sweep = sweep(Axis::ZR2, 0.0, 120.0, 1.0);
                    curve(format!("y_t={y_t} y_r={y_r} z_R1=0"), s)
                })
                .collect();
            ("fig2-right", vec![z_r_note, "z_R1 = 0 m".into()], curves)
        }
        "fig3-left" => {
            let mut curves: Vec<Curve> = [0.0, 20.0, 100.0]
                .into_iter()
                .map(|z| {
                    let mut s = Scenario::new(scene(2.0, 2.0));
                    s.ris = ris(&[z]);
                    s.sweep = sweep(Axis::Yt, 0.1, 3.9, 0.1);
                    curve(format!("z_R={z}"), s)
                })
                .collect();
            let mut s = Scenario::new(scene(2.0, 2.0));
            s.sweep = sweep(Axis::Yt, 0.1, 3.9, 0.1);
            curves.push(curve("no RIS".into(), s));
            (
                "fig3-left",
                vec![
                    z_r_note,
                    "y_r = 2 m".into(),
                    "y_t swept over [0.1, 3.9] m".into(),
                ],
                curves,
            )
        }
        "fig3-right" => {
            let mut curves: Vec<Curve> = [0.0, 40.0, 80.0]
                .into_iter()
                .map(|z| {
                    let mut s = Scenario::new(scene(3.5, 2.5));
                    s.ris = ris(&[z]);
                    s.sweep = sweep(Axis::Zr, 1.0, 200.0, 1.0);
                    curve(format!("z_R={z}"), s)
                })
                .collect();
            let mut s = Scenario::new(scene(3.5, 2.5));
            s.sweep = sweep(Axis::Zr, 1.0, 200.0, 1.0);
            curves.push(curve("no RIS".into(), s));
            (
                "fig3-right",
                vec!["y_t = 3.5 m".into(), "y_r = 2.5 m".into()],
                curves,
            )
        }
        "fig4-left" => {
            let curves = [10.0, 20.0]
                .into_iter()
                .map(|interval| {
                    let mut s = Scenario::new(scene(3.5, 2.5));
                    s.ris = RisSpec::Even {
                        n: 1,
                        interval,
                        start: 0.0,
                    };
                    s.sweep = sweep(Axis::NRis, 1.0, 8.0, 1.0);
                    curve(format!("interval={interval}"), s)
                })
                .collect();
            (
                "fig4-left",
                vec![
                    z_r_note,
                    "y_t = 3.5 m".into(),
                    "y_r = 2.5 m".into(),
                    "first RIS at z = 0 m".into(),
                ],
                curves,
            )
        }
        "fig4-right" => {
            let curves = [5.0, 10.0]
                .into_iter()
                .map(|d_o1| {
                    let mut s = Scenario::new(scene(3.5, 2.5));
                    s.ris = ris(&[15.0]);
                    s.obstacles = ObstacleSpec::Dtnd {
                        u: 2.0,
                        sigma: 1.0,
                        d_o1,
                        d_o2: 20.0,
                    };
                    s.sweep = sweep(Axis::Sigma, 0.1, 2.0, 0.1);
                    curve(format!("d_o1={d_o1}"), s)
                })
                .collect();
            (
                "fig4-right",
                vec![
                    z_r_note,
                    "y_t = 3.5 m".into(),
                    "y_r = 2.5 m".into(),
                    "u = 2 m".into(),
                    "d_o2 = 20 m".into(),
                ],
                curves,
            )
        }
        other => {
            return Err(CliError::Invalid(format!(
                "unknown preset `{other}` (expected one of {})",
                NAMES.join(", ")
            )))
        }
    };
    Ok(Preset {
        name,
        assumptions,
        curves,
    })
}

/// Commented CSV: preset name, assumptions, the fixed header, then one
/// block of rows per curve.
pub fn run_preset(p: &Preset) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "# preset: {}", p.name);
    for a in &p.assumptions {
        let _ = writeln!(out, "# assumption: {a}");
    }
    if p.name == "fig3-right" {
        for z in [40.0, 80.0] {
            let g = &p.curves[0].scenario.geometry;
            let ranges = effective_range(g, z, 0.1, 200.0)?;
            let text: Vec<String> = ranges
                .iter()
                .map(|(lo, hi)| format!("({}, {})", g9(*lo), g9(*hi)))
                .collect();
            let _ = writeln!(
                out,
                "# effective_range: z_R={z} bp<0.1 z_r in {}",
                text.join(" ")
            );
        }
    }
    let _ = writeln!(out, "{HEADER}");
    for c in &p.curves {
        let _ = writeln!(out, "# curve: {}", c.label);
        write_rows(&mut out, &sweep_rows(&c.scenario)?);
    }
    Ok(out)
}
