//! Scenario documents: flat `key = value` lines with `#` comments.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use tunnelbp::montecarlo::{DEFAULT_SAMPLES, DEFAULT_SEED};
use tunnelbp::placement::even_placement;
use tunnelbp::{RisPlacement, TunnelGeometry};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum RisSpec {
    List(RisPlacement),
    /// `n` surfaces at `start + k · interval`.
    Even {
        n: usize,
        interval: f64,
        start: f64,
    },
}

impl RisSpec {
    pub fn placement(&self) -> Result<RisPlacement> {
        match *self {
            RisSpec::List(ref p) => Ok(p.clone()),
            RisSpec::Even { n, interval, start } => Ok(even_placement(n, interval, start)?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObstacleSpec {
    Uniform,
    Iid(u32),
    /// Count derived from the receiver distance, `⌈z_r k_r⌉`.
    IidRatio(f64),
    Dtnd {
        u: f64,
        sigma: f64,
        d_o1: f64,
        d_o2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    ZR,
    ZR1,
    ZR2,
    Yt,
    Yr,
    Zr,
    H,
    NRis,
    Sigma,
    U,
    DO1,
    DO2,
}

impl Axis {
    pub const ALL: [Axis; 12] = [
        Axis::ZR,
        Axis::ZR1,
        Axis::ZR2,
        Axis::Yt,
        Axis::Yr,
        Axis::Zr,
        Axis::H,
        Axis::NRis,
        Axis::Sigma,
        Axis::U,
        Axis::DO1,
        Axis::DO2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axis::ZR => "z_R",
            Axis::ZR1 => "z_R1",
            Axis::ZR2 => "z_R2",
            Axis::Yt => "y_t",
            Axis::Yr => "y_r",
            Axis::Zr => "z_r",
            Axis::H => "h",
            Axis::NRis => "n_ris",
            Axis::Sigma => "sigma",
            Axis::U => "u",
            Axis::DO1 => "d_o1",
            Axis::DO2 => "d_o2",
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Axis::ALL.iter().map(|a| a.name()).collect();
                format!(
                    "unknown sweep axis `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    /// Axis values `start, start + step, …` up to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.stop < self.start {
            return Vec::new();
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub geometry: TunnelGeometry,
    pub ris: RisSpec,
    pub obstacles: ObstacleSpec,
    pub sweep: Option<Sweep>,
    /// Monte-Carlo trials per point; 0 disables the estimator.
    pub samples: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Scenario {
    pub fn new(geometry: TunnelGeometry) -> Self {
        Self {
            geometry,
            ris: RisSpec::List(RisPlacement::none()),
            obstacles: ObstacleSpec::Uniform,
            sweep: None,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            out: None,
        }
    }

    /// Renders the scenario as a document that parses back to itself.
    pub fn to_config(&self) -> String {
        let g = &self.geometry;
        let mut s = String::new();
        let _ = writeln!(s, "h = {}", g.h());
        let _ = writeln!(s, "y_t = {}", g.y_t());
        let _ = writeln!(s, "y_r = {}", g.y_r());
        let _ = writeln!(s, "z_r = {}", g.z_r());
        let ris = match &self.ris {
            RisSpec::List(p) if p.is_empty() => "none".to_string(),
            RisSpec::List(p) => join(p.positions()),
            RisSpec::Even { n, interval, start } => format!("even:{n}:{interval}:{start}"),
        };
        let _ = writeln!(s, "ris = {ris}");
        let obstacles = match self.obstacles {
            ObstacleSpec::Uniform => "uniform".to_string(),
            ObstacleSpec::Iid(n) => format!("iid:{n}"),
            ObstacleSpec::IidRatio(k) => format!("iid_kr:{k}"),
            ObstacleSpec::Dtnd {
                u,
                sigma,
                d_o1,
                d_o2,
            } => {
                format!("dtnd:{u},{sigma},{d_o1},{d_o2}")
            }
        };
        let _ = writeln!(s, "obstacles = {obstacles}");
        if let Some(w) = &self.sweep {
            let _ = writeln!(
                s,
                "sweep = {}:{}:{}:{}",
                w.axis.name(),
                w.start,
                w.stop,
                w.step
            );
        }
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {}", out.display());
        }
        s
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

/// Accumulates keys from a document and from command-line overrides, then
/// validates everything at once.
#[derive(Debug, Default, Clone)]
pub struct ScenarioBuilder {
    h: Option<f64>,
    y_t: Option<f64>,
    y_r: Option<f64>,
    z_r: Option<f64>,
    ris: Option<RisSpec>,
    obstacles: Option<ObstacleSpec>,
    sweep: Option<Sweep>,
    samples: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

impl ScenarioBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut b = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::Parse {
                    line,
                    msg: format!("expected `key = value`, got `{content}`"),
                });
            };
            b.set(key.trim(), value.trim())
                .map_err(|msg| CliError::Parse { line, msg })?;
        }
        Ok(b)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "h" => self.h = Some(num(key, value)?),
            "y_t" => self.y_t = Some(num(key, value)?),
            "y_r" => self.y_r = Some(num(key, value)?),
            "z_r" => self.z_r = Some(num(key, value)?),
            "ris" => self.ris = Some(parse_ris(value)?),
            "obstacles" => self.obstacles = Some(parse_obstacles(value)?),
            "sweep" => self.sweep = Some(parse_sweep(value)?),
            "samples" => self.samples = Some(int(key, value)?),
            "seed" => self.seed = Some(int(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn build(self) -> Result<Scenario> {
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| CliError::Invalid(format!("missing required key `{key}`")))
        };
        let geometry = TunnelGeometry::new(
            need(self.h, "h")?,
            need(self.y_t, "y_t")?,
            need(self.y_r, "y_r")?,
            need(self.z_r, "z_r")?,
        )?;
        let s = Scenario {
            geometry,
            ris: self.ris.unwrap_or(RisSpec::List(RisPlacement::none())),
            obstacles: self.obstacles.unwrap_or(ObstacleSpec::Uniform),
            sweep: self.sweep,
            samples: self.samples.unwrap_or(DEFAULT_SAMPLES),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            out: self.out,
        };
        s.ris.placement()?;
        Ok(s)
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    ScenarioBuilder::from_text(text)?.build()
}

fn num(key: &str, value: &str) -> std::result::Result<f64, String> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{key}` expects a finite number, got `{value}`")),
    }
}

fn int(key: &str, value: &str) -> std::result::Result<u64, String> {
    value
        .parse()
        .map_err(|_| format!("`{key}` expects a non-negative integer, got `{value}`"))
}

fn parse_ris(value: &str) -> std::result::Result<RisSpec, String> {
    if value.is_empty() || value == "none" {
        return Ok(RisSpec::List(RisPlacement::none()));
    }
    if let Some(rest) = value.strip_prefix("even:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [n, interval, start] = parts[..] else {
            return Err(format!(
                "expected `even:<n>:<interval>:<start>`, got `{value}`"
            ));
        };
        let n = n
            .parse()
            .map_err(|_| format!("`even` count must be an integer, got `{n}`"))?;
        return Ok(RisSpec::Even {
            n,
            interval: num("ris", interval)?,
            start: num("ris", start)?,
        });
    }
    let positions = value
        .split(',')
        .map(|p| num("ris", p.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    RisPlacement::new(positions)
        .map(RisSpec::List)
        .map_err(|e| e.to_string())
}

fn parse_obstacles(value: &str) -> std::result::Result<ObstacleSpec, String> {
    let (kind, arg) = value.split_once(':').unwrap_or((value, ""));
    match kind {
        "uniform" if arg.is_empty() => Ok(ObstacleSpec::Uniform),
        "iid" => match arg.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(ObstacleSpec::Iid(n)),
            _ => Err(format!("`iid` expects a count >= 1, got `{arg}`")),
        },
        "iid_kr" => match num("obstacles", arg)? {
            k if k > 0.0 => Ok(ObstacleSpec::IidRatio(k)),
            k => Err(format!("`iid_kr` expects k_r > 0, got {k}")),
        },
        "dtnd" => {
            let v = arg
                .split(',')
                .map(|p| num("obstacles", p.trim()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let [u, sigma, d_o1, d_o2] = v[..] else {
                return Err(format!("expected `dtnd:<u>,<sigma>,<d_o1>,<d_o2>`, got `{value}`"));
            };
            Ok(ObstacleSpec::Dtnd { u, sigma, d_o1, d_o2 })
        }
        _ => Err(format!(
            "unknown obstacle model `{value}` (expected uniform, iid:N, iid_kr:K or dtnd:u,sigma,d1,d2)"
        )),
    }
}

fn parse_sweep(value: &str) -> std::result::Result<Sweep, String> {
    let parts: Vec<&str> = value.split(':').collect();
    let [axis, start, stop, step] = parts[..] else {
        return Err(format!("expected `name:start:stop:step`, got `{value}`"));
    };
    let sweep = Sweep {
        axis: axis.parse()?,
        start: num("sweep", start)?,
        stop: num("sweep", stop)?,
        step: num("sweep", step)?,
    };
    if sweep.step <= 0.0 {
        return Err(format!("sweep step must be > 0, got {}", sweep.step));
    }
    Ok(sweep)
}
