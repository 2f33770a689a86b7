//! Seeded Monte-Carlo estimation of the blocking probability.
//!
//! Trials are grouped into fixed-size batches; batch `i` draws from ChaCha8
//! stream `i` of the user seed, so the blocked count (an integer sum) does
//! not depend on how rayon schedules the batches.
//!
//! Every trial consumes the same random draws whatever the RIS placement,
//! so two estimates with the same seed and obstacle model are driven by the
//! same obstacles. Adding a RIS can then only unblock trials.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::analytic::{ObstacleModel, Probability};
use crate::error::{BpError, Result};
use crate::geometry::{envelope_for, PathEnvelope, RisPlacement, TunnelGeometry};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Two-sided 99.9% standard normal quantile.
pub const Z_999: f64 = 3.290_526_731_491_926;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const MIN_SAMPLES: u64 = 1_000;
/// Below this rejection acceptance rate truncated-normal sampling refuses to run.
pub const MIN_ACCEPTANCE: f64 = 1e-6;

const BATCH: u64 = 8_192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// A single obstacle: a vertical segment from the floor at `d_o`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub d_o: f64,
    pub h_o: f64,
}

/// Proportion of blocked trials with its 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpEstimate {
    pub mean: Probability,
    pub ci_low: Probability,
    pub ci_high: Probability,
    pub blocked: u64,
    pub n_samples: u64,
    pub seed: u64,
}

impl BpEstimate {
    pub fn from_counts(blocked: u64, n_samples: u64, seed: u64) -> Self {
        let (lo, hi) = wilson_interval(blocked, n_samples, Z_95);
        let p = blocked as f64 / n_samples as f64;
        Self {
            mean: Probability::from_raw(p).expect("proportion"),
            ci_low: Probability::from_raw(lo.min(p)).expect("wilson bound"),
            ci_high: Probability::from_raw(hi.max(p)).expect("wilson bound"),
            blocked,
            n_samples,
            seed,
        }
    }

    /// Half the width of the 95% interval.
    pub fn half_width(&self) -> f64 {
        (self.ci_high.value() - self.ci_low.value()) / 2.0
    }

    /// Wilson interval at another two-sided normal quantile.
    pub fn interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.blocked, self.n_samples, z)
    }

    pub fn contains(&self, value: f64, z: f64) -> bool {
        let (lo, hi) = self.interval(z);
        (lo..=hi).contains(&value)
    }
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = z / denom * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, Copy)]
enum SamplerKind {
    Uniform {
        count: usize,
    },
    Dtnd {
        positions: [f64; 2],
        u: f64,
        sigma: f64,
    },
}

/// Draws the obstacles of one trial for a validated model.
#[derive(Debug, Clone, Copy)]
pub struct ObstacleSampler {
    h: f64,
    z_r: f64,
    kind: SamplerKind,
}

impl ObstacleSampler {
    pub fn new(model: &ObstacleModel, geom: &TunnelGeometry) -> Result<Self> {
        let kind = match *model {
            ObstacleModel::UniformSingle => SamplerKind::Uniform { count: 1 },
            ObstacleModel::UniformIid { count } => {
                if count == 0 {
                    return Err(BpError::InvalidModel("obstacle count must be >= 1".into()));
                }
                SamplerKind::Uniform {
                    count: count as usize,
                }
            }
            ObstacleModel::DtndFixedPositions { d_o1, d_o2, params } => {
                for d in [d_o1, d_o2] {
                    if !(d > 0.0 && d < geom.z_r()) {
                        return Err(BpError::InvalidModel(format!(
                            "obstacle location {d} outside (0, z_r = {})",
                            geom.z_r()
                        )));
                    }
                }
                if params.a() != 0.0 || (params.b() - geom.h()).abs() > 1e-12 * geom.h() {
                    return Err(BpError::InvalidModel(
                        "height distribution must be truncated to [0, h]".into(),
                    ));
                }
                let rate = params.mass();
                if rate.is_nan() || rate < MIN_ACCEPTANCE {
                    return Err(BpError::RejectionRate { rate });
                }
                SamplerKind::Dtnd {
                    positions: [d_o1, d_o2],
                    u: params.u(),
                    sigma: params.sigma(),
                }
            }
        };
        Ok(Self {
            h: geom.h(),
            z_r: geom.z_r(),
            kind,
        })
    }

    pub fn obstacles_per_trial(&self) -> usize {
        match self.kind {
            SamplerKind::Uniform { count } => count,
            SamplerKind::Dtnd { .. } => 2,
        }
    }

    /// Draws obstacle `slot` (`< obstacles_per_trial()`) of a trial.
    pub fn sample<R: Rng + ?Sized>(&self, slot: usize, rng: &mut R) -> Obstacle {
        match self.kind {
            SamplerKind::Uniform { .. } => {
                let d_o = self.z_r * rng.random::<f64>();
                let h_o = self.h * rng.random::<f64>();
                Obstacle { d_o, h_o }
            }
            SamplerKind::Dtnd {
                positions,
                u,
                sigma,
            } => {
                let h_o = loop {
                    let z: f64 = StandardNormal.sample(rng);
                    let x = u + sigma * z;
                    if (0.0..=self.h).contains(&x) {
                        break x;
                    }
                };
                Obstacle {
                    d_o: positions[slot],
                    h_o,
                }
            }
        }
    }
}

/// One obstacle drawn from `model` (the first of a trial's set).
pub fn sample_obstacle<R: Rng + ?Sized>(
    model: &ObstacleModel,
    geom: &TunnelGeometry,
    rng: &mut R,
) -> Result<Obstacle> {
    Ok(ObstacleSampler::new(model, geom)?.sample(0, rng))
}

/// An obstacle blocks when it reaches the envelope at its location.
pub fn is_blocked(env: &PathEnvelope, obs: &Obstacle) -> bool {
    obs.h_o >= env.eval(obs.d_o)
}

/// Monte-Carlo blocking probability for an arbitrary RIS placement.
pub fn estimate_bp(
    geom: &TunnelGeometry,
    ris: &RisPlacement,
    model: &ObstacleModel,
    cfg: McConfig,
) -> Result<BpEstimate> {
    let env = envelope_for(geom, ris);
    estimate_bp_for_envelope(&env, geom, model, cfg)
}

pub fn estimate_bp_for_envelope(
    env: &PathEnvelope,
    geom: &TunnelGeometry,
    model: &ObstacleModel,
    cfg: McConfig,
) -> Result<BpEstimate> {
    if cfg.n_samples < MIN_SAMPLES {
        return Err(BpError::InvalidArgument(format!(
            "n_samples must be >= {MIN_SAMPLES} (got {})",
            cfg.n_samples
        )));
    }
    let sampler = ObstacleSampler::new(model, geom)?;
    let per_trial = sampler.obstacles_per_trial();
    let n_batches = cfg.n_samples.div_ceil(BATCH);
    let blocked: u64 = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let trials = BATCH.min(cfg.n_samples - b * BATCH);
            let mut count = 0;
            for _ in 0..trials {
                let mut hit = false;
                for slot in 0..per_trial {
                    hit |= is_blocked(env, &sampler.sample(slot, &mut rng));
                }
                count += hit as u64;
            }
            count
        })
        .sum();
    Ok(BpEstimate::from_counts(blocked, cfg.n_samples, cfg.seed))
}
