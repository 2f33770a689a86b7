use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tunnelbp::placement::{
    default_z_max, effective_range, optimize_single_ris, optimize_tx_height, DEFAULT_GRID_STEP,
};
use tunnelbp_cli::numfmt::g9;
use tunnelbp_cli::sweep::{analytic, monte_carlo};
use tunnelbp_cli::{
    preset, run_preset, run_sweep, validate_with, CliError, Result, Scenario, ScenarioBuilder,
};

#[derive(Parser)]
#[command(
    name = "tunnelbp",
    version,
    about = "Blocking probability of RIS-assisted links in obstructed tunnels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form blocking probability and case label.
    Bp(ScenarioArgs),
    /// CSV sweep over the scenario's `sweep` axis.
    Sweep(ScenarioArgs),
    /// Monte-Carlo estimate with its 95% Wilson interval.
    Mc(ScenarioArgs),
    /// Best RIS position, or best Tx height for the configured RIS.
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, value_enum, default_value_t = Target::Ris)]
        target: Target,
        /// Grid spacing in meters [default: 1 for ris, h/100 for tx].
        #[arg(long)]
        grid_step: Option<f64>,
        /// Upper end of the RIS scan [default: max(1.2 z_r, z_N + 1)].
        #[arg(long)]
        z_max: Option<f64>,
        /// Also print every grid point.
        #[arg(long)]
        scan: bool,
    },
    /// Receiver distances where the configured RIS keeps BP below a threshold.
    Range {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        threshold: f64,
        /// Largest receiver distance considered [default: 3 z_r].
        #[arg(long)]
        z_r_max: Option<f64>,
    },
    /// Compare closed form and Monte Carlo on every sweep point; exits 3 on mismatch.
    Validate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Add this offset to every analytic value (harness self-test).
        #[arg(long, hide = true, allow_negative_numbers = true)]
        corrupt_analytic: Option<f64>,
    },
    /// Run a built-in figure sweep.
    Preset {
        #[arg(value_parser = tunnelbp_cli::preset::NAMES)]
        name: String,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ris,
    Tx,
}

/// Scenario keys; flags override values read from `--config`.
#[derive(Args)]
struct ScenarioArgs {
    /// Scenario document with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long = "y-t", alias = "y_t")]
    y_t: Option<String>,
    #[arg(long = "y-r", alias = "y_r")]
    y_r: Option<String>,
    #[arg(long = "z-r", alias = "z_r")]
    z_r: Option<String>,
    /// Comma list of RIS positions, `none`, or `even:<n>:<interval>:<start>`.
    #[arg(long)]
    ris: Option<String>,
    /// uniform | iid:N | iid_kr:K | dtnd:u,sigma,d_o1,d_o2
    #[arg(long)]
    obstacles: Option<String>,
    /// name:start:stop:step
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<Scenario> {
        let mut b = match &self.config {
            Some(path) => ScenarioBuilder::from_text(&std::fs::read_to_string(path)?)?,
            None => ScenarioBuilder::new(),
        };
        let flags = [
            ("h", &self.h),
            ("y_t", &self.y_t),
            ("y_r", &self.y_r),
            ("z_r", &self.z_r),
            ("ris", &self.ris),
            ("obstacles", &self.obstacles),
            ("sweep", &self.sweep),
            ("samples", &self.samples),
            ("seed", &self.seed),
            ("out", &self.out),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                b.set(key, v).map_err(CliError::Invalid)?;
            }
        }
        b.build()
    }
}

fn single_ris(s: &Scenario) -> Result<f64> {
    match s.ris.placement()?.positions() {
        [z] => Ok(*z),
        _ => Err(CliError::Invalid(
            "this command needs exactly one RIS position".into(),
        )),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bp(args) => {
            let s = args.load()?;
            let (value, case) = analytic(&s)?;
            let value = value.map(g9).unwrap_or_default();
            emit(
                &format!("analytic_bp,case\n{value},{case}\n"),
                s.out.as_ref(),
            )
        }
        Command::Sweep(args) => {
            let s = args.load()?;
            emit(&run_sweep(&s)?, s.out.as_ref())
        }
        Command::Mc(args) => {
            let s = args.load()?;
            let est =
                monte_carlo(&s)?.ok_or_else(|| CliError::Invalid("mc needs samples > 0".into()))?;
            let text = format!(
                "mc_mean,mc_ci_low,mc_ci_high,n_samples,seed\n{},{},{},{},{}\n",
                g9(est.mean.value()),
                g9(est.ci_low.value()),
                g9(est.ci_high.value()),
                est.n_samples,
                est.seed
            );
            emit(&text, s.out.as_ref())
        }
        Command::Optimize {
            scenario,
            target,
            grid_step,
            z_max,
            scan,
        } => {
            let s = scenario.load()?;
            let g = &s.geometry;
            let r = match target {
                Target::Ris => {
                    let z_max = z_max.unwrap_or_else(|| default_z_max(g));
                    optimize_single_ris(g, z_max, grid_step.unwrap_or(DEFAULT_GRID_STEP))?
                }
                Target::Tx => {
                    optimize_tx_height(g, single_ris(&s)?, grid_step.unwrap_or(g.h() / 100.0))?
                }
            };
            let mut text = format!(
                "argmin,bp_at_argmin\n{},{}\n",
                g9(r.argmin),
                g9(r.bp_at_argmin.value())
            );
            if scan {
                text.push_str("# scan\nparameter,bp\n");
                for (x, bp) in &r.scan {
                    text.push_str(&format!("{},{}\n", g9(*x), g9(bp.value())));
                }
            }
            emit(&text, s.out.as_ref())
        }
        Command::Range {
            scenario,
            threshold,
            z_r_max,
        } => {
            let s = scenario.load()?;
            let z_r_max = z_r_max.unwrap_or(3.0 * s.geometry.z_r());
            let ranges = effective_range(&s.geometry, single_ris(&s)?, threshold, z_r_max)?;
            let mut text = String::from("z_r_low,z_r_high\n");
            for (lo, hi) in ranges {
                text.push_str(&format!("{},{}\n", g9(lo), g9(hi)));
            }
            emit(&text, s.out.as_ref())
        }
        Command::Validate {
            scenario,
            corrupt_analytic,
        } => {
            let s = scenario.load()?;
            let delta = corrupt_analytic.unwrap_or(0.0);
            let report = validate_with(&s, |a| a + delta)?;
            emit(&report.to_csv(), s.out.as_ref())?;
            match report.failed() {
                0 => Ok(()),
                failed => Err(CliError::Inconsistent {
                    failed,
                    total: report.checked(),
                }),
            }
        }
        Command::Preset {
            name,
            samples,
            seed,
            out,
        } => {
            let p = preset(&name)?.with_mc(samples, seed);
            emit(&run_preset(&p)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
