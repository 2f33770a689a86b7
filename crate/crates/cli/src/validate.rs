//! Closed form against Monte Carlo, row by row.

use std::fmt::Write as _;

use crate::error::{CliError, Result};
use crate::numfmt::g9;
use crate::scenario::Scenario;
use crate::sweep::sweep_rows;

pub const HEADER: &str = "axis,analytic_bp,mc_mean,mc_ci_low,mc_ci_high,tolerance,status";
/// Absolute floor on the accepted analytic/estimate gap.
pub const MIN_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub axis: Option<f64>,
    pub analytic: Option<f64>,
    pub mc_mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub tolerance: f64,
    /// `None` when no closed form covers the row.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<ValidationRow>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass == Some(false)).count()
    }

    pub fn checked(&self) -> usize {
        self.rows.iter().filter(|r| r.pass.is_some()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for r in &self.rows {
            let status = match r.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "n/a",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{status}",
                r.axis.map(g9).unwrap_or_default(),
                r.analytic.map(g9).unwrap_or_default(),
                g9(r.mc_mean),
                g9(r.ci_low),
                g9(r.ci_high),
                g9(r.tolerance),
            );
        }
        out
    }
}

pub fn validate(s: &Scenario) -> Result<Report> {
    validate_with(s, |a| a)
}

/// Like [`validate`], with `corrupt` applied to every analytic value
/// before comparison.
pub fn validate_with(s: &Scenario, corrupt: impl Fn(f64) -> f64) -> Result<Report> {
    if s.samples == 0 {
        return Err(CliError::Invalid("validation needs samples > 0".into()));
    }
    let rows: Vec<ValidationRow> = sweep_rows(s)?
        .into_iter()
        .map(|row| {
            let est = row.mc.expect("samples > 0");
            let tolerance = (3.0 * est.half_width()).max(MIN_TOLERANCE);
            let analytic = row.analytic.map(&corrupt);
            ValidationRow {
                axis: row.axis,
                analytic,
                mc_mean: est.mean.value(),
                ci_low: est.ci_low.value(),
                ci_high: est.ci_high.value(),
                tolerance,
                pass: analytic.map(|a| (a - est.mean.value()).abs() <= tolerance),
            }
        })
        .collect();
    let report = Report { rows };
    if report.checked() == 0 {
        return Err(CliError::Invalid(
            "no closed form covers any point of this scenario".into(),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn symmetric(extra: &str) -> Scenario {
        parse_scenario(&format!("h=4\ny_t=2\ny_r=2\nz_r=100\n{extra}")).unwrap()
    }

    #[test]
    fn consistent_rows_pass() {
        let r = validate(&symmetric("ris=100\nsamples=200000\nsweep=z_R:0:120:40")).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.failed(), 0);
    }

    #[test]
    fn corrupted_rows_fail() {
        let s = symmetric("ris=100\nsamples=20000\nsweep=z_R:0:120:40");
        let r = validate_with(&s, |a| a + 0.05).unwrap();
        assert_eq!(r.failed(), 4);
        assert!(r.to_csv().lines().skip(1).all(|l| l.ends_with(",fail")));
    }

    #[test]
    fn needs_samples_and_a_formula() {
        assert!(validate(&symmetric("ris=100\nsamples=0")).is_err());
        assert!(validate(&symmetric("ris=1,2,3\nsamples=2000")).is_err());
    }
}
