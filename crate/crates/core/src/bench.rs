//! Repeated independent trials, summary statistics and comparison tables.

use std::fmt::{self, Write as _};
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::acs::{run_acs, AcsConfig, GroupParams, PheromoneInit, RunOutcome};
use crate::error::{Error, Result};
use crate::instance::{Tour, TspInstance};
use crate::rbacs::{run_rbacs, RbacsConfig};
use crate::seed::{derive_seed, rng_from_seed};
use crate::trace::{emit_trace_csv, ConvergenceTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Acs,
    Rbacs,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Acs => "acs",
            Algorithm::Rbacs => "rbacs",
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "acs" => Ok(Algorithm::Acs),
            "rbacs" | "rb-acs" => Ok(Algorithm::Rbacs),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmConfig {
    Acs(AcsConfig),
    Rbacs(RbacsConfig),
}

impl AlgorithmConfig {
    pub fn default_for(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::Acs => AlgorithmConfig::Acs(AcsConfig::default()),
            Algorithm::Rbacs => AlgorithmConfig::Rbacs(RbacsConfig::default()),
        }
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmConfig::Acs(_) => Algorithm::Acs,
            AlgorithmConfig::Rbacs(_) => Algorithm::Rbacs,
        }
    }

    pub fn budget(&self) -> usize {
        match self {
            AlgorithmConfig::Acs(c) => c.budget,
            AlgorithmConfig::Rbacs(c) => c.budget,
        }
    }

    /// One run seeded with `seed`.
    pub fn run(&self, inst: &TspInstance, seed: u64) -> Result<RunOutcome> {
        match self {
            AlgorithmConfig::Acs(c) => run_acs(inst, c, &mut rng_from_seed(seed)),
            AlgorithmConfig::Rbacs(c) => run_rbacs(inst, c, seed),
        }
    }

    /// `key=value` lines describing the configuration. No timestamps.
    pub fn metadata(&self) -> Vec<String> {
        fn group(prefix: &str, p: &GroupParams, out: &mut Vec<String>) {
            out.push(format!("{prefix}q0={}", p.q0));
            out.push(format!("{prefix}beta={}", p.beta));
            out.push(format!("{prefix}rho={}", p.rho));
            out.push(format!("{prefix}alpha={}", p.alpha));
            out.push(format!("{prefix}ants={}", p.ants));
        }
        let mut out = vec![format!("algorithm={}", self.algorithm())];
        match self {
            AlgorithmConfig::Acs(c) => {
                out.push(format!("budget={}", c.budget));
                out.push(format!("stagnation_limit={}", c.stagnation_limit));
                out.push(format!("global_decay_scope={}", c.decay_scope));
                match c.init {
                    PheromoneInit::Uniform => out.push("init=uniform".to_string()),
                    PheromoneInit::InverseCost { c } => {
                        out.push("init=inverse-cost".to_string());
                        out.push(format!("c_init={c}"));
                    }
                }
                group("", &c.params, &mut out);
            }
            AlgorithmConfig::Rbacs(c) => {
                out.push(format!("budget={}", c.budget));
                out.push(format!("stagnation_limit={}", c.stagnation_limit));
                out.push(format!("global_decay_scope={}", c.decay_scope));
                out.push("init=inverse-cost".to_string());
                out.push(format!("c_init={}", c.c_init));
                group("black_", &c.black, &mut out);
                group("red_", &c.red, &mut out);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub index: usize,
    pub seed: u64,
    pub best_length: u64,
    pub best_tour: Tour,
    pub iterations_run: usize,
    pub stopped_early: bool,
    pub trace: ConvergenceTrace,
    /// Not part of any deterministic output.
    pub wall_time_ms: u128,
}

/// Seed of trial `index` under `base_seed`.
pub fn trial_seed(base_seed: u64, index: usize) -> u64 {
    derive_seed(base_seed, index as u64)
}

pub fn run_trial(inst: &TspInstance, config: &AlgorithmConfig, base_seed: u64, index: usize) -> Result<TrialResult> {
    let seed = trial_seed(base_seed, index);
    let started = Instant::now();
    let outcome = config.run(inst, seed)?;
    Ok(TrialResult {
        index,
        seed,
        best_length: outcome.best.length(),
        best_tour: outcome.best,
        iterations_run: outcome.iterations_run,
        stopped_early: outcome.stopped_early,
        trace: outcome.trace,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

/// Runs `trials` independent trials, in parallel, returned in trial order.
pub fn run_trials(
    inst: &TspInstance,
    config: &AlgorithmConfig,
    trials: usize,
    base_seed: u64,
) -> Result<Vec<TrialResult>> {
    if trials == 0 {
        return Err(Error::Empty("at least one trial is required"));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| run_trial(inst, config, base_seed, i))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub min: u64,
    pub max: u64,
    /// Sample standard deviation; 0 for a single trial.
    pub stddev: f64,
    pub trials: usize,
}

impl SummaryStats {
    pub fn from_lengths(lengths: &[u64]) -> Result<Self> {
        let (&first, _) = lengths
            .split_first()
            .ok_or(Error::Empty("cannot summarize zero trials"))?;
        let n = lengths.len();
        let (min, max) = lengths
            .iter()
            .fold((first, first), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let mean = lengths.iter().map(|&v| v as f64).sum::<f64>() / n as f64;
        let stddev = if n < 2 {
            0.0
        } else {
            let ss: f64 = lengths.iter().map(|&v| (v as f64 - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        };
        Ok(SummaryStats {
            mean,
            min,
            max,
            stddev,
            trials: n,
        })
    }

    /// Mean excess over `optimum`, in percent.
    pub fn excess_percent(&self, optimum: u64) -> f64 {
        (self.mean - optimum as f64) / optimum as f64 * 100.0
    }
}

pub fn summarize(results: &[TrialResult]) -> Result<SummaryStats> {
    let lengths: Vec<u64> = results.iter().map(|r| r.best_length).collect();
    SummaryStats::from_lengths(&lengths)
}

/// Renders one row per `(label, stats)` with the mean excess over
/// `reference_optimum`.
pub fn compare_table(rows: &[(String, SummaryStats)], reference_optimum: u64) -> String {
    let width = rows
        .iter()
        .map(|(label, _)| label.len())
        .chain(std::iter::once("algorithm".len()))
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:>12}  {:>10}  {:>10}  {:>10}  {:>8}",
        "algorithm", "trials", "mean", "min", "max", "stddev", "excess"
    );
    for (label, s) in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>12.3}  {:>10}  {:>10}  {:>10.3}  {:>7.2}%",
            label,
            s.trials,
            s.mean,
            s.min,
            s.max,
            s.stddev,
            s.excess_percent(reference_optimum)
        );
    }
    let _ = writeln!(out, "optimum: {reference_optimum}");
    out
}

/// `key=value` lines for a summary.
pub fn summary_metadata(stats: &SummaryStats) -> Vec<String> {
    vec![
        format!("trials={}", stats.trials),
        format!("mean={:.6}", stats.mean),
        format!("min={}", stats.min),
        format!("max={}", stats.max),
        format!("stddev={:.6}", stats.stddev),
    ]
}

/// Full benchmark summary: `key=value` metadata followed by the comparison
/// table. Contains nothing time-dependent.
pub fn render_report(
    instance: &str,
    config: &AlgorithmConfig,
    base_seed: u64,
    results: &[TrialResult],
    reference_optimum: u64,
) -> Result<String> {
    let stats = summarize(results)?;
    let mut out = String::new();
    let _ = writeln!(out, "instance={instance}");
    let _ = writeln!(out, "base_seed={base_seed}");
    for line in config.metadata() {
        let _ = writeln!(out, "{line}");
    }
    for line in summary_metadata(&stats) {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "reference_optimum={reference_optimum}");
    let _ = writeln!(out);
    out.push_str(&compare_table(&[(config.algorithm().to_string(), stats)], reference_optimum));
    Ok(out)
}

/// Writes one `trace_NNN.csv` per trial into `dir`.
pub fn write_trial_traces(dir: &Path, results: &[TrialResult]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    results
        .iter()
        .map(|r| {
            let path = dir.join(format!("trace_{:03}.csv", r.index));
            emit_trace_csv(&r.trace, BufWriter::new(File::create(&path)?))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_summary() {
        let s = SummaryStats::from_lengths(&[426, 429]).unwrap();
        assert_eq!(s.mean, 427.5);
        assert_eq!((s.min, s.max, s.trials), (426, 429, 2));
        assert!((s.stddev - 4.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_trial_summary() {
        let s = SummaryStats::from_lengths(&[426]).unwrap();
        assert_eq!((s.mean, s.min, s.max, s.stddev), (426.0, 426, 426, 0.0));
    }

    #[test]
    fn three_point_mean() {
        assert_eq!(SummaryStats::from_lengths(&[426, 426, 432]).unwrap().mean, 428.0);
    }

    #[test]
    fn empty_summary_is_an_error() {
        assert!(SummaryStats::from_lengths(&[]).is_err());
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn excess_column() {
        let s = SummaryStats::from_lengths(&[426, 429]).unwrap();
        let table = compare_table(&[("rbacs".to_string(), s)], 426);
        assert!(table.lines().nth(1).unwrap().ends_with("0.35%"), "{table}");

        let exact = SummaryStats::from_lengths(&[426]).unwrap();
        let table = compare_table(&[("acs".to_string(), exact)], 426);
        assert!(table.lines().nth(1).unwrap().ends_with("0.00%"), "{table}");
    }

    #[test]
    fn table_rows_follow_input_order() {
        let a = SummaryStats::from_lengths(&[440]).unwrap();
        let b = SummaryStats::from_lengths(&[430]).unwrap();
        let table = compare_table(&[("zeta".to_string(), a), ("alpha".to_string(), b)], 426);
        let labels: Vec<_> = table.lines().skip(1).take(2).map(|l| l.split_whitespace().next().unwrap()).collect();
        assert_eq!(labels, ["zeta", "alpha"]);
    }

    #[test]
    fn algorithm_names() {
        assert_eq!("RBACS".parse::<Algorithm>().unwrap(), Algorithm::Rbacs);
        assert_eq!("acs".parse::<Algorithm>().unwrap(), Algorithm::Acs);
        assert!("ga".parse::<Algorithm>().is_err());
    }
}
