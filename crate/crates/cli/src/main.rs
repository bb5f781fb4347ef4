use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rbacs_core::bundled::BundledInstance;
use rbacs_core::{
    emit_trace_csv, nearest_neighbor_tour, render_report, run_trials, validate_tour, write_trial_traces, Algorithm,
    AlgorithmConfig, GlobalDecayScope, GroupParams, InstanceHeader, TspInstance,
};

/// Ant Colony System and Red-Black ACS solvers for symmetric TSPLIB instances.
#[derive(Parser, Debug)]
#[command(name = "rbacs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance and print the best tour.
    Solve {
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the convergence trace CSV here.
        #[arg(long)]
        trace: Option<PathBuf>,
        instance: PathBuf,
    },
    /// Run independent seeded trials and print a summary table.
    Bench {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        /// Directory for per-trial trace CSVs.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        /// Also write the summary to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Reference optimum for the excess column. Defaults to the published
        /// optimum of a bundled instance with the same name, else the best
        /// length found.
        #[arg(long)]
        optimum: Option<u64>,
        instance: PathBuf,
    },
    /// Print basic facts about an instance.
    Inspect { instance: PathBuf },
}

/// Engine parameters. ACS uses the black-group values.
#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, default_value = "rbacs")]
    algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    q0: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    rho_black: Option<f64>,
    #[arg(long)]
    rho_red: Option<f64>,
    #[arg(long)]
    alpha_black: Option<f64>,
    #[arg(long)]
    alpha_red: Option<f64>,
    /// Ants per group.
    #[arg(long)]
    ants: Option<usize>,
    /// Constant of the inverse-cost pheromone initialization (RB-ACS).
    #[arg(long)]
    c_init: Option<f64>,
    /// Maximum number of iterations.
    #[arg(long)]
    budget: Option<usize>,
    /// Stop after this many iterations without improvement; 0 disables.
    #[arg(long)]
    stagnation: Option<usize>,
    /// `best-tour-only` or `all-edges`.
    #[arg(long)]
    decay_scope: Option<GlobalDecayScope>,
}

impl EngineArgs {
    fn apply(&self, p: &mut GroupParams, rho: Option<f64>, alpha: Option<f64>) {
        if let Some(v) = self.q0 {
            p.q0 = v;
        }
        if let Some(v) = self.beta {
            p.beta = v;
        }
        if let Some(v) = self.ants {
            p.ants = v;
        }
        if let Some(v) = rho {
            p.rho = v;
        }
        if let Some(v) = alpha {
            p.alpha = v;
        }
    }

    fn config(&self) -> Result<AlgorithmConfig> {
        let mut config = AlgorithmConfig::default_for(self.algo);
        match &mut config {
            AlgorithmConfig::Acs(c) => {
                if self.rho_red.is_some() || self.alpha_red.is_some() || self.c_init.is_some() {
                    bail!("--rho-red, --alpha-red and --c-init only apply to --algo rbacs");
                }
                self.apply(&mut c.params, self.rho_black, self.alpha_black);
                c.budget = self.budget.unwrap_or(c.budget);
                c.stagnation_limit = self.stagnation.unwrap_or(c.stagnation_limit);
                c.decay_scope = self.decay_scope.unwrap_or(c.decay_scope);
                c.validate()?;
            }
            AlgorithmConfig::Rbacs(c) => {
                self.apply(&mut c.black, self.rho_black, self.alpha_black);
                self.apply(&mut c.red, self.rho_red, self.alpha_red);
                c.c_init = self.c_init.unwrap_or(c.c_init);
                c.budget = self.budget.unwrap_or(c.budget);
                c.stagnation_limit = self.stagnation.unwrap_or(c.stagnation_limit);
                c.decay_scope = self.decay_scope.unwrap_or(c.decay_scope);
                c.validate()?;
            }
        }
        Ok(config)
    }
}

fn load(path: &Path) -> Result<(InstanceHeader, TspInstance)> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => bail!("file not found: {}", path.display()),
        Err(e) => return Err(e).with_context(|| format!("cannot read {}", path.display())),
    };
    TspInstance::from_tsplib(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn solve(engine: &EngineArgs, trace: Option<&Path>, path: &Path) -> Result<()> {
    let (_, inst) = load(path)?;
    let config = engine.config()?;
    let outcome = config.run(&inst, engine.seed)?;
    validate_tour(outcome.best.order(), inst.n()).context("engine produced an invalid tour")?;
    if let Some(trace) = trace {
        let file = fs::File::create(trace).with_context(|| format!("cannot create {}", trace.display()))?;
        emit_trace_csv(&outcome.trace, io::BufWriter::new(file))?;
    }
    let tour: Vec<String> = outcome.best.order().iter().map(|c| (c + 1).to_string()).collect();
    let mut out = io::stdout().lock();
    writeln!(out, "instance={}", inst.name())?;
    writeln!(out, "seed={}", engine.seed)?;
    for line in config.metadata() {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "iterations={}", outcome.iterations_run)?;
    writeln!(out, "stopped_early={}", outcome.stopped_early)?;
    writeln!(out, "length={}", outcome.best.length())?;
    writeln!(out, "tour={}", tour.join(" "))?;
    Ok(())
}

fn bench(
    engine: &EngineArgs,
    trials: usize,
    trace_dir: Option<&Path>,
    summary: Option<&Path>,
    optimum: Option<u64>,
    path: &Path,
) -> Result<()> {
    let (header, inst) = load(path)?;
    let config = engine.config()?;
    let results = run_trials(&inst, &config, trials, engine.seed)?;
    for r in &results {
        validate_tour(r.best_tour.order(), inst.n())
            .with_context(|| format!("trial {} produced an invalid tour", r.index))?;
    }
    let reference = optimum
        .or_else(|| BundledInstance::by_name(&header.name).map(|b| b.optimum))
        .or_else(|| results.iter().map(|r| r.best_length).min())
        .expect("at least one trial");
    let report = render_report(&header.name, &config, engine.seed, &results, reference)?;
    if let Some(dir) = trace_dir {
        write_trial_traces(dir, &results)?;
    }
    if let Some(summary) = summary {
        fs::write(summary, &report).with_context(|| format!("cannot write {}", summary.display()))?;
    }
    io::stdout().lock().write_all(report.as_bytes())?;
    Ok(())
}

fn inspect(path: &Path) -> Result<()> {
    let (header, inst) = load(path)?;
    let nn = nearest_neighbor_tour(&inst, 0)?;
    let mut out = io::stdout().lock();
    writeln!(out, "name={}", header.name)?;
    if let Some(comment) = &header.comment {
        writeln!(out, "comment={comment}")?;
    }
    writeln!(out, "dimension={}", header.dimension)?;
    writeln!(out, "edge_weight_type={}", header.edge_weight_type)?;
    writeln!(out, "nearest_neighbor_length={}", nn.length())?;
    writeln!(out, "tau0={:e}", inst.tau0())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { engine, trace, instance } => solve(engine, trace.as_deref(), instance),
        Command::Bench {
            engine,
            trials,
            trace_dir,
            summary,
            optimum,
            instance,
        } => bench(engine, *trials, trace_dir.as_deref(), summary.as_deref(), *optimum, instance),
        Command::Inspect { instance } => inspect(instance),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
