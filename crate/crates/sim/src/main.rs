//! Command-line front end: Monte-Carlo runs, the complexity model, the
//! channel statistics checks, and the sensing benchmark curves.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use isac_core::analysis::{
    complexity_count, gram_diag_distribution_check, projected_channel_stats, AlgorithmClass,
    ComplexityQuery,
};
use isac_core::config::{ScenarioConfig, SensingPowerMode};
use isac_core::rng::Xoshiro256pp;

use isac_sim::benchmark::sensing_benchmark_nmse;
use isac_sim::configfile::{load_config, parse_algorithms, parse_grid};
use isac_sim::csvio::emit_csv;
use isac_sim::experiment::{render_trial_csv, run_experiment_detailed, ExperimentSpec};
use isac_sim::{Result, SimError};

#[derive(Parser)]
#[command(
    name = "isac-sim",
    about = "Monte-Carlo simulator for joint uplink detection and sensing estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Monte-Carlo experiments and write a metrics CSV.
    Run(RunArgs),
    /// Print the multiplication-count model for one algorithm and size.
    Complexity(ComplexityArgs),
    /// Run the projected-channel statistics checks and write CSV rows.
    Stats(StatsArgs),
    /// Evaluate the truth-aided sensing references over an SNR grid.
    Benchmark(BenchmarkArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Receive antennas.
    #[arg(long, default_value_t = 32)]
    nr: usize,
    /// Uplink users.
    #[arg(long, default_value_t = 8)]
    u: usize,
    /// Sensing targets.
    #[arg(long, default_value_t = 2)]
    mt: usize,
    /// QAM order (4, 16, 64).
    #[arg(long, default_value_t = 16)]
    qam: u32,
    /// ADMM penalty parameter.
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    /// ADMM iteration budget.
    #[arg(long, default_value_t = 10)]
    tmax: usize,
    /// Iterations per refinement under the flexible schedule.
    #[arg(long, default_value_t = 1)]
    flex_i: usize,
    /// Refinement passes under the flexible schedule (0 derives from tmax).
    #[arg(long, default_value_t = 0)]
    flex_p: usize,
    /// Communication-to-sensing power ratio in dB.
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    power_ratio_db: f64,
    /// Receiver steering angle error in degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    angle_error_deg: f64,
    /// Sensing power sharing: per-target or total-split.
    #[arg(long, default_value = "per-target")]
    sensing_power: String,
    /// Use the guarded per-entry neighborhood update.
    #[arg(long, default_value_t = false)]
    ns_guarded: bool,
}

impl ScenarioArgs {
    fn build(&self, seed: u64) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::new(self.nr, self.u, self.mt, self.qam);
        cfg.rho = self.rho;
        cfg.max_iterations = self.tmax;
        cfg.flexible_interval = self.flex_i;
        cfg.flexible_passes = self.flex_p;
        cfg.power_ratio_db = self.power_ratio_db;
        cfg.angle_error_deg = self.angle_error_deg;
        cfg.seed = seed;
        cfg.ns_guarded = self.ns_guarded;
        cfg.sensing_power = match self.sensing_power.as_str() {
            "per-target" => SensingPowerMode::PerTarget,
            "total-split" => SensingPowerMode::TotalSplit,
            other => {
                return Err(SimError::Config(format!(
                    "sensing power mode must be 'per-target' or 'total-split', found '{other}'"
                )))
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file; command-line flags override its experiment
    /// settings in every section.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithm list.
    #[arg(long)]
    algo: Option<String>,
    /// SNR grid in dB: START:STOP:STEP or a single value.
    #[arg(long, allow_hyphen_values = true)]
    ebn0: Option<String>,
    /// Trial budget per point.
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop a point early after this many bit errors.
    #[arg(long)]
    target_errors: Option<u64>,
    /// Force the per-real-dimension noise variance (diagnostics).
    #[arg(long)]
    noise_var_override: Option<f64>,
    /// Zero the communication channel (diagnostics).
    #[arg(long, default_value_t = false)]
    zero_channel: bool,
    /// Measure detector wall time (makes the CSV timing column
    /// nondeterministic).
    #[arg(long, default_value_t = false)]
    timing: bool,
    /// Also write per-trial rows next to the output CSV.
    #[arg(long, default_value_t = false)]
    per_trial: bool,
    /// Worker threads (0 uses all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct ComplexityArgs {
    /// Algorithm tag (p-admin, p-ps-admm, p-sdr, p-ns-admm, i-admin,
    /// i-ps-admm, i-ns-admm).
    #[arg(long)]
    algo: String,
    #[arg(long)]
    nr: u64,
    #[arg(long)]
    u: u64,
    #[arg(long)]
    mt: u64,
    #[arg(long, default_value_t = 10)]
    tmax: u64,
    /// Modulation exponent log4(L).
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Randomization count for the semidefinite-relaxation row.
    #[arg(long, default_value_t = 100)]
    trand: u64,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, default_value_t = 64)]
    nr: usize,
    #[arg(long, default_value_t = 8)]
    u: usize,
    #[arg(long, default_value_t = 2)]
    mt: usize,
    /// Channel draws for the entry-statistics check.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Gram diagonal samples for the distribution check.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long, default_value_t = 64)]
    nr: usize,
    #[arg(long, default_value_t = 60)]
    u: usize,
    #[arg(long, default_value_t = 2)]
    mt: usize,
    #[arg(long, default_value_t = 16)]
    qam: u32,
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    power_ratio_db: f64,
    /// SNR grid in dB: START:STOP:STEP or a single value.
    #[arg(long, default_value = "10:30:5", allow_hyphen_values = true)]
    ebn0: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Complexity(args) => cmd_complexity(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Benchmark(args) => cmd_benchmark(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    if args.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build_global()
            .map_err(|e| SimError::Config(format!("worker pool: {e}")))?;
    }

    let mut specs: Vec<ExperimentSpec> = match &args.config {
        Some(path) => load_config(path)?,
        None => {
            let cfg = args.scenario.build(args.seed.unwrap_or(1))?;
            vec![ExperimentSpec::new(cfg)]
        }
    };

    // command-line overrides apply to every section
    for spec in &mut specs {
        if let Some(algo) = &args.algo {
            spec.algorithms = parse_algorithms(algo)?;
        }
        if let Some(grid) = &args.ebn0 {
            spec.ebn0_grid_db = parse_grid(grid)?;
        }
        if let Some(trials) = args.trials {
            spec.trial_budget = trials;
        }
        if let Some(seed) = args.seed {
            spec.scenario.seed = seed;
        }
        if let Some(target) = args.target_errors {
            spec.target_bit_errors = target;
        }
        if let Some(nv) = args.noise_var_override {
            spec.noise_var_override = Some(nv);
        }
        spec.zero_channel |= args.zero_channel;
        spec.measure_runtime |= args.timing;
        spec.emit_per_trial |= args.per_trial;
        spec.validate()?;

        let (interval, passes) = spec.scenario.flexible_schedule();
        if spec
            .algorithms
            .contains(&isac_sim::experiment::Algorithm::INsAdmmFlex)
            && interval * passes != spec.scenario.max_iterations
        {
            eprintln!(
                "warning: [{}] flexible schedule runs {} iterations ({} x {}), overriding tmax = {}",
                spec.label,
                interval * passes,
                interval,
                passes,
                spec.scenario.max_iterations
            );
        }
    }

    // sections with their own output path write separately; everything
    // else is merged into --out (or stdout)
    let mut merged = Vec::new();
    for spec in &specs {
        let (records, points) = run_experiment_detailed(spec)?;
        if spec.emit_per_trial {
            let text = render_trial_csv(spec, &points);
            let path = match spec.output.as_ref().or(args.out.as_ref()) {
                Some(p) => p.with_extension("trials.csv"),
                None => PathBuf::from(format!("{}.trials.csv", spec.label)),
            };
            std::fs::write(&path, text).map_err(|source| SimError::Io { path, source })?;
        }
        match (&spec.output, &args.out) {
            (Some(path), None) => {
                emit_csv(&records, path)?;
                eprintln!("wrote {} rows to {}", records.len(), path.display());
            }
            _ => merged.extend(records),
        }
    }

    if !merged.is_empty() || specs.iter().all(|s| s.output.is_none()) {
        match &args.out {
            Some(path) => {
                emit_csv(&merged, path)?;
                eprintln!("wrote {} rows to {}", merged.len(), path.display());
            }
            None => print!("{}", isac_sim::csvio::render_csv(&merged)),
        }
    }
    Ok(())
}

fn cmd_complexity(args: ComplexityArgs) -> Result<()> {
    let algorithm: AlgorithmClass = args
        .algo
        .parse()
        .map_err(|e: isac_core::Error| SimError::Config(e.to_string()))?;
    let query = ComplexityQuery {
        algorithm,
        n: 2 * args.nr,
        k: 2 * args.u,
        m: 2 * args.mt,
        t_max: args.tmax,
        q: args.q,
        t_rand: args.trand,
    };
    let count = complexity_count(&query)?;
    println!("part,count");
    println!("preprocessing,{}", count.preprocessing);
    match count.symbolic {
        Some(term) => {
            println!("iteration,{} + {}", count.iteration, term);
            println!("total,{} + {}", count.total, term);
        }
        None => {
            println!("iteration,{}", count.iteration);
            println!("total,{}", count.total);
        }
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<()> {
    let mut rng = Xoshiro256pp::seed_from(args.seed);
    let entry = projected_channel_stats(args.nr, args.u, args.mt, args.trials, &mut rng)?;

    let mut rng2 = Xoshiro256pp::seed_from(args.seed);
    let mut gram = gram_diag_distribution_check(args.nr, args.u, args.mt, args.samples, &mut rng2)?;
    if !gram.pass {
        // statistical check at fixed significance; one reseeded retry
        let mut rng3 = Xoshiro256pp::seed_from(args.seed.wrapping_add(1));
        eprintln!(
            "note: distribution check failed at seed {} (ks {:.5} vs {:.5}); rerunning once",
            args.seed, gram.ks_statistic, gram.ks_threshold
        );
        gram = gram_diag_distribution_check(args.nr, args.u, args.mt, args.samples, &mut rng3)?;
    }

    let mut out = String::from("check,samples,value,expected,bound,pass\n");
    let var_ok = (entry.variance - entry.expected_variance).abs()
        <= 0.02 * entry.expected_variance;
    out.push_str(&format!(
        "projected_entry_variance,{},{},{},{},{}\n",
        entry.samples,
        entry.variance,
        entry.expected_variance,
        0.02 * entry.expected_variance,
        var_ok
    ));
    let mean_ok = entry.mean.abs() <= 3.0 * entry.mean_stderr;
    out.push_str(&format!(
        "projected_entry_mean,{},{},0,{},{}\n",
        entry.samples,
        entry.mean,
        3.0 * entry.mean_stderr,
        mean_ok
    ));
    let cross_ok = entry.cross_covariance.abs() <= 3.0 * entry.cross_cov_stderr;
    out.push_str(&format!(
        "projected_entry_cross_covariance,{},{},0,{},{}\n",
        entry.samples,
        entry.cross_covariance,
        3.0 * entry.cross_cov_stderr,
        cross_ok
    ));
    out.push_str(&format!(
        "gram_diag_mean,{},{},{},{},{}\n",
        gram.samples,
        gram.mean,
        gram.expected_mean,
        0.01 * gram.expected_mean,
        (gram.mean - gram.expected_mean).abs() <= 0.01 * gram.expected_mean
    ));
    out.push_str(&format!(
        "gram_diag_variance,{},{},{},{},{}\n",
        gram.samples,
        gram.variance,
        gram.expected_variance,
        0.05 * gram.expected_variance,
        (gram.variance - gram.expected_variance).abs() <= 0.05 * gram.expected_variance
    ));
    out.push_str(&format!(
        "gram_diag_gamma_fit,{},{},0,{},{}\n",
        gram.samples, gram.ks_statistic, gram.ks_threshold, gram.pass
    ));

    match &args.out {
        Some(path) => std::fs::write(path, out).map_err(|source| SimError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{out}"),
    }
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<()> {
    let mut cfg = ScenarioConfig::new(args.nr, args.u, args.mt, args.qam);
    cfg.power_ratio_db = args.power_ratio_db;
    cfg.seed = args.seed;
    cfg.validate()?;

    let grid = parse_grid(&args.ebn0)?;
    let mut out = String::from("scenario,ebn0_db,trials,nmse_sensing_only,nmse_benchmark\n");
    for ebn0 in grid {
        let point = sensing_benchmark_nmse(&cfg, ebn0, args.trials)?;
        out.push_str(&format!(
            "{}x{}x{},{},{},{},{}\n",
            args.nr, args.u, args.mt, ebn0, point.trials, point.nmse_sensing_only,
            point.nmse_benchmark
        ));
    }
    match &args.out {
        Some(path) => std::fs::write(path, out).map_err(|source| SimError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{out}"),
    }
    Ok(())
}
