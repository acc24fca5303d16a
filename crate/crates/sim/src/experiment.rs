//! Seeded Monte-Carlo experiment engine.
//!
//! Every trial runs on its own RNG substream derived from
//! `(seed, point index, trial index)`, so results do not depend on the
//! number of worker threads. Trials execute in fixed-size batches that are
//! reduced in index order; a point stops when it reaches either the trial
//! budget or the target bit-error count.

use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use isac_core::config::ScenarioConfig;
use isac_core::detect::{
    build_projection_cache, i_box_admm_detect, i_ns_admm_detect, i_ns_admm_flexible_detect,
    ml_oracle_detect, mmse_detect, p_box_admm_detect, p_ns_admm_detect, DetectionResult, MlMethod,
};
use isac_core::math::Mat;
use isac_core::rng::Xoshiro256pp;
use isac_core::signal::{draw_channel, draw_instance, ebn0_to_noise_var, Constellation};

use crate::metrics::{compute_nmse, MetricsRecord};
use crate::{Result, SimError};

/// Trials dispatched per parallel batch. Fixed so that early stopping on
/// the error target is independent of the worker count.
const TRIAL_BATCH: u64 = 256;

/// Fraction of failed trials (per point) that aborts the run.
const MAX_FAILURE_RATE: f64 = 0.01;

/// Detector selection for the harness.
///
/// The MMSE baseline and the ML oracles run on the projected system (the
/// joint problem reduces to it exactly) and recover the sensing vector by
/// least squares, like the projection-based detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    PNsAdmm,
    PBoxAdmm,
    INsAdmm,
    INsAdmmFlex,
    IBoxAdmm,
    Mmse,
    MlSphere,
    MlExhaustive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::PNsAdmm,
        Algorithm::PBoxAdmm,
        Algorithm::INsAdmm,
        Algorithm::INsAdmmFlex,
        Algorithm::IBoxAdmm,
        Algorithm::Mmse,
        Algorithm::MlSphere,
        Algorithm::MlExhaustive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::PNsAdmm => "p-ns-admm",
            Algorithm::PBoxAdmm => "p-box-admm",
            Algorithm::INsAdmm => "i-ns-admm",
            Algorithm::INsAdmmFlex => "i-ns-admm-flex",
            Algorithm::IBoxAdmm => "i-box-admm",
            Algorithm::Mmse => "mmse",
            Algorithm::MlSphere => "ml-sphere",
            Algorithm::MlExhaustive => "ml-exhaustive",
        }
    }
}

impl FromStr for Algorithm {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ml" {
            return Ok(Algorithm::MlSphere);
        }
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| SimError::Config(format!("unknown algorithm '{s}'")))
    }
}

/// Full description of one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    /// Scenario label used in output rows; defaults to `NRxUxMT`.
    pub label: String,
    pub scenario: ScenarioConfig,
    pub algorithms: Vec<Algorithm>,
    pub ebn0_grid_db: Vec<f64>,
    /// Trials per point, upper bound.
    pub trial_budget: u64,
    /// Bit-error count at which a point stops early.
    pub target_bit_errors: u64,
    /// Forces the per-real-dimension noise variance, bypassing the grid
    /// mapping (diagnostics).
    pub noise_var_override: Option<f64>,
    /// Replaces the communication channel with zeros (diagnostics).
    pub zero_channel: bool,
    /// Measure wall time per detector call. Off by default because timing
    /// breaks byte-level determinism of the output.
    pub measure_runtime: bool,
    /// Also emit one row per trial next to the aggregate output.
    pub emit_per_trial: bool,
    /// Output CSV path; stdout when absent.
    pub output: Option<std::path::PathBuf>,
}

impl ExperimentSpec {
    pub fn new(scenario: ScenarioConfig) -> Self {
        let label = format!(
            "{}x{}x{}",
            scenario.n_rx, scenario.users, scenario.targets
        );
        Self {
            label,
            scenario,
            algorithms: vec![Algorithm::PNsAdmm],
            ebn0_grid_db: vec![0.0, 2.0, 4.0, 6.0, 8.0],
            trial_budget: 1000,
            target_bit_errors: 500,
            noise_var_override: None,
            zero_channel: false,
            measure_runtime: false,
            emit_per_trial: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.algorithms.is_empty() {
            return Err(SimError::Config("algorithm list is empty".into()));
        }
        if self.ebn0_grid_db.is_empty() {
            return Err(SimError::Config("SNR grid is empty".into()));
        }
        if self.trial_budget == 0 {
            return Err(SimError::Config("trial budget must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    pub trial: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub nmse: f64,
    pub runtime_ns: u64,
    pub failed: bool,
}

/// One experiment point: which algorithm, which SNR, and its outcome.
pub type PointRun = (Algorithm, f64, PointOutcome);

/// Aggregate of one (algorithm, SNR) point plus its per-trial outcomes.
#[derive(Debug, Clone)]
pub struct PointOutcome {
    pub record: MetricsRecord,
    pub trials: Vec<TrialOutcome>,
}

/// Runs a detector on one drawn instance. Exposed for paired comparisons.
pub fn detect_instance(
    algorithm: Algorithm,
    y: &[f64],
    h_eff: &Mat,
    a_rx: &Mat,
    cfg: &ScenarioConfig,
    noise_var: f64,
) -> isac_core::Result<DetectionResult> {
    match algorithm {
        Algorithm::PNsAdmm => p_ns_admm_detect(y, h_eff, a_rx, cfg),
        Algorithm::PBoxAdmm => p_box_admm_detect(y, h_eff, a_rx, cfg),
        Algorithm::INsAdmm => i_ns_admm_detect(y, h_eff, a_rx, cfg),
        Algorithm::INsAdmmFlex => i_ns_admm_flexible_detect(y, h_eff, a_rx, cfg),
        Algorithm::IBoxAdmm => i_box_admm_detect(y, h_eff, a_rx, cfg),
        Algorithm::Mmse | Algorithm::MlSphere | Algorithm::MlExhaustive => {
            let cons = Constellation::new(cfg.qam_order)?;
            let cache = build_projection_cache(a_rx, h_eff, y, cfg.rho)?;
            let symbols = match algorithm {
                Algorithm::Mmse => mmse_detect(&cache.y_proj, &cache.h_proj, noise_var, &cons)?,
                Algorithm::MlSphere => {
                    ml_oracle_detect(&cache.y_proj, &cache.h_proj, &cons, MlMethod::Sphere)?
                }
                _ => ml_oracle_detect(&cache.y_proj, &cache.h_proj, &cons, MlMethod::Exhaustive)?,
            };
            let hx = h_eff.mul_vec(&symbols);
            let resid: Vec<f64> = y.iter().zip(&hx).map(|(a, b)| a - b).collect();
            let sensing = cache.xi.mul_vec(&a_rx.tr_mul_vec(&resid));
            Ok(DetectionResult {
                symbols,
                sensing,
                admm_iterations: 0,
                ns_passes: 0,
                cost_ns: 0,
            })
        }
    }
}

/// Bit errors between the ground truth and the Gray decoding of detected
/// symbols.
pub fn count_bit_errors(cons: &Constellation, truth: &[bool], symbols: &[f64]) -> u64 {
    let b = cons.bits_per_real_symbol() as usize;
    let mut errors = 0;
    for (i, &s) in symbols.iter().enumerate() {
        for (j, bit) in cons.amplitude_to_bits(s).iter().enumerate() {
            if *bit != truth[i * b + j] {
                errors += 1;
            }
        }
    }
    errors
}

/// Reflection coefficients recovered from a real-lifted sensing estimate by
/// dividing out the known unit-modulus downlink symbols.
pub fn extract_reflection(sensing: &[f64], downlink: &[Complex64]) -> Vec<Complex64> {
    let mt = downlink.len();
    (0..mt)
        .map(|m| Complex64::new(sensing[m], sensing[m + mt]) / downlink[m])
        .collect()
}

fn run_trial(
    spec: &ExperimentSpec,
    algorithm: Algorithm,
    noise_var: f64,
    point_index: u64,
    trial: u64,
) -> TrialOutcome {
    let cfg = &spec.scenario;
    let cons = Constellation::new(cfg.qam_order).expect("validated config");
    let stream = (point_index << 40) | trial;
    let mut rng = Xoshiro256pp::substream(cfg.seed, stream);

    let chan = match draw_channel(cfg, &mut rng) {
        Ok(c) => c,
        Err(_) => {
            return TrialOutcome {
                trial,
                bits: 0,
                bit_errors: 0,
                nmse: 0.0,
                runtime_ns: 0,
                failed: true,
            }
        }
    };
    let inst = draw_instance(cfg, &chan, noise_var, &mut rng);

    let (h_eff, y) = if spec.zero_channel {
        let zero = Mat::zeros(cfg.n(), cfg.k());
        let asv = chan.a.mul_vec(&inst.sensing);
        let y: Vec<f64> = asv.iter().zip(&inst.noise).map(|(a, n)| a + n).collect();
        (zero, y)
    } else {
        (
            chan.comm_channel(cons.norm_factor()),
            inst.received.clone(),
        )
    };

    let started = spec.measure_runtime.then(Instant::now);
    let detected = detect_instance(algorithm, &y, &h_eff, &chan.a_prior, cfg, noise_var);
    let runtime_ns = started.map_or(0, |t| t.elapsed().as_nanos() as u64);

    match detected {
        Ok(out) => {
            let bit_errors = count_bit_errors(&cons, &inst.bits, &out.symbols);
            let nmse = if cfg.targets == 0 {
                0.0
            } else {
                let beta_hat = extract_reflection(&out.sensing, &inst.downlink);
                compute_nmse(&beta_hat, &inst.reflection).unwrap_or(f64::NAN)
            };
            TrialOutcome {
                trial,
                bits: inst.bits.len() as u64,
                bit_errors,
                nmse,
                runtime_ns,
                failed: false,
            }
        }
        Err(_) => TrialOutcome {
            trial,
            bits: 0,
            bit_errors: 0,
            nmse: 0.0,
            runtime_ns,
            failed: true,
        },
    }
}

/// Runs one (algorithm, SNR) point to its stopping rule and returns the
/// aggregate record plus per-trial outcomes in trial order.
pub fn run_point(
    spec: &ExperimentSpec,
    algorithm: Algorithm,
    point_index: u64,
    ebn0_db: f64,
) -> Result<PointOutcome> {
    let cfg = &spec.scenario;
    let noise_var = spec
        .noise_var_override
        .unwrap_or_else(|| ebn0_to_noise_var(ebn0_db, cfg));

    let mut outcomes: Vec<TrialOutcome> = Vec::new();
    let mut bit_errors = 0u64;
    let mut failed = 0u64;
    let mut next_trial = 0u64;

    while next_trial < spec.trial_budget && bit_errors < spec.target_bit_errors {
        let batch_end = (next_trial + TRIAL_BATCH).min(spec.trial_budget);
        let batch: Vec<TrialOutcome> = (next_trial..batch_end)
            .into_par_iter()
            .map(|t| run_trial(spec, algorithm, noise_var, point_index, t))
            .collect();
        for out in batch {
            bit_errors += out.bit_errors;
            failed += out.failed as u64;
            outcomes.push(out);
        }
        next_trial = batch_end;

        let attempted = outcomes.len() as u64;
        if failed as f64 > MAX_FAILURE_RATE * attempted as f64 {
            return Err(SimError::PointAborted {
                scenario: spec.label.clone(),
                algorithm: algorithm.name().into(),
                ebn0_db,
                failed,
                trials: attempted,
            });
        }
    }

    let ok_trials: Vec<&TrialOutcome> = outcomes.iter().filter(|t| !t.failed).collect();
    let trials = ok_trials.len() as u64;
    let bits: u64 = ok_trials.iter().map(|t| t.bits).sum();
    let nmse_sum: f64 = ok_trials.iter().map(|t| t.nmse).sum();
    let runtime_sum: u64 = ok_trials.iter().map(|t| t.runtime_ns).sum();

    let record = MetricsRecord {
        scenario: spec.label.clone(),
        algorithm: algorithm.name().into(),
        ebn0_db,
        trials,
        failed_trials: failed,
        bits,
        bit_errors,
        ber: if bits == 0 {
            0.0
        } else {
            bit_errors as f64 / bits as f64
        },
        nmse: if trials == 0 {
            0.0
        } else {
            nmse_sum / trials as f64
        },
        mean_runtime_ns: runtime_sum.checked_div(trials).unwrap_or(0),
        seed: cfg.seed,
    };
    Ok(PointOutcome {
        record,
        trials: outcomes,
    })
}

/// Runs the whole experiment and keeps the per-trial outcomes.
///
/// The RNG substream of a trial depends only on (seed, SNR index, trial
/// index), so all algorithms see identical channel and noise draws and the
/// output is reproducible for any worker count.
pub fn run_experiment_detailed(
    spec: &ExperimentSpec,
) -> Result<(Vec<MetricsRecord>, Vec<PointRun>)> {
    spec.validate()?;
    let mut records = Vec::new();
    let mut points = Vec::new();
    for algorithm in &spec.algorithms {
        for (si, &ebn0_db) in spec.ebn0_grid_db.iter().enumerate() {
            let point = run_point(spec, *algorithm, si as u64, ebn0_db)?;
            records.push(point.record.clone());
            points.push((*algorithm, ebn0_db, point));
        }
    }
    Ok((records, points))
}

/// Runs the whole experiment: every algorithm over every SNR point.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<MetricsRecord>> {
    run_experiment_detailed(spec).map(|(records, _)| records)
}

/// Renders per-trial rows for the `emit_per_trial` option.
pub fn render_trial_csv(spec: &ExperimentSpec, points: &[PointRun]) -> String {
    let mut out = String::from("scenario,algorithm,ebn0_db,trial,bits,bit_errors,nmse,failed\n");
    for (algorithm, ebn0_db, point) in points {
        for t in &point.trials {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                spec.label,
                algorithm.name(),
                ebn0_db,
                t.trial,
                t.bits,
                t.bit_errors,
                t.nmse,
                t.failed
            ));
        }
    }
    out
}
