//! Flat `key = value` experiment configuration with one section per
//! scenario. Unknown keys are hard errors so a config never silently
//! drifts from the fields it is meant to mirror.
//!
//! ```text
//! [32x8x2]
//! nr = 32
//! u = 8
//! mt = 2
//! qam = 16
//! tmax = 10
//! algos = p-ns-admm,i-ns-admm,mmse
//! ebn0 = -12:0:2
//! trials = 4000
//! seed = 7
//! ```

use std::path::Path;

use isac_core::config::{ScenarioConfig, SensingPowerMode};

use crate::experiment::{Algorithm, ExperimentSpec};
use crate::{Result, SimError};

/// Inclusive `start:stop:step` grid, or a single value.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: &str| SimError::Config(format!("bad grid '{text}': {msg}"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => Ok(vec![parts[0]
            .trim()
            .parse()
            .map_err(|_| bad("not a number"))?]),
        3 => {
            let start: f64 = parts[0].trim().parse().map_err(|_| bad("bad start"))?;
            let stop: f64 = parts[1].trim().parse().map_err(|_| bad("bad stop"))?;
            let step: f64 = parts[2].trim().parse().map_err(|_| bad("bad step"))?;
            if step <= 0.0 {
                return Err(bad("step must be positive"));
            }
            if stop < start {
                return Err(bad("stop below start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        _ => Err(bad("expected VALUE or START:STOP:STEP")),
    }
}

pub fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>> {
    text.split(',')
        .map(|s| s.trim().parse::<Algorithm>())
        .collect()
}

fn parse_bool(value: &str, line: usize) -> Result<bool> {
    match value {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(SimError::Parse {
            line,
            message: format!("expected a boolean, found '{value}'"),
        }),
    }
}

/// Parses a configuration file into one experiment per section.
pub fn parse_config(text: &str) -> Result<Vec<ExperimentSpec>> {
    let mut specs: Vec<ExperimentSpec> = Vec::new();
    let mut current: Option<(String, ScenarioConfig, ExperimentDraft)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if let Some(finished) = current.take() {
                specs.push(finish_section(finished)?);
            }
            current = Some((
                name.trim().to_string(),
                ScenarioConfig::new(16, 4, 1, 4),
                ExperimentDraft::default(),
            ));
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(SimError::Parse {
                line: line_no,
                message: format!("expected 'key = value', found '{line}'"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let Some((_, scenario, draft)) = current.as_mut() else {
            return Err(SimError::Parse {
                line: line_no,
                message: "key outside of a [section]".into(),
            });
        };
        apply_key(scenario, draft, key, value, line_no)?;
    }
    if let Some(finished) = current.take() {
        specs.push(finish_section(finished)?);
    }
    if specs.is_empty() {
        return Err(SimError::Config("configuration has no sections".into()));
    }
    Ok(specs)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<Vec<ExperimentSpec>> {
    let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

#[derive(Default)]
struct ExperimentDraft {
    algorithms: Option<Vec<Algorithm>>,
    ebn0: Option<Vec<f64>>,
    trials: Option<u64>,
    target_errors: Option<u64>,
    noise_var_override: Option<f64>,
    zero_channel: Option<bool>,
    timing: Option<bool>,
    emit_per_trial: Option<bool>,
    out: Option<std::path::PathBuf>,
}

fn apply_key(
    scenario: &mut ScenarioConfig,
    draft: &mut ExperimentDraft,
    key: &str,
    value: &str,
    line: usize,
) -> Result<()> {
    let num_err = |what: &str| SimError::Parse {
        line,
        message: format!("bad {what}: '{value}'"),
    };
    match key {
        "nr" => scenario.n_rx = value.parse().map_err(|_| num_err("nr"))?,
        "nt" => scenario.n_tx = value.parse().map_err(|_| num_err("nt"))?,
        "u" => scenario.users = value.parse().map_err(|_| num_err("u"))?,
        "mt" => scenario.targets = value.parse().map_err(|_| num_err("mt"))?,
        "qam" => scenario.qam_order = value.parse().map_err(|_| num_err("qam"))?,
        "rho" => scenario.rho = value.parse().map_err(|_| num_err("rho"))?,
        "tmax" => scenario.max_iterations = value.parse().map_err(|_| num_err("tmax"))?,
        "flex_i" => scenario.flexible_interval = value.parse().map_err(|_| num_err("flex_i"))?,
        "flex_p" => scenario.flexible_passes = value.parse().map_err(|_| num_err("flex_p"))?,
        "power_ratio_db" => {
            scenario.power_ratio_db = value.parse().map_err(|_| num_err("power_ratio_db"))?
        }
        "angle_error_deg" => {
            scenario.angle_error_deg = value.parse().map_err(|_| num_err("angle_error_deg"))?
        }
        "seed" => scenario.seed = value.parse().map_err(|_| num_err("seed"))?,
        "sensing_power" => {
            scenario.sensing_power = match value {
                "per-target" => SensingPowerMode::PerTarget,
                "total-split" => SensingPowerMode::TotalSplit,
                _ => {
                    return Err(SimError::Parse {
                        line,
                        message: format!(
                            "sensing_power must be 'per-target' or 'total-split', found '{value}'"
                        ),
                    })
                }
            }
        }
        "ns_guarded" => scenario.ns_guarded = parse_bool(value, line)?,
        "algos" => draft.algorithms = Some(parse_algorithms(value)?),
        "ebn0" => draft.ebn0 = Some(parse_grid(value)?),
        "trials" => draft.trials = Some(value.parse().map_err(|_| num_err("trials"))?),
        "target_errors" => {
            draft.target_errors = Some(value.parse().map_err(|_| num_err("target_errors"))?)
        }
        "noise_var_override" => {
            draft.noise_var_override =
                Some(value.parse().map_err(|_| num_err("noise_var_override"))?)
        }
        "zero_channel" => draft.zero_channel = Some(parse_bool(value, line)?),
        "timing" => draft.timing = Some(parse_bool(value, line)?),
        "emit_per_trial" => draft.emit_per_trial = Some(parse_bool(value, line)?),
        "out" => draft.out = Some(std::path::PathBuf::from(value)),
        _ => {
            return Err(SimError::Parse {
                line,
                message: format!("unknown key '{key}'"),
            })
        }
    }
    Ok(())
}

fn finish_section(
    (label, scenario, draft): (String, ScenarioConfig, ExperimentDraft),
) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::new(scenario);
    spec.label = label;
    if let Some(a) = draft.algorithms {
        spec.algorithms = a;
    }
    if let Some(g) = draft.ebn0 {
        spec.ebn0_grid_db = g;
    }
    if let Some(t) = draft.trials {
        spec.trial_budget = t;
    }
    if let Some(t) = draft.target_errors {
        spec.target_bit_errors = t;
    }
    spec.noise_var_override = draft.noise_var_override;
    spec.zero_channel = draft.zero_channel.unwrap_or(false);
    spec.measure_runtime = draft.timing.unwrap_or(false);
    spec.emit_per_trial = draft.emit_per_trial.unwrap_or(false);
    spec.output = draft.out;
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two desk scenarios
[32x8x2]
nr = 32
u = 8
mt = 2
qam = 16
tmax = 10
algos = p-ns-admm, p-box-admm
ebn0 = -12:-4:4
trials = 100
seed = 3

[16x2x1]
nr = 16
u = 2
mt = 1
qam = 4
algos = ml-exhaustive
ebn0 = 8
trials = 10
";

    #[test]
    fn parses_sections_and_grids() {
        let specs = parse_config(SAMPLE).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].label, "32x8x2");
        assert_eq!(specs[0].scenario.n_rx, 32);
        assert_eq!(specs[0].ebn0_grid_db, vec![-12.0, -8.0, -4.0]);
        assert_eq!(specs[0].algorithms.len(), 2);
        assert_eq!(specs[1].ebn0_grid_db, vec![8.0]);
    }

    #[test]
    fn unknown_key_is_a_hard_error() {
        let text = "[a]\nnr = 16\nu = 2\nmt = 1\nbogus = 1\n";
        match parse_config(text) {
            Err(SimError::Parse { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("bogus"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn key_outside_section_is_rejected() {
        assert!(parse_config("nr = 16\n").is_err());
    }

    #[test]
    fn invalid_scenario_is_rejected_at_parse_time() {
        // more users than antennas
        let text = "[a]\nnr = 4\nu = 8\nmt = 1\n";
        assert!(parse_config(text).is_err());
    }

    #[test]
    fn grid_parser_edge_cases() {
        assert_eq!(parse_grid("5").unwrap(), vec![5.0]);
        assert_eq!(parse_grid("-4:0:2").unwrap(), vec![-4.0, -2.0, 0.0]);
        assert!(parse_grid("0:10:0").is_err());
        assert!(parse_grid("10:0:2").is_err());
        assert!(parse_grid("1:2").is_err());
    }
}
