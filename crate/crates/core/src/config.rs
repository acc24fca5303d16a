//! Scenario configuration shared by generation, detection, and the
//! simulation harness.

use alloc::format;

use crate::{Error, Result};

/// How the sensing power budget is shared between targets.
///
/// `PerTarget` gives every echo the full budget; `TotalSplit` divides the
/// budget evenly, which models a fixed total power constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensingPowerMode {
    PerTarget,
    TotalSplit,
}

/// Dimensions and algorithm parameters of one simulated uplink scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    /// Receive antennas at the array.
    pub n_rx: usize,
    /// Transmit antennas (enters only through the unit-norm downlink
    /// beamformers, so it never changes the received statistics).
    pub n_tx: usize,
    /// Single-antenna uplink users.
    pub users: usize,
    /// Single-antenna sensing targets.
    pub targets: usize,
    /// Square QAM order (4, 16, or 64).
    pub qam_order: u32,
    /// ADMM penalty parameter, strictly positive.
    pub rho: f64,
    /// ADMM iteration budget.
    pub max_iterations: usize,
    /// Iterations between search refinements under the flexible schedule.
    pub flexible_interval: usize,
    /// Number of refinement passes under the flexible schedule;
    /// `0` derives `ceil(max_iterations / flexible_interval)`.
    pub flexible_passes: usize,
    /// Communication-to-sensing power ratio in dB.
    pub power_ratio_db: f64,
    /// Receiver-side steering angle error in degrees (imperfect prior).
    pub angle_error_deg: f64,
    /// Base RNG seed; trials run on substreams of it.
    pub seed: u64,
    /// Sensing power sharing mode.
    pub sensing_power: SensingPowerMode,
    /// Use the guarded per-entry neighborhood update that only applies a
    /// step when it strictly lowers the residual cost.
    pub ns_guarded: bool,
}

impl ScenarioConfig {
    /// A scenario with the default algorithm parameters.
    pub fn new(n_rx: usize, users: usize, targets: usize, qam_order: u32) -> Self {
        Self {
            n_rx,
            n_tx: n_rx,
            users,
            targets,
            qam_order,
            rho: 2.0,
            max_iterations: 10,
            flexible_interval: 1,
            flexible_passes: 0,
            power_ratio_db: -8.0,
            angle_error_deg: 0.0,
            seed: 1,
            sensing_power: SensingPowerMode::PerTarget,
            ns_guarded: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_rx == 0 || self.users == 0 {
            return Err(Error::InvalidConfig(format!(
                "need at least one receive antenna and one user (got {} x {})",
                self.n_rx, self.users
            )));
        }
        if self.n_rx < self.users + self.targets {
            return Err(Error::InvalidConfig(format!(
                "receive antennas ({}) must be at least users + targets ({})",
                self.n_rx,
                self.users + self.targets
            )));
        }
        crate::signal::Constellation::new(self.qam_order)?;
        if !(self.rho > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "penalty parameter must be positive (got {})",
                self.rho
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration budget must be at least 1".into(),
            ));
        }
        if self.flexible_interval == 0 {
            return Err(Error::InvalidConfig(
                "flexible interval must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Real-lifted receive dimension `2 * n_rx`.
    pub fn n(&self) -> usize {
        2 * self.n_rx
    }

    /// Real-lifted symbol dimension `2 * users`.
    pub fn k(&self) -> usize {
        2 * self.users
    }

    /// Real-lifted sensing dimension `2 * targets`.
    pub fn m(&self) -> usize {
        2 * self.targets
    }

    /// Effective (interval, passes) pair of the flexible schedule.
    pub fn flexible_schedule(&self) -> (usize, usize) {
        let interval = self.flexible_interval;
        let passes = if self.flexible_passes > 0 {
            self.flexible_passes
        } else {
            self.max_iterations.div_ceil(interval)
        };
        (interval, passes)
    }

    /// Per-target sensing power implied by the power ratio and sharing mode.
    pub fn sensing_power_per_target(&self) -> f64 {
        // power_ratio_db = 10 log10(Pc / Ps) with Pc = 1.
        let total = libm::pow(10.0, -self.power_ratio_db / 10.0);
        match self.sensing_power {
            SensingPowerMode::PerTarget => total,
            SensingPowerMode::TotalSplit => {
                if self.targets == 0 {
                    0.0
                } else {
                    total / self.targets as f64
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scenario_is_valid() {
        assert!(ScenarioConfig::new(32, 8, 2, 16).validate().is_ok());
    }

    #[test]
    fn rejects_overloaded_array() {
        let cfg = ScenarioConfig::new(8, 7, 2, 4);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_bad_penalty_and_iterations() {
        let mut cfg = ScenarioConfig::new(16, 4, 1, 4);
        cfg.rho = 0.0;
        assert!(cfg.validate().is_err());
        cfg.rho = 2.0;
        cfg.max_iterations = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn power_ratio_of_minus_eight_db() {
        let cfg = ScenarioConfig::new(32, 8, 2, 16);
        let ps = cfg.sensing_power_per_target();
        assert!((ps - libm::pow(10.0, 0.8)).abs() < 1e-12);
        let mut split = cfg.clone();
        split.sensing_power = SensingPowerMode::TotalSplit;
        assert!((split.sensing_power_per_target() - ps / 2.0).abs() < 1e-12);
    }

    #[test]
    fn flexible_schedule_defaults_to_iteration_budget() {
        let mut cfg = ScenarioConfig::new(32, 8, 2, 16);
        cfg.max_iterations = 10;
        cfg.flexible_interval = 2;
        assert_eq!(cfg.flexible_schedule(), (2, 5));
        cfg.flexible_passes = 3;
        assert_eq!(cfg.flexible_schedule(), (2, 3));
    }
}
