//! Channel realization: Rayleigh fading user channels plus the target
//! steering matrix, in both complex and real-lifted form.

use alloc::vec::Vec;


use crate::config::ScenarioConfig;
use crate::math::{CMat, Mat};
use crate::rng::Xoshiro256pp;
use crate::signal::steering_vector;
use crate::{Error, Result};

/// Angles are placed uniformly in this sector.
const ANGLE_SECTOR_DEG: (f64, f64) = (30.0, 150.0);
const PLACEMENT_ATTEMPTS: usize = 100_000;

/// One draw of the propagation environment.
///
/// `steering` is the true receive steering matrix that shapes the received
/// signal; `steering_prior` is the (possibly angle-perturbed) matrix handed
/// to detectors. They coincide unless an angle error is configured.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    /// Complex fading channel, `n_rx x users`, unit-variance entries.
    pub fading: CMat,
    /// Complex receive steering matrix, `n_rx x targets`, unit-norm columns.
    pub steering: CMat,
    /// Steering matrix assumed by the receiver.
    pub steering_prior: CMat,
    /// Target angles in radians.
    pub angles: Vec<f64>,
    /// Real lift of `fading`, `N x K`, unscaled.
    pub h: Mat,
    /// Real lift of `steering`, `N x M`.
    pub a: Mat,
    /// Real lift of `steering_prior`.
    pub a_prior: Mat,
}

impl ChannelRealization {
    /// Real communication channel scaled so detection can work on the raw
    /// odd-integer symbol grid while the transmitted power stays unit.
    pub fn comm_channel(&self, norm_factor: f64) -> Mat {
        self.h.scaled(norm_factor)
    }
}

/// Half-power beamwidth of an `n`-element half-wavelength array at
/// broadside, in degrees.
fn beamwidth_deg(n_rx: usize) -> f64 {
    // 0.886 * lambda / (n d) radians with d = lambda / 2.
    (0.886 * 2.0 / n_rx as f64).to_degrees()
}

fn place_angles(cfg: &ScenarioConfig, rng: &mut Xoshiro256pp) -> Result<Vec<f64>> {
    let min_sep = libm::fmax(10.0, 2.0 * beamwidth_deg(cfg.n_rx));
    let (lo, hi) = ANGLE_SECTOR_DEG;
    // whole-set rejection keeps the conditional distribution uniform and
    // cannot dead-end the way incremental placement can
    'attempt: for _ in 0..PLACEMENT_ATTEMPTS {
        let angles: Vec<f64> = (0..cfg.targets).map(|_| rng.next_range(lo, hi)).collect();
        for i in 0..angles.len() {
            for j in (i + 1)..angles.len() {
                if libm::fabs(angles[i] - angles[j]) < min_sep {
                    continue 'attempt;
                }
            }
        }
        return Ok(angles.iter().map(|a| a.to_radians()).collect());
    }
    Err(Error::AnglePlacement {
        targets: cfg.targets,
        min_separation_deg: min_sep,
    })
}

/// Draws a fading channel and target geometry for the scenario.
///
/// Fading entries are i.i.d. circularly symmetric complex normal with unit
/// variance. Target angles are drawn uniformly over the sector with a
/// minimum pairwise separation of `max(10 deg, 2 beamwidths)`, enforced by
/// rejection, so steering columns are close to orthogonal.
pub fn draw_channel(cfg: &ScenarioConfig, rng: &mut Xoshiro256pp) -> Result<ChannelRealization> {
    cfg.validate()?;
    let angles = place_angles(cfg, rng)?;

    let mut fading = CMat::zeros(cfg.n_rx, cfg.users);
    for r in 0..cfg.n_rx {
        for c in 0..cfg.users {
            fading.set(r, c, rng.next_complex_gaussian(1.0));
        }
    }

    let steering = CMat::from_cols(
        cfg.n_rx,
        angles
            .iter()
            .map(|&th| steering_vector(th, cfg.n_rx))
            .collect(),
    );
    let steering_prior = if cfg.angle_error_deg == 0.0 {
        steering.clone()
    } else {
        let err = cfg.angle_error_deg.to_radians();
        CMat::from_cols(
            cfg.n_rx,
            angles
                .iter()
                .map(|&th| steering_vector(th + err, cfg.n_rx))
                .collect(),
        )
    };

    let h = fading.lift();
    let a = steering.lift();
    let a_prior = steering_prior.lift();

    Ok(ChannelRealization {
        fading,
        steering,
        steering_prior,
        angles,
        h,
        a,
        a_prior,
    })
}
