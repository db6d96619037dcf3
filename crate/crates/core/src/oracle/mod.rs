//! Brute-force numerics used to cross-check the closed forms in [`crate::measures`].

pub mod bell;
pub mod discord;
pub mod intersection;
pub mod measurement;
pub mod simplex;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::pure_concurrence;
use crate::numkernel::{paulis, C64};
use crate::states::PureState;

pub use bell::{bell_threshold, chsh_max, correlation_tensor};
pub use discord::{conditional_entropy_numeric, discord_numeric, DiscordDirection};
pub use intersection::intersection_point;
pub use measurement::{
    luders_update, outcome_probability, projector_pair, MeasuredEnsemble, MeasurementDirection,
    Outcome,
};

/// Settings for the grid-plus-simplex minimizer and the seeded restarts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    /// Grid points per angle.
    pub grid_n: usize,
    /// Iteration cap for each simplex refinement.
    pub refine_iters: usize,
    /// Simplex diameter at which refinement stops.
    pub tol: f64,
    /// Random starts for the CHSH maximization.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_n: 64,
            refine_iters: 2000,
            tol: 1e-10,
            restarts: 16,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 8 {
            return Err(Error::Config(format!(
                "grid_n must be at least 8, got {}",
                self.grid_n
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!(
                "tol must be positive and finite, got {}",
                self.tol
            )));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Haar-random pure state: four complex standard normals, normalized.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    loop {
        let amps: [C64; 4] = std::array::from_fn(|_| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        if let Ok(psi) = PureState::new_normalized(amps) {
            return psi;
        }
    }
}

/// Oscillation amplitude of `⟨Π_m⟩_ψ` over measurement directions,
/// `½ |(tr W†σ_i W)_i|`, cross-checked against `Δ/2` and the B-side value.
pub fn amplitude_check(psi: &PureState) -> Result<f64> {
    const TOL: f64 = 1e-12;
    let side = |w: &crate::states::WMatrix| -> f64 {
        paulis()
            .iter()
            .map(|s| w.sandwich_trace(s).re.powi(2))
            .sum::<f64>()
    };
    let w = psi.w_matrix();
    let sq_a = side(&w);
    let sq_b = side(&w.transpose());
    let amp_a = 0.5 * sq_a.sqrt();
    let amp_b = 0.5 * sq_b.sqrt();
    let delta = pure_concurrence(psi).delta().value();
    // Δ = √(1 - C²) amplifies round-off near Δ = 0, so compare the squares there.
    let expected_sq = (1.0 - pure_concurrence(psi).value().powi(2)).max(0.0);
    let off_a = (amp_a - delta / 2.0)
        .abs()
        .min((sq_a - expected_sq).abs() / 4.0);
    let off_b = (amp_b - amp_a).abs().min((sq_b - sq_a).abs() / 4.0);
    if off_a > TOL {
        return Err(Error::Inconsistent {
            what: "oscillation amplitude vs Δ/2",
            discrepancy: off_a,
        });
    }
    if off_b > TOL {
        return Err(Error::Inconsistent {
            what: "oscillation amplitude on partition A vs B",
            discrepancy: off_b,
        });
    }
    Ok(amp_a)
}
