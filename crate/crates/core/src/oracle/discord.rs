//! Conditional entropy and discord by direct minimization over projective measurements.

use crate::error::Result;
use crate::measures::{qubit_entropy, von_neumann_entropy};
use crate::numkernel::{Mat2, ZERO};
use crate::states::{DensityMatrix4, Partition};

use super::measurement::{MeasurementDirection, DEGENERATE_OUTCOME};
use super::simplex::{grid_best, nelder_mead};
use super::OptimizerConfig;

/// Grid cells handed to the simplex refinement.
const REFINED_CELLS: usize = 3;

/// Which qubit is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscordDirection {
    /// `δ_{A→B}`, measuring A
    MeasureA,
    /// `δ_{B→A}`, measuring B
    MeasureB,
}

impl DiscordDirection {
    pub fn measured(self) -> Partition {
        match self {
            DiscordDirection::MeasureA => Partition::A,
            DiscordDirection::MeasureB => Partition::B,
        }
    }
}

/// Unnormalized conditional state `tr_X[(Π ⊗ 1) ρ]` of the unmeasured qubit.
fn conditional_block(rho: &DensityMatrix4, proj: &Mat2, measured: Partition) -> Mat2 {
    let r = rho.matrix();
    let mut out = Mat2::zeros();
    for u in 0..2 {
        for v in 0..2 {
            let mut acc = ZERO;
            for a in 0..2 {
                for b in 0..2 {
                    let (row, col) = match measured {
                        Partition::A => (2 * a + u, 2 * b + v),
                        Partition::B => (2 * u + a, 2 * v + b),
                    };
                    acc += proj[(b, a)] * r[(row, col)];
                }
            }
            out[(u, v)] = acc;
        }
    }
    out
}

/// `Σ_m p_m S(ρ_{unmeasured|m})` for one measurement direction.
pub fn measured_conditional_entropy(
    rho: &DensityMatrix4,
    dir: &MeasurementDirection,
    measured: Partition,
) -> f64 {
    dir.local_projectors()
        .iter()
        .map(|proj| {
            let block = conditional_block(rho, proj, measured);
            let pm = block.trace().re;
            if pm < DEGENERATE_OUTCOME {
                0.0
            } else {
                pm * qubit_entropy(&block.scale(1.0 / pm))
            }
        })
        .sum()
}

/// Minimum over projective measurements on `measured` of the post-measurement
/// conditional entropy, with the minimizing direction.
pub fn conditional_entropy_numeric(
    rho: &DensityMatrix4,
    measured: Partition,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementDirection)> {
    cfg.validate()?;
    let objective = |x: &[f64]| {
        measured_conditional_entropy(rho, &MeasurementDirection::new(x[0], x[1]), measured)
    };
    let n = cfg.grid_n;
    let step = [
        std::f64::consts::FRAC_PI_2 / (n - 1) as f64,
        std::f64::consts::TAU / n as f64,
    ];
    let seeds = grid_best(|t, p| objective(&[t, p]), n, REFINED_CELLS);
    let mut best = (
        seeds[0].1,
        MeasurementDirection::new(seeds[0].0 .0, seeds[0].0 .1),
    );
    for ((t, p), _) in seeds {
        let m = nelder_mead(objective, &[t, p], &step, cfg.tol, 0.0, cfg.refine_iters);
        if m.value < best.0 {
            best = (m.value, MeasurementDirection::new(m.point[0], m.point[1]));
        }
    }
    Ok(best)
}

/// `S(ρ_measured) - S(ρ) + min_Π Σ_m p_m S(ρ_{unmeasured|m})`
pub fn discord_numeric(
    rho: &DensityMatrix4,
    direction: DiscordDirection,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let measured = direction.measured();
    let (cond, _) = conditional_entropy_numeric(rho, measured, cfg)?;
    Ok(qubit_entropy(&rho.reduced(measured)) - von_neumann_entropy(rho) + cond)
}
