//! CHSH violation of Werner-like states by numerical optimization of the
//! measurement directions.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::Result;
use crate::numkernel::{kron, paulis};
use crate::states::{gwl, DensityMatrix4, PureState};

use super::measurement::MeasurementDirection;
use super::simplex::nelder_mead;
use super::OptimizerConfig;

/// Classical bound of the CHSH expression.
pub const LOCAL_BOUND: f64 = 2.0;
/// Margin above [`LOCAL_BOUND`] counted as a violation at `p = 1`.
pub const VIOLATION_MARGIN: f64 = 1e-9;
/// Width of the final bisection bracket.
pub const THRESHOLD_TOL: f64 = 1e-9;

/// `T_ij = tr(ρ σ_i ⊗ σ_j)`
pub fn correlation_tensor(rho: &DensityMatrix4) -> [[f64; 3]; 3] {
    let s = paulis();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (kron(&s[i], &s[j]) * *rho.matrix()).trace().re)
    })
}

fn apply(t: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    std::array::from_fn(|i| (0..3).map(|j| t[i][j] * v[j]).sum())
}

fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// CHSH value for Bob's directions `b`, `b'` with Alice's directions chosen
/// optimally, `|T(b + b')| + |T(b - b')|`.
pub fn chsh_for(t: &[[f64; 3]; 3], b: [f64; 3], b2: [f64; 3]) -> f64 {
    let plus = std::array::from_fn(|i| b[i] + b2[i]);
    let minus = std::array::from_fn(|i| b[i] - b2[i]);
    norm(apply(t, plus)) + norm(apply(t, minus))
}

fn negated_chsh(t: &[[f64; 3]; 3], x: &[f64]) -> f64 {
    let b = MeasurementDirection::new(x[0], x[1]).bloch_vector();
    let b2 = MeasurementDirection::new(x[2], x[3]).bloch_vector();
    -chsh_for(t, b, b2)
}

/// Best CHSH value and Bob's angles `(θ, φ, θ', φ')` over `cfg.restarts`
/// seeded random starts.
fn chsh_search(rho: &DensityMatrix4, cfg: &OptimizerConfig) -> Result<(f64, Vec<f64>)> {
    cfg.validate()?;
    let t = correlation_tensor(rho);
    let mut rng = cfg.rng();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for _ in 0..cfg.restarts {
        let start = [
            rng.random_range(0.0..PI / 2.0),
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..PI / 2.0),
            rng.random_range(0.0..TAU),
        ];
        let m = nelder_mead(
            |x| negated_chsh(&t, x),
            &start,
            &[0.3; 4],
            cfg.tol,
            0.0,
            cfg.refine_iters,
        );
        if -m.value > best.0 {
            best = (-m.value, m.point);
        }
    }
    Ok(best)
}

/// Largest CHSH value over all pairs of local observables on each side.
pub fn chsh_max(rho: &DensityMatrix4, cfg: &OptimizerConfig) -> Result<f64> {
    chsh_search(rho, cfg).map(|(v, _)| v)
}

/// Smallest `p` at which `ρ(ψ, p)` violates the CHSH inequality, or `None`
/// if it does not violate it even at `p = 1`.
///
/// The noise term has no correlations, so the optimal settings do not move
/// with `p`: the restarts run once at `p = 1` and each bisection step refines
/// from there.
pub fn bell_threshold(psi: &PureState, cfg: &OptimizerConfig) -> Result<Option<f64>> {
    let (top, settings) = chsh_search(&gwl(psi, 1.0)?, cfg)?;
    if top - LOCAL_BOUND <= VIOLATION_MARGIN {
        return Ok(None);
    }
    let violation = |p: f64| -> Result<f64> {
        let t = correlation_tensor(&gwl(psi, p)?);
        let m = nelder_mead(
            |x| negated_chsh(&t, x),
            &settings,
            &[0.05; 4],
            cfg.tol,
            0.0,
            cfg.refine_iters,
        );
        Ok(-m.value - LOCAL_BOUND)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if violation(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
