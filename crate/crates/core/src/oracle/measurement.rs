//! Rank-one projective measurements on one qubit and the Lüders update.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::measures::eigvals2;
use crate::numkernel::{kron, paulis, Mat2, Mat4, C64};
use crate::states::{DensityMatrix4, Partition, PureState};

/// Outcomes with probability below this are dropped rather than renormalized.
pub const DEGENERATE_OUTCOME: f64 = 1e-14;

/// Bloch-sphere direction `n̂ = (sin 2θ cos φ, sin 2θ sin φ, cos 2θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementDirection {
    theta: f64,
    phi: f64,
}

impl MeasurementDirection {
    pub const Z: MeasurementDirection = MeasurementDirection {
        theta: 0.0,
        phi: 0.0,
    };

    /// Canonicalizes arbitrary angles to `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)` without
    /// changing `n̂`.
    pub fn new(theta: f64, phi: f64) -> Self {
        // polar angle 2θ folded into [0, π]
        let mut polar = (2.0 * theta).rem_euclid(TAU);
        let mut phi = phi;
        if polar > PI {
            polar = TAU - polar;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        MeasurementDirection {
            theta: (polar / 2.0).min(FRAC_PI_2),
            phi,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let (s, c) = (2.0 * self.theta).sin_cos();
        [s * self.phi.cos(), s * self.phi.sin(), c]
    }

    /// Local projectors `(1 ± n̂·σ)/2` for outcomes 0 and 1.
    pub fn local_projectors(&self) -> [Mat2; 2] {
        let n = self.bloch_vector();
        let [sx, sy, sz] = paulis();
        let ns = sx.scale(n[0]) + sy.scale(n[1]) + sz.scale(n[2]);
        let id = Mat2::identity();
        [(id + ns).scale(0.5), (id - ns).scale(0.5)]
    }
}

/// `Π_m ⊗ 1` (partition A) or `1 ⊗ Π_m` (partition B) for `m = 0, 1`.
pub fn projector_pair(dir: &MeasurementDirection, partition: Partition) -> [Mat4; 2] {
    let local = dir.local_projectors();
    let id = Mat2::identity();
    local.map(|p| match partition {
        Partition::A => kron(&p, &id),
        Partition::B => kron(&id, &p),
    })
}

/// `tr(Π ρ)`
pub fn outcome_probability(rho: &DensityMatrix4, proj: &Mat4) -> f64 {
    (*proj * *rho.matrix()).trace().re.clamp(0.0, 1.0)
}

/// Transition probability `⟨Π_m⟩_ψ = tr(W† Π_m W)`, with `Wᵀ` on partition B.
pub fn pure_outcome_probability(
    psi: &PureState,
    dir: &MeasurementDirection,
    partition: Partition,
    m: usize,
) -> f64 {
    let w = match partition {
        Partition::A => psi.w_matrix(),
        Partition::B => psi.w_matrix().transpose(),
    };
    w.sandwich_trace(&dir.local_projectors()[m]).re
}

/// Outcome probability of a Werner-like state, `(1-p)/2 + p ⟨Π_m⟩_ψ`.
pub fn gwl_outcome_probability(
    psi: &PureState,
    p: f64,
    dir: &MeasurementDirection,
    partition: Partition,
    m: usize,
) -> f64 {
    (1.0 - p) / 2.0 + p * pure_outcome_probability(psi, dir, partition, m)
}

/// Post-measurement mixing parameters `x_m = p⟨Π_m⟩_ψ / p_m` of a Werner-like state.
pub fn gwl_mixing_parameters(
    psi: &PureState,
    p: f64,
    dir: &MeasurementDirection,
    partition: Partition,
) -> [f64; 2] {
    std::array::from_fn(|m| {
        let q = pure_outcome_probability(psi, dir, partition, m);
        p * q / ((1.0 - p) / 2.0 + p * q)
    })
}

/// One branch of a measured ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub state: DensityMatrix4,
}

/// `{p_m, Π_m ρ Π_m / p_m}`; a branch below [`DEGENERATE_OUTCOME`] is `None`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasuredEnsemble {
    pub partition: Partition,
    pub direction: MeasurementDirection,
    pub outcomes: [Option<Outcome>; 2],
}

impl MeasuredEnsemble {
    pub fn probabilities(&self) -> [f64; 2] {
        self.outcomes.map(|o| o.map_or(0.0, |o| o.probability))
    }

    /// Marginals of the post-measurement states on the unmeasured qubit.
    pub fn conditional_states(&self) -> [Option<Mat2>; 2] {
        let keep = self.partition.other();
        self.outcomes.map(|o| o.map(|o| o.state.reduced(keep)))
    }

    /// Reads back each branch's mixing parameter `x` from the spectrum
    /// `(1 ± x)/2` of the unmeasured marginal. The spectrum fixes `|x|`; its
    /// sign is that of `p`.
    pub fn extracted_mixing_parameters(&self, p: f64) -> [Option<f64>; 2] {
        self.conditional_states().map(|s| {
            s.map(|m| {
                let [hi, lo] = eigvals2(&m);
                (hi - lo).copysign(p)
            })
        })
    }
}

/// Lüders rule `ρ → Π_m ρ Π_m / tr(Π_m ρ)` for both outcomes.
pub fn luders_update(
    rho: &DensityMatrix4,
    dir: &MeasurementDirection,
    partition: Partition,
) -> MeasuredEnsemble {
    let projectors = projector_pair(dir, partition);
    let outcomes = projectors.map(|proj| {
        let post = proj * *rho.matrix() * proj;
        let probability = post.trace().re;
        (probability > DEGENERATE_OUTCOME).then(|| Outcome {
            probability,
            state: DensityMatrix4::new_unchecked(post * C64::new(1.0 / probability, 0.0)),
        })
    });
    MeasuredEnsemble {
        partition,
        direction: *dir,
        outcomes,
    }
}

/// Local Bloch vector `(tr σ_x ρ, tr σ_y ρ, tr σ_z ρ)` of a qubit state.
pub fn bloch_vector(m: &Mat2) -> [f64; 3] {
    paulis().map(|s| (s * *m).trace().re)
}
