//! Closed-form correlation measures for Werner-like states: entropies,
//! concurrences, entanglement of formation and the exact quantum discord.
//!
//! Every entropy is in bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{herm_eigvals, kron, psd_sqrt, sigma_y, Mat2, C64};
use crate::oracle::{discord_numeric, DiscordDirection, OptimizerConfig};
use crate::states::{gwl_unchecked, DensityMatrix4, MixingParameter, PureState, HERMITIAN_TOL};

/// Arguments of `H₂` this far outside `[0, 1]` are clamped, further out rejected.
pub const ENTROPY_CLAMP: f64 = 1e-12;

/// Eigenvalues of `√ρ ρ̃ √ρ` below this fraction of the largest are round-off.
const WOOTTERS_NOISE_FLOOR: f64 = 8.0 * f64::EPSILON;

/// `t log₂ t` with `0 log 0 = 0`.
fn xlog2x(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * t.log2()
    }
}

/// Shannon binary entropy `-z log₂ z - (1-z) log₂(1-z)`.
pub fn binary_entropy(z: f64) -> Result<f64> {
    if !(-ENTROPY_CLAMP..=1.0 + ENTROPY_CLAMP).contains(&z) {
        return Err(Error::OutOfDomain {
            what: "binary entropy argument",
            value: z,
        });
    }
    let z = z.clamp(0.0, 1.0);
    Ok(-xlog2x(z) - xlog2x(1.0 - z))
}

/// `-Σ λ log₂ λ` over a spectrum; slightly negative round-off values count as zero.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> f64 {
    -eigenvalues.iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// von Neumann entropy of a two-qubit state.
pub fn von_neumann_entropy(rho: &DensityMatrix4) -> f64 {
    spectrum_entropy(&rho.eigenvalues())
}

/// Eigenvalues of a 2×2 Hermitian matrix, descending.
pub fn eigvals2(m: &Mat2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + r, mean - r]
}

/// von Neumann entropy of a single-qubit state.
pub fn qubit_entropy(m: &Mat2) -> f64 {
    spectrum_entropy(&eigvals2(m))
}

/// Entropy of a Werner-like state; it depends on `p` only.
pub fn gwl_entropy(p: f64) -> Result<f64> {
    let p = MixingParameter::gwl(p)?.value();
    Ok(2.0 - 0.25 * (xlog2x(1.0 + 3.0 * p) + 3.0 * xlog2x(1.0 - p)))
}

/// A concurrence value in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn new(c: f64) -> Result<Self> {
        if !(-ENTROPY_CLAMP..=1.0 + ENTROPY_CLAMP).contains(&c) {
            return Err(Error::OutOfDomain {
                what: "concurrence",
                value: c,
            });
        }
        Ok(Concurrence(c.clamp(0.0, 1.0)))
    }

    fn clamped(c: f64) -> Self {
        Concurrence(c.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn delta(self) -> Delta {
        Delta((1.0 - self.0 * self.0).max(0.0).sqrt())
    }
}

/// `Δ = √(1 - C²)` of a concurrence.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Delta(f64);

impl Delta {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `2 |z1 z4 - z2 z3|`
pub fn pure_concurrence(psi: &PureState) -> Concurrence {
    Concurrence::clamped(2.0 * psi.w_matrix().det().norm())
}

/// Closed-form concurrence of the Werner-like state with pure-state concurrence `c`.
///
/// Uses the two nontrivial eigenvalues of `ρ ρ̃` and the doubly degenerate
/// `((1-p)/4)²`; the `|p|` factor keeps the ordering for negative `p`.
pub fn gwl_concurrence_from(c: Concurrence, p: f64) -> Concurrence {
    let c = c.value();
    let delta_sq = 1.0 - c * c;
    let base = ((1.0 - p) / 4.0).powi(2);
    let mid = p * (1.0 - p + 2.0 * p * c * c);
    let root = p.abs() * c * ((1.0 + p).powi(2) - 4.0 * p * p * delta_sq).max(0.0).sqrt();
    let l1 = base + (mid + root) / 4.0;
    let l2 = (base + (mid - root) / 4.0).max(0.0);
    Concurrence::clamped(l1.max(0.0).sqrt() - l2.sqrt() - (1.0 - p) / 2.0)
}

pub fn gwl_concurrence(psi: &PureState, p: f64) -> Result<Concurrence> {
    let p = MixingParameter::gwl(p)?.value();
    Ok(gwl_concurrence_from(pure_concurrence(psi), p))
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// The `λᵢ` of `ρ ρ̃` are taken as the eigenvalues of the Hermitian PSD
/// matrix `√ρ ρ̃ √ρ`.
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Concurrence {
    let yy = kron(&sigma_y(), &sigma_y());
    let tilde = yy * rho.matrix().conj() * yy;
    let root = psd_sqrt(rho.matrix(), HERMITIAN_TOL).expect("density matrix is PSD");
    let r = (root * tilde * root).hermitian_part();
    let lambda = herm_eigvals(&r, HERMITIAN_TOL).expect("hermitian by construction");
    let floor = WOOTTERS_NOISE_FLOOR * lambda[0].max(0.0);
    let s = lambda.map(|l| if l <= floor { 0.0 } else { l.sqrt() });
    Concurrence::clamped(s[0] - s[1] - s[2] - s[3])
}

/// `H₂((1 + √(1 - C²))/2)`
pub fn eof_from_concurrence(c: Concurrence) -> f64 {
    binary_entropy((1.0 + c.delta().value()) / 2.0).expect("argument in [1/2, 1]")
}

/// Entanglement of formation of an arbitrary two-qubit state.
pub fn eof(rho: &DensityMatrix4) -> f64 {
    eof_from_concurrence(wootters_concurrence(rho))
}

/// `1 / (1 + 2C)`, the largest `p` at which the Werner-like state is separable.
pub fn p_critical_from(c: Concurrence) -> f64 {
    1.0 / (1.0 + 2.0 * c.value())
}

pub fn p_critical(psi: &PureState) -> f64 {
    p_critical_from(pure_concurrence(psi))
}

/// Marginal entropy `H₂((1 + pΔ)/2)`, equal on both qubits.
pub fn reduced_entropy(psi: &PureState, p: f64) -> Result<f64> {
    let p = MixingParameter::gwl(p)?.value();
    let delta = pure_concurrence(psi).delta().value();
    binary_entropy((1.0 + p * delta) / 2.0)
}

/// `F_p(x) = (1-p) / (2(1-x)) · H₂((1+x)/2)`
fn weighted_entropy(p: f64, x: f64) -> Result<f64> {
    Ok((1.0 - p) / (2.0 * (1.0 - x)) * binary_entropy((1.0 + x) / 2.0)?)
}

/// Extremal post-measurement mixing parameters `(x̲₀, x̲₁)` for amplitude `A = Δ/2`.
pub fn optimal_mixing_parameters(delta: Delta, p: f64) -> (f64, f64) {
    let a = delta.value() / 2.0;
    (
        p * (1.0 - 2.0 * a) / (1.0 - 2.0 * p * a),
        p * (1.0 + 2.0 * a) / (1.0 + 2.0 * p * a),
    )
}

/// Minimal conditional entropy after a projective measurement on either qubit.
///
/// At `p = 1` both post-measurement states are pure and the value is 0.
pub fn conditional_entropy_analytic(psi: &PureState, p: f64) -> Result<f64> {
    let p = MixingParameter::gwl(p)?.value();
    conditional_entropy_from(pure_concurrence(psi), p)
}

pub fn conditional_entropy_from(c: Concurrence, p: f64) -> Result<f64> {
    if p >= 1.0 {
        return Ok(0.0);
    }
    let (x0, x1) = optimal_mixing_parameters(c.delta(), p);
    Ok(weighted_entropy(p, x0)? + weighted_entropy(p, x1)?)
}

/// Exact quantum discord of the Werner-like state, symmetric in the measured qubit.
pub fn discord_analytic(psi: &PureState, p: f64) -> Result<f64> {
    let p = MixingParameter::gwl(p)?.value();
    discord_from(pure_concurrence(psi), p)
}

/// Discord as a function of the pure-state concurrence alone.
pub fn discord_from(c: Concurrence, p: f64) -> Result<f64> {
    let d = c.delta().value();
    let pd = p * d;
    let spectrum_term = 0.25 * (xlog2x(1.0 + 3.0 * p) + 3.0 * xlog2x(1.0 - p));
    let mut delta = -2.0 + spectrum_term + binary_entropy((1.0 + pd) / 2.0)?;
    // Each branch weight vanishes exactly when its H₂ argument degenerates to 0/0.
    let w0 = (1.0 - pd) / 2.0;
    if w0 > 0.0 {
        delta += w0 * binary_entropy((1.0 + p * (1.0 - 2.0 * d)) / (2.0 * (1.0 - pd)))?;
    }
    let w1 = (1.0 + pd) / 2.0;
    if w1 > 0.0 {
        delta += w1 * binary_entropy((1.0 + p * (1.0 + 2.0 * d)) / (2.0 * (1.0 + pd)))?;
    }
    Ok(delta)
}

/// All closed-form quantities for one `(ψ, p)`, plus an optional numerical discord.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub p: f64,
    pub entropy_total: f64,
    pub entropy_marginal: f64,
    pub concurrence_pure: f64,
    pub concurrence_gwl: f64,
    pub eof: f64,
    pub discord_analytic: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discord_numeric: Option<f64>,
    pub p_critical: f64,
}

impl CorrelationReport {
    /// Evaluates the report; `oracle` additionally runs the numerical minimization.
    pub fn evaluate(psi: &PureState, p: f64, oracle: Option<&OptimizerConfig>) -> Result<Self> {
        let p = MixingParameter::gwl(p)?.value();
        let c = pure_concurrence(psi);
        let c_gwl = gwl_concurrence_from(c, p);
        let discord_numeric = match oracle {
            Some(cfg) => Some(discord_numeric(
                &gwl_unchecked(psi, p),
                DiscordDirection::MeasureA,
                cfg,
            )?),
            None => None,
        };
        Ok(CorrelationReport {
            p,
            entropy_total: gwl_entropy(p)?,
            entropy_marginal: reduced_entropy(psi, p)?,
            concurrence_pure: c.value(),
            concurrence_gwl: c_gwl.value(),
            eof: eof_from_concurrence(c_gwl),
            discord_analytic: discord_from(c, p)?,
            discord_numeric,
            p_critical: p_critical_from(c),
        })
    }
}

/// Phase-dependent concurrence of the `psi6` family, `(2/9)|3 e^{i(φ2+φ3)} + e^{i(φ1+φ4)}|`.
pub fn psi6_concurrence(phases: [f64; 4]) -> f64 {
    let a = C64::from_polar(3.0, phases[1] + phases[2]);
    let b = C64::from_polar(1.0, phases[0] + phases[3]);
    2.0 / 9.0 * (a + b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{gwl, named_state, werner, NamedState, Partition};

    const EOF_HALF: f64 = 0.354_578_902_665_269_9;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        // high-precision reference
        assert!((binary_entropy(0.933013).unwrap() - 0.354_577_769_873_382_7).abs() < 1e-13);
        assert!(binary_entropy(1.0 + 1e-13).is_ok());
        assert!(binary_entropy(1.0 + 1e-9).is_err());
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn gwl_entropy_values() {
        assert_eq!(gwl_entropy(0.0).unwrap(), 2.0);
        assert_eq!(gwl_entropy(1.0).unwrap(), 0.0);
        // spectrum {1/2, 1/6, 1/6, 1/6}
        let want = spectrum_entropy(&[0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert!((gwl_entropy(1.0 / 3.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 1.792_481_250_360_578).abs() < 1e-14);
        assert!(gwl_entropy(-1.0 / 3.0).unwrap().is_finite());
        assert!(gwl_entropy(-0.4).is_err());
    }

    #[test]
    fn gwl_entropy_matches_spectrum() {
        let psi = NamedState::Psi3.state();
        for k in 0..=40 {
            let p = -1.0 / 3.0 + k as f64 * (4.0 / 3.0) / 40.0;
            let rho = gwl(&psi, p).unwrap();
            assert!(
                (von_neumann_entropy(&rho) - gwl_entropy(p).unwrap()).abs() < 1e-12,
                "p = {p}"
            );
        }
    }

    #[test]
    fn pure_concurrences_of_examples() {
        let want = [0.25, 0.5, 0.75, 1.0];
        for (s, w) in NamedState::TABLE.iter().zip(want) {
            assert!(
                (pure_concurrence(&s.state()).value() - w).abs() < 1e-15,
                "{s}"
            );
        }
        let product = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(pure_concurrence(&product).value(), 0.0);
        assert!((pure_concurrence(&NamedState::Psi5.state()).value() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn psi6_phase_formula() {
        for k in 0..16 {
            let phi = k as f64 * 0.4;
            let psi = NamedState::Psi6([phi, 0.0, 0.0, 0.0]).state();
            let want = 2.0 / 9.0 * (10.0 + 6.0 * phi.cos()).sqrt();
            assert!((pure_concurrence(&psi).value() - want).abs() < 1e-12);
            assert!((psi6_concurrence([phi, 0.0, 0.0, 0.0]) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gwl_concurrence_examples() {
        let psi2 = NamedState::Psi2.state();
        assert_eq!(gwl_concurrence(&psi2, 0.3).unwrap().value(), 0.0);
        assert!(
            (gwl_concurrence(&NamedState::BellPsiPlus.state(), 1.0)
                .unwrap()
                .value()
                - 1.0)
                .abs()
                < 1e-15
        );
        // brute-force Wootters (numpy, eigenvalues of ρρ̃) gives 0.3
        let c = gwl_concurrence(&psi2, 0.8).unwrap().value();
        assert!((c - 0.3).abs() < 1e-12);
        let w = wootters_concurrence(&gwl(&psi2, 0.8).unwrap()).value();
        assert!((w - 0.3).abs() < 1e-10);
    }

    #[test]
    fn wootters_examples() {
        assert_eq!(
            wootters_concurrence(&DensityMatrix4::maximally_mixed()).value(),
            0.0
        );
        assert!((wootters_concurrence(&werner(-1.0).unwrap()).value() - 1.0).abs() < 1e-10);
        let psi3 = NamedState::Psi3.state();
        assert!(wootters_concurrence(&gwl(&psi3, 0.4).unwrap()).value() < 1e-7);
        assert!(wootters_concurrence(&gwl(&psi3, 0.41).unwrap()).value() > 1e-3);
        // pure states: Wootters equals 2|det W|
        let psi1 = NamedState::Psi1.state();
        let w = wootters_concurrence(&DensityMatrix4::from_pure(&psi1)).value();
        assert!((w - 0.25).abs() < 1e-10);
    }

    #[test]
    fn eof_values() {
        assert_eq!(eof_from_concurrence(Concurrence::new(1.0).unwrap()), 1.0);
        assert_eq!(eof_from_concurrence(Concurrence::new(0.0).unwrap()), 0.0);
        assert!((eof_from_concurrence(Concurrence::new(0.5).unwrap()) - EOF_HALF).abs() < 1e-14);
        assert!(Concurrence::new(1.5).is_err());
    }

    #[test]
    fn p_critical_values() {
        let want = [2.0 / 3.0, 0.5, 0.4, 1.0 / 3.0];
        for (s, w) in NamedState::TABLE.iter().zip(want) {
            assert!((p_critical(&s.state()) - w).abs() <= 1e-14);
        }
        assert_eq!(p_critical_from(Concurrence::new(0.0).unwrap()), 1.0);
        assert_eq!(p_critical_from(Concurrence::new(1.0).unwrap()), 1.0 / 3.0);
        let mut last = f64::INFINITY;
        for k in 0..=20 {
            let pc = p_critical_from(Concurrence::new(k as f64 / 20.0).unwrap());
            assert!(pc < last);
            last = pc;
        }
    }

    #[test]
    fn reduced_entropy_matches_marginal_spectrum() {
        let psi = named_state("psi1").unwrap();
        for p in [-0.3, 0.0, 0.2, 0.77, 1.0] {
            let rho = gwl(&psi, p).unwrap();
            let direct = qubit_entropy(&rho.reduced(Partition::A));
            assert!((reduced_entropy(&psi, p).unwrap() - direct).abs() < 1e-12);
            let direct_b = qubit_entropy(&rho.reduced(Partition::B));
            assert!((direct - direct_b).abs() < 1e-12);
        }
        assert_eq!(reduced_entropy(&psi, 0.0).unwrap(), 1.0);
        let bell = NamedState::BellPsiPlus.state();
        assert!((reduced_entropy(&bell, 0.6).unwrap() - 1.0).abs() < 1e-15);
        let psi2 = NamedState::Psi2.state();
        assert!((reduced_entropy(&psi2, 1.0).unwrap() - EOF_HALF).abs() < 1e-14);
    }

    #[test]
    fn conditional_entropy_examples() {
        for s in NamedState::TABLE {
            assert!((conditional_entropy_analytic(&s.state(), 0.0).unwrap() - 1.0).abs() < 1e-15);
            assert_eq!(conditional_entropy_analytic(&s.state(), 1.0).unwrap(), 0.0);
        }
        let bell = NamedState::BellPsiPlus.state();
        for p in [-0.3, 0.25, 0.5, 0.9] {
            let want = binary_entropy((1.0 + p) / 2.0).unwrap();
            assert!((conditional_entropy_analytic(&bell, p).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn mixing_restriction_holds() {
        for c in [0.0, 0.3, 0.75, 1.0] {
            let delta = Concurrence::new(c).unwrap().delta();
            for k in 0..20 {
                let p = -1.0 / 3.0 + k as f64 * 0.066;
                let (x0, x1) = optimal_mixing_parameters(delta, p);
                let lhs = x0 / (1.0 - x0) + x1 / (1.0 - x1);
                assert!((lhs - 2.0 * p / (1.0 - p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn discord_endpoints_and_assembly() {
        for s in NamedState::TABLE {
            let psi = s.state();
            assert!(discord_analytic(&psi, 0.0).unwrap().abs() < 1e-15);
            let pure_eof = eof_from_concurrence(pure_concurrence(&psi));
            assert!((discord_analytic(&psi, 1.0).unwrap() - pure_eof).abs() <= 1e-12);
            for k in 0..25 {
                let p = -1.0 / 3.0 + k as f64 * (4.0 / 3.0) / 24.0;
                let assembled = reduced_entropy(&psi, p).unwrap() - gwl_entropy(p).unwrap()
                    + conditional_entropy_analytic(&psi, p).unwrap();
                assert!((assembled - discord_analytic(&psi, p).unwrap()).abs() < 1e-12);
            }
        }
        let psi2 = NamedState::Psi2.state();
        assert!((discord_analytic(&psi2, 1.0).unwrap() - EOF_HALF).abs() < 1e-13);
        // high-precision reference
        let psi3 = NamedState::Psi3.state();
        assert!((discord_analytic(&psi3, 0.7).unwrap() - 0.291_829_148_283_313_3).abs() < 1e-13);
    }

    #[test]
    fn discord_of_product_state() {
        let product = PureState::from_real([0.6, 0.8, 0.0, 0.0]).unwrap();
        assert!(discord_analytic(&product, 1.0).unwrap().abs() < 1e-15);
        // white noise keeps it diagonal in a product basis, so still classical
        for p in [-0.3, 0.2, 0.5] {
            assert!(discord_analytic(&product, p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn discord_equivalence_and_monotonicity() {
        let (psi2, psi5) = (NamedState::Psi2.state(), NamedState::Psi5.state());
        for k in 0..50 {
            let p = -1.0 / 3.0 + k as f64 * (4.0 / 3.0) / 49.0;
            let d2 = discord_analytic(&psi2, p).unwrap();
            let d5 = discord_analytic(&psi5, p).unwrap();
            assert!((d2 - d5).abs() < 1e-12);
        }
        for p in [0.1, 0.4, 0.7, 0.95] {
            let mut last = -1.0;
            for k in 0..=10 {
                let d = discord_from(Concurrence::new(k as f64 / 10.0).unwrap(), p).unwrap();
                assert!(d >= last - 1e-15, "p = {p}, C = {}", k as f64 / 10.0);
                last = d;
            }
        }
    }

    #[test]
    fn report_endpoints() {
        let r = CorrelationReport::evaluate(&NamedState::Psi2.state(), 0.0, None).unwrap();
        assert_eq!(r.discord_analytic, 0.0);
        assert_eq!(r.entropy_total, 2.0);
        assert!(r.discord_numeric.is_none());
        let r = CorrelationReport::evaluate(&NamedState::Psi1.state(), 1.0, None).unwrap();
        assert!((r.eof - r.discord_analytic).abs() < 1e-12);
        assert!(CorrelationReport::evaluate(&NamedState::Psi1.state(), 1.5, None).is_err());
    }
}
