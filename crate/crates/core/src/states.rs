//! Two-qubit pure states, their amplitude matrices, and the Werner-like mixed
//! states built from them.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{
    herm_eigvals, kron, partial_trace_a, partial_trace_b, sigma_y, Mat2, Mat4, C64, ZERO,
};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// Slack allowed on the mixing-parameter interval endpoints.
const RANGE_SLACK: f64 = 1e-12;

/// Which qubit of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Partition {
    A,
    B,
}

impl Partition {
    pub fn other(self) -> Partition {
        match self {
            Partition::A => Partition::B,
            Partition::B => Partition::A,
        }
    }
}

/// Normalized two-qubit pure state `z1|00⟩ + z2|01⟩ + z3|10⟩ + z4|11⟩`.
///
/// The global phase is kept as given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState([C64; 4]);

impl PureState {
    /// Accepts amplitudes whose squared norm is 1 within `1e-12`.
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        check_finite(&amplitudes)?;
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(PureState(amplitudes))
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn new_normalized(amplitudes: [C64; 4]) -> Result<Self> {
        check_finite(&amplitudes)?;
        let n = norm_sqr(&amplitudes).sqrt();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(PureState(amplitudes.map(|z| z / n)))
    }

    /// `normalize = false` rejects unnormalized input instead of rescaling.
    pub fn from_amplitudes(amplitudes: [C64; 4], normalize: bool) -> Result<Self> {
        if normalize {
            Self::new_normalized(amplitudes)
        } else {
            Self::new(amplitudes)
        }
    }

    pub fn from_real(amplitudes: [f64; 4]) -> Result<Self> {
        Self::new(amplitudes.map(|x| C64::new(x, 0.0)))
    }

    /// Product state `|a⟩ ⊗ |b⟩`.
    pub fn product(a: [C64; 2], b: [C64; 2]) -> Result<Self> {
        Self::new_normalized([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn w_matrix(&self) -> WMatrix {
        let [z1, z2, z3, z4] = self.0;
        WMatrix(Mat2::from_rows([[z1, z2], [z3, z4]]).expect("finite amplitudes"))
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> Mat4 {
        Mat4::outer(&self.0, &self.0)
    }

    /// `(σ_y ⊗ σ_y)|ψ̄⟩`
    pub fn spin_flipped(&self) -> PureState {
        let yy = kron(&sigma_y(), &sigma_y());
        PureState(yy.apply(&self.0.map(|z| z.conj())))
    }

    /// `U|ψ⟩`; `U` must be unitary.
    pub fn apply(&self, u: &Mat4) -> Result<PureState> {
        check_unitary(u)?;
        PureState::new_normalized(u.apply(&self.0))
    }

    /// Marginal of `|ψ⟩⟨ψ|` on `partition`: `W W†` for A, `Wᵀ (Wᵀ)†` for B.
    pub fn reduced(&self, partition: Partition) -> Mat2 {
        let w = self.w_matrix();
        match partition {
            Partition::A => w.rho_a(),
            Partition::B => w.rho_b(),
        }
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn norm_sqr(amplitudes: &[C64; 4]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum()
}

fn check_finite(amplitudes: &[C64; 4]) -> Result<()> {
    match amplitudes
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// The 2×2 amplitude matrix `[[z1, z2], [z3, z4]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WMatrix(Mat2);

impl WMatrix {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn transpose(&self) -> WMatrix {
        WMatrix(self.0.transpose())
    }

    pub fn det(&self) -> C64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    /// `W W†`
    pub fn rho_a(&self) -> Mat2 {
        self.0 * self.0.adjoint()
    }

    /// `Wᵀ (Wᵀ)†`
    pub fn rho_b(&self) -> Mat2 {
        let t = self.0.transpose();
        t * t.adjoint()
    }

    /// `tr(W† M W)`
    pub fn sandwich_trace(&self, m: &Mat2) -> C64 {
        (self.0.adjoint() * *m * self.0).trace()
    }
}

/// Validated mixing parameter for one of the two state families.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct MixingParameter(f64);

impl MixingParameter {
    pub const GWL_MIN: f64 = -1.0 / 3.0;
    pub const GWL_MAX: f64 = 1.0;
    pub const WERNER_MIN: f64 = -1.0;
    pub const WERNER_MAX: f64 = 1.0 / 3.0;

    /// `p ∈ [-1/3, 1]`
    pub fn gwl(p: f64) -> Result<Self> {
        Self::checked(p, "Werner-like", Self::GWL_MIN, Self::GWL_MAX)
    }

    /// `p ∈ [-1, 1/3]`
    pub fn werner(p: f64) -> Result<Self> {
        Self::checked(p, "Werner", Self::WERNER_MIN, Self::WERNER_MAX)
    }

    fn checked(p: f64, family: &'static str, lo: f64, hi: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::OutOfDomain {
                what: "mixing parameter",
                value: p,
            });
        }
        if p < lo - RANGE_SLACK {
            return Err(Error::MixingOutOfRange {
                p,
                family,
                bound: "lower",
                limit: lo,
            });
        }
        if p > hi + RANGE_SLACK {
            return Err(Error::MixingOutOfRange {
                p,
                family,
                bound: "upper",
                limit: hi,
            });
        }
        Ok(MixingParameter(p.clamp(lo, hi)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4(Mat4);

impl DensityMatrix4 {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4) -> Result<Self> {
        m.check_hermitian(HERMITIAN_TOL)?;
        let trace = m.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let min = herm_eigvals(&m, HERMITIAN_TOL)?[3];
        if min < -PSD_TOL {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(DensityMatrix4(m))
    }

    /// Skips validation. The caller guarantees the density-matrix properties.
    pub fn new_unchecked(m: Mat4) -> Self {
        DensityMatrix4(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4(Mat4::identity().scale(0.25))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        DensityMatrix4(psi.projector())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        herm_eigvals(&self.0, HERMITIAN_TOL).expect("density matrix is Hermitian")
    }

    /// Marginal on `partition` (the other qubit is traced out).
    pub fn reduced(&self, partition: Partition) -> Mat2 {
        match partition {
            Partition::A => partial_trace_b(&self.0),
            Partition::B => partial_trace_a(&self.0),
        }
    }
}

/// `(1-p)/4 · 1 + p |ψ⟩⟨ψ|` for `p ∈ [-1/3, 1]`.
pub fn gwl(psi: &PureState, p: f64) -> Result<DensityMatrix4> {
    let p = MixingParameter::gwl(p)?.value();
    Ok(gwl_unchecked(psi, p))
}

/// [`gwl`] without the range check, for sweeps over already validated `p`.
pub fn gwl_unchecked(psi: &PureState, p: f64) -> DensityMatrix4 {
    let m = Mat4::identity().scale((1.0 - p) / 4.0) + psi.projector().scale(p);
    DensityMatrix4(m)
}

/// `(1-p)/4 · 1 + (p/2) F` for `p ∈ [-1, 1/3]`, with `F` the swap operator.
pub fn werner(p: f64) -> Result<DensityMatrix4> {
    let p = MixingParameter::werner(p)?.value();
    let (d, o) = ((1.0 + p) / 4.0, (1.0 - p) / 4.0);
    let x = 2.0 * p / 4.0;
    Ok(DensityMatrix4(Mat4::from_real([
        [d, 0.0, 0.0, 0.0],
        [0.0, o, x, 0.0],
        [0.0, x, o, 0.0],
        [0.0, 0.0, 0.0, d],
    ])))
}

/// Swap operator `Σ |ij⟩⟨ji|`.
pub fn exchange_operator() -> Mat4 {
    Mat4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Marginal of a density matrix on `partition`.
pub fn reduced(rho: &DensityMatrix4, partition: Partition) -> Mat2 {
    rho.reduced(partition)
}

/// `(σ_y ⊗ σ_y) ρ̄ (σ_y ⊗ σ_y)`
pub fn spin_flip(rho: &DensityMatrix4) -> DensityMatrix4 {
    let yy = kron(&sigma_y(), &sigma_y());
    DensityMatrix4(yy * rho.0.conj() * yy)
}

/// `U ρ U†`; rejects `U` whose `max |U†U - 1|` exceeds `1e-12`.
pub fn apply_unitary(rho: &DensityMatrix4, u: &Mat4) -> Result<DensityMatrix4> {
    check_unitary(u)?;
    Ok(DensityMatrix4(*u * rho.0 * u.adjoint()))
}

fn check_unitary(u: &Mat4) -> Result<()> {
    let deviation = u.unitarity_defect();
    if !(deviation <= UNITARY_TOL) {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// The example states used throughout, addressable by a short id.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedState {
    Psi1,
    Psi2,
    Psi3,
    BellPsiPlus,
    BellPsiMinus,
    BellPhiPlus,
    BellPhiMinus,
    Psi5,
    /// Phases `φ1..φ4` (radians) on the four amplitudes.
    Psi6([f64; 4]),
}

pub const NAMED_STATE_IDS: &str =
    "psi1, psi2, psi3, bell:psi+, bell:psi-, bell:phi+, bell:phi-, psi5, psi6, psi6(phi1,phi2,phi3,phi4)";

impl NamedState {
    /// The four states tabulated with their critical parameters.
    pub const TABLE: [NamedState; 4] = [
        NamedState::Psi1,
        NamedState::Psi2,
        NamedState::Psi3,
        NamedState::BellPsiPlus,
    ];

    pub fn state(&self) -> PureState {
        let r = |x: f64| C64::new(x, 0.0);
        let amps = match *self {
            NamedState::Psi1 => {
                let (a, b) = (7f64.sqrt() / 8.0, 5f64.sqrt() / 8.0);
                [r(a), r(3.0 * b), r(b), r(a)]
            }
            NamedState::Psi2 => [
                r(-0.5),
                r(-2f64.sqrt() / 2.0),
                r(2f64.sqrt() / 3.0),
                r(1.0 / 6.0),
            ],
            NamedState::Psi3 => [
                r((9.0f64 / 40.0).sqrt()),
                r((3.0f64 / 20.0).sqrt()),
                r((3.0f64 / 5.0).sqrt()),
                r(-(1.0f64 / 40.0).sqrt()),
            ],
            // |Ψ±⟩ = (|00⟩ ± |11⟩)/√2, |Φ±⟩ = (|01⟩ ± |10⟩)/√2
            NamedState::BellPsiPlus => [r(FRAC_1_SQRT_2), ZERO, ZERO, r(FRAC_1_SQRT_2)],
            NamedState::BellPsiMinus => [r(FRAC_1_SQRT_2), ZERO, ZERO, r(-FRAC_1_SQRT_2)],
            NamedState::BellPhiPlus => [ZERO, r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2), ZERO],
            NamedState::BellPhiMinus => [ZERO, r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2), ZERO],
            NamedState::Psi5 => {
                let s3 = 3f64.sqrt();
                [
                    ZERO,
                    r(-(2.0 + s3).sqrt() / 2.0),
                    r((2.0 - s3).sqrt() / 2.0),
                    ZERO,
                ]
            }
            NamedState::Psi6(phi) => {
                let s2 = 2f64.sqrt();
                let mags = [-s2 / 6.0, s2 / 3.0, s2 / 2.0, s2 / 3.0];
                std::array::from_fn(|i| C64::from_polar(1.0, phi[i]) * mags[i])
            }
        };
        PureState::new(amps).expect("named states are normalized")
    }

    pub fn id(&self) -> String {
        match self {
            NamedState::Psi1 => "psi1".into(),
            NamedState::Psi2 => "psi2".into(),
            NamedState::Psi3 => "psi3".into(),
            NamedState::BellPsiPlus => "bell:psi+".into(),
            NamedState::BellPsiMinus => "bell:psi-".into(),
            NamedState::BellPhiPlus => "bell:phi+".into(),
            NamedState::BellPhiMinus => "bell:phi-".into(),
            NamedState::Psi5 => "psi5".into(),
            NamedState::Psi6(p) => format!("psi6({},{},{},{})", p[0], p[1], p[2], p[3]),
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        let unknown = || Error::UnknownState {
            id: id.to_string(),
            valid: NAMED_STATE_IDS,
        };
        Ok(match id.trim() {
            "psi1" => NamedState::Psi1,
            "psi2" => NamedState::Psi2,
            "psi3" => NamedState::Psi3,
            "bell:psi+" => NamedState::BellPsiPlus,
            "bell:psi-" => NamedState::BellPsiMinus,
            "bell:phi+" => NamedState::BellPhiPlus,
            "bell:phi-" => NamedState::BellPhiMinus,
            "psi5" => NamedState::Psi5,
            "psi6" => NamedState::Psi6([0.0; 4]),
            other => {
                let args = other
                    .strip_prefix("psi6(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                let phases = parse_reals(args)?;
                let phases: [f64; 4] = phases.try_into().map_err(|v: Vec<f64>| Error::Parse {
                    token: args.to_string(),
                    reason: format!("psi6 takes 4 phases, got {}", v.len()),
                })?;
                NamedState::Psi6(phases)
            }
        })
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Looks up an example state by id.
pub fn named_state(id: &str) -> Result<PureState> {
    id.parse::<NamedState>().map(|s| s.state())
}

fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse {
                    token: tok.to_string(),
                    reason: "expected a finite real number".into(),
                })
        })
        .collect()
}

/// Textual state description: `named:<id>` or `z1re,z1im,z2re,z2im,z3re,z3im,z4re,z4im`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Named(NamedState),
    Amplitudes([C64; 4]),
}

impl StateSpec {
    /// Resolves the spec to a state; raw amplitudes are rescaled only if `normalize`.
    pub fn resolve(&self, normalize: bool) -> Result<PureState> {
        match self {
            StateSpec::Named(n) => Ok(n.state()),
            StateSpec::Amplitudes(a) => PureState::from_amplitudes(*a, normalize),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(id) = s.strip_prefix("named:") {
            return id.parse().map(StateSpec::Named);
        }
        let reals = parse_reals(s)?;
        if reals.len() != 8 {
            return Err(Error::Parse {
                token: s.to_string(),
                reason: format!("expected 8 comma-separated reals, got {}", reals.len()),
            });
        }
        Ok(StateSpec::Amplitudes(std::array::from_fn(|i| {
            C64::new(reals[2 * i], reals[2 * i + 1])
        })))
    }
}
