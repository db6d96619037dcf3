//! Self-check run: closed forms against numerics over random and named states.

use std::io::Write;

use rand::Rng;
use wernerlike_core::measures::{gwl_concurrence_from, psi6_concurrence};
use wernerlike_core::oracle::random_pure_state;
use wernerlike_core::{
    amplitude_check, discord_analytic, discord_numeric, eof_from_concurrence, gwl, gwl_entropy,
    herm_eigvals, intersection_point, luders_update, p_critical, pure_concurrence, werner,
    wootters_concurrence, DiscordDirection, MeasurementDirection, NamedState, OptimizerConfig,
    Partition, PureState,
};

use crate::format::num;
use crate::CliError;

/// Mixing parameters used with every random state.
pub const P_GRID: [f64; 12] = [
    -0.3, -0.1, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99,
];
/// Random states whose discord is also minimized with B measured.
const SYMMETRY_STATES: usize = 20;
const TABLE_P_I: [f64; 4] = [0.919, 0.888, 0.878, 0.879];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    /// Context of the first case above tolerance.
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, tolerance: f64) -> Self {
        CheckResult {
            name,
            max_error: 0.0,
            tolerance,
            first_failure: None,
        }
    }

    fn record(&mut self, error: f64, context: impl FnOnce() -> String) {
        let error = if error.is_nan() { f64::INFINITY } else { error };
        self.max_error = self.max_error.max(error);
        if error > self.tolerance && self.first_failure.is_none() {
            self.first_failure = Some(context());
        }
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn describe_failure(&self) -> String {
        format!(
            "{} ({})",
            self.name,
            self.first_failure.as_deref().unwrap_or("no failure")
        )
    }
}

fn label(k: usize, p: f64) -> String {
    format!("random state #{k}, p = {p}")
}

fn spectrum_error(psi: &PureState, p: f64) -> Result<(f64, f64), CliError> {
    let rho = gwl(psi, p)?;
    let mut got = herm_eigvals(rho.matrix(), 1e-14)?;
    got.sort_by(f64::total_cmp);
    let q = (1.0 - p) / 4.0;
    let mut want = [(1.0 + 3.0 * p) / 4.0, q, q, q];
    want.sort_by(f64::total_cmp);
    let eig = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    let direct: f64 = got
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    Ok((eig, (gwl_entropy(p)? - direct).abs()))
}

pub fn cmd_verify(n_states: usize, cfg: &OptimizerConfig) -> Result<Vec<CheckResult>, CliError> {
    if n_states == 0 {
        return Err(CliError::Usage("--n-states must be at least 1".into()));
    }
    cfg.validate()?;
    let mut rng = cfg.rng();

    let mut spectrum = CheckResult::new("spectrum", 1e-12);
    let mut entropy = CheckResult::new("total entropy", 1e-12);
    let mut concurrence = CheckResult::new("Wootters vs closed-form concurrence", 1e-10);
    let mut oracle = CheckResult::new("numerical vs closed-form discord", 1e-6);
    let mut symmetry = CheckResult::new("discord A->B vs B->A", 1e-8);
    let mut restriction = CheckResult::new("post-measurement mixing restriction (relative)", 1e-12);
    let mut amplitude = CheckResult::new("oscillation amplitude vs delta/2", 1e-12);

    for k in 0..n_states {
        let psi = random_pure_state(&mut rng);
        let c = pure_concurrence(&psi);
        match amplitude_check(&psi) {
            Ok(a) => amplitude.record((a - c.delta().value() / 2.0).abs(), || label(k, f64::NAN)),
            Err(e) => amplitude.record(f64::INFINITY, || format!("random state #{k}: {e}")),
        }
        for &p in &P_GRID {
            let (eig, s) = spectrum_error(&psi, p)?;
            spectrum.record(eig, || label(k, p));
            entropy.record(s, || label(k, p));

            let rho = gwl(&psi, p)?;
            let w = wootters_concurrence(&rho).value();
            concurrence.record((w - gwl_concurrence_from(c, p).value()).abs(), || {
                label(k, p)
            });

            let ana = discord_analytic(&psi, p)?;
            let num_a = discord_numeric(&rho, DiscordDirection::MeasureA, cfg)?;
            oracle.record((num_a - ana).abs(), || label(k, p));

            let dir = MeasurementDirection::new(
                rng.random_range(0.0..std::f64::consts::FRAC_PI_2),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            for part in [Partition::A, Partition::B] {
                let xs = luders_update(&rho, &dir, part).extracted_mixing_parameters(p);
                let lhs: f64 = xs.iter().flatten().map(|x| x / (1.0 - x)).sum();
                let rhs = 2.0 * p / (1.0 - p);
                restriction.record((lhs - rhs).abs() / rhs.abs().max(1.0), || label(k, p));
            }
        }
        if k < SYMMETRY_STATES {
            let p = rng.random_range(-1.0 / 3.0..1.0);
            let rho = gwl(&psi, p)?;
            let a = discord_numeric(&rho, DiscordDirection::MeasureA, cfg)?;
            let b = discord_numeric(&rho, DiscordDirection::MeasureB, cfg)?;
            symmetry.record((a - b).abs(), || label(k, p));
        }
    }

    let mut bridge = CheckResult::new("Werner bridge", 1e-15);
    let singlet = NamedState::BellPhiMinus.state();
    for p in [-1.0, -0.6, -0.2, 0.0, 0.1, 0.3] {
        let diff = (*gwl(&singlet, -p)?.matrix() - *werner(p)?.matrix()).max_abs();
        bridge.record(diff, || format!("werner p = {p}"));
    }

    let mut endpoints = CheckResult::new("discord endpoints p = 0, 1", 1e-12);
    let mut critical = CheckResult::new("critical points p_c", 1e-14);
    let mut crossing = CheckResult::new("intersection points p_i", 0.002);
    for (s, (pc, pi)) in NamedState::TABLE
        .iter()
        .zip([2.0 / 3.0, 0.5, 0.4, 1.0 / 3.0].into_iter().zip(TABLE_P_I))
    {
        let psi = s.state();
        endpoints.record(discord_analytic(&psi, 0.0)?.abs(), || format!("{s}, p = 0"));
        let pure_eof = eof_from_concurrence(pure_concurrence(&psi));
        endpoints.record((discord_analytic(&psi, 1.0)? - pure_eof).abs(), || {
            format!("{s}, p = 1")
        });
        critical.record((p_critical(&psi) - pc).abs(), || s.id());
        crossing.record((intersection_point(&psi, cfg)? - pi).abs(), || s.id());
    }

    let mut equivalence = CheckResult::new("psi5 vs psi2 discord", 1e-12);
    let (psi2, psi5) = (NamedState::Psi2.state(), NamedState::Psi5.state());
    for k in 0..50 {
        let p = -1.0 / 3.0 + k as f64 * (4.0 / 3.0) / 49.0;
        let d = (discord_analytic(&psi2, p)? - discord_analytic(&psi5, p)?).abs();
        equivalence.record(d, || format!("p = {p}"));
    }

    let mut phase = CheckResult::new("psi6 concurrence vs phase formula", 1e-12);
    let mut mirror = CheckResult::new("psi6 discord under phase reversal", 1e-12);
    for k in 0..32 {
        let phi = k as f64 * std::f64::consts::TAU / 32.0;
        let psi = NamedState::Psi6([phi, 0.0, 0.0, 0.0]).state();
        let want = 2.0 / 9.0 * (10.0 + 6.0 * phi.cos()).sqrt();
        phase.record((pure_concurrence(&psi).value() - want).abs(), || {
            format!("phi = {phi}")
        });
        phase.record(
            (psi6_concurrence([phi, 0.0, 0.0, 0.0]) - want).abs(),
            || format!("phi = {phi}"),
        );
        let reversed = NamedState::Psi6([-phi, 0.0, 0.0, 0.0]).state();
        let d = (discord_analytic(&psi, 0.8)? - discord_analytic(&reversed, 0.8)?).abs();
        mirror.record(d, || format!("phi = {phi}, p = 0.8"));
    }

    Ok(vec![
        spectrum,
        entropy,
        concurrence,
        oracle,
        symmetry,
        restriction,
        amplitude,
        bridge,
        endpoints,
        critical,
        crossing,
        equivalence,
        phase,
        mirror,
    ])
}

pub fn write_summary(out: &mut dyn Write, results: &[CheckResult]) -> Result<(), CliError> {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        write!(
            out,
            "{status}  {:<width$}  max error {:<20} tolerance {}",
            r.name,
            num(r.max_error),
            num(r.tolerance)
        )?;
        match &r.first_failure {
            Some(ctx) => writeln!(out, "  first failure: {ctx}")?,
            None => writeln!(out)?,
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    writeln!(
        out,
        "{} of {} checks passed",
        results.len() - failed,
        results.len()
    )?;
    Ok(())
}
