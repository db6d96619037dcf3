//! Mixing parameter where the entanglement of formation overtakes the discord.

use crate::error::{Error, Result};
use crate::measures::{
    discord_from, eof_from_concurrence, gwl_concurrence_from, p_critical_from, pure_concurrence,
    Concurrence,
};
use crate::states::PureState;

use super::OptimizerConfig;

/// Offset from the critical point at the lower end of the search.
pub const LOWER_OFFSET: f64 = 1e-6;
/// Offset from `p = 1` at the upper end of the search.
pub const UPPER_OFFSET: f64 = 1e-9;
/// Required `|EoF - δ|` at the returned root.
pub const ROOT_TOL: f64 = 1e-10;

const SCAN_POINTS: usize = 2048;

/// `EoF(ρ(ψ, p)) - δ(ψ, p)`
pub fn eof_minus_discord(c: Concurrence, p: f64) -> Result<f64> {
    Ok(eof_from_concurrence(gwl_concurrence_from(c, p)) - discord_from(c, p)?)
}

/// Root of `EoF - δ` in `(p_c, 1)`.
///
/// Both curves approach each other again as `p → 1`, where their difference
/// sinks into round-off, so the root is the first sign change found scanning
/// upward from `p_c`, refined by bisection.
pub fn intersection_point(psi: &PureState, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    let c = pure_concurrence(psi);
    let lo = p_critical_from(c) + LOWER_OFFSET;
    let hi = 1.0 - UPPER_OFFSET;
    let not_found = Error::RootNotFound {
        what: "EoF - discord",
        lo,
        hi,
    };
    if c.value() == 0.0 || lo >= hi {
        return Err(not_found);
    }
    let f = |p: f64| eof_minus_discord(c, p);

    let mut a = lo;
    let mut fa = f(a)?;
    let mut bracket = None;
    for k in 1..=SCAN_POINTS {
        let b = lo + (hi - lo) * k as f64 / SCAN_POINTS as f64;
        let fb = f(b)?;
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.signum() != fb.signum() {
            bracket = Some((a, fa, b));
            break;
        }
        a = b;
        fa = fb;
    }
    let (mut a, mut fa, mut b) = bracket.ok_or(not_found)?;

    while b - a > f64::EPSILON * b {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let root = 0.5 * (a + b);
    let residual = f(root)?.abs();
    if residual >= ROOT_TOL {
        return Err(Error::Inconsistent {
            what: "EoF - discord at the bracketed root",
            discrepancy: residual,
        });
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::p_critical;
    use crate::states::NamedState;

    #[test]
    fn named_states() {
        let cfg = OptimizerConfig::default();
        let expected = [0.919, 0.888, 0.878, 0.879];
        for (s, want) in NamedState::TABLE.iter().zip(expected) {
            let psi = s.state();
            let pi = intersection_point(&psi, &cfg).unwrap();
            assert!((pi - want).abs() <= 0.002, "{s}: {pi}");
            assert!(p_critical(&psi) < pi && pi < 1.0);
            assert!(eof_minus_discord(pure_concurrence(&psi), pi).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn separable_state_has_no_root() {
        let up = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        let err = intersection_point(&up, &OptimizerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::RootNotFound { .. }));
    }

    #[test]
    fn sign_structure() {
        let c = pure_concurrence(&NamedState::Psi2.state());
        assert!(eof_minus_discord(c, 0.6).unwrap() < 0.0);
        assert!(eof_minus_discord(c, 0.95).unwrap() > 0.0);
    }
}
