//! Decay probability of an atom crossing a cavity whose mode is in a
//! non-classical state.
//!
//! When the cavity frequency is near the transition frequency, the transit
//! time is short compared with the mode period and the mode function is
//! roughly constant along the path, the decay probability relative to the
//! cavity vacuum is
//!
//! ```text
//! P/P(0) = 1 + ⟨E²(x₀,t)⟩ / f²(x₀)
//! ```
//!
//! where ⟨E²⟩ is the normal-ordered shift produced by the state. The
//! single-mode inequality ⟨E²(x₀,t)⟩ ≥ −f²(x₀) keeps P ≥ 0 and is enforced
//! here as an input contract. No error term for the three approximations is
//! modelled, and neither is the absolute transit probability (which needs
//! atomic matrix elements); only the ratio is computed.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mode::{normal_ordered_quadrature, ModeSpec, ModeState};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CavityModeProfile {
    /// f²(x₀), squared mode function on the atom's path.
    pub f_squared: f64,
    /// Mode phase ωt − kx when the atom is in the cavity.
    pub transit_phase: f64,
}

impl CavityModeProfile {
    pub fn new(f_squared: f64, transit_phase: f64) -> Result<Self> {
        if !(f_squared > 0.0 && f_squared.is_finite()) {
            return Err(Error::domain(format!("f^2 must be finite and > 0, got {f_squared}")));
        }
        if !transit_phase.is_finite() {
            return Err(Error::domain("transit phase must be finite"));
        }
        Ok(Self { f_squared, transit_phase })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    /// P/P(0)
    pub ratio: f64,
    pub e2: f64,
    pub suppressed: bool,
}

/// P/P(0) for a given ⟨E²⟩ shift. Fails with `QiViolation` when e2 < −f².
pub fn decay_ratio(profile: &CavityModeProfile, e2: f64) -> Result<DecayReport> {
    if !e2.is_finite() {
        return Err(Error::domain("<E^2> shift must be finite"));
    }
    if e2 < -profile.f_squared {
        return Err(Error::QiViolation { e2, bound: -profile.f_squared });
    }
    Ok(DecayReport { ratio: 1.0 + e2 / profile.f_squared, e2, suppressed: e2 < 0.0 })
}

/// ⟨:E²:⟩ = f² ⟨:X²:⟩ at time `t`, X = a e^{−iφ} + a† e^{iφ}, φ = ωt − kx.
///
/// With this field normalization ⟨:X²:⟩ = ⟨X²⟩ − 1 ≥ −1 for every state, so
/// e2 ≥ −f², approached by strongly squeezed vacua. It is 2L/ω times the
/// energy density of [`crate::mode::energy_density`].
pub fn e2_from_mode(spec: &ModeSpec, state: &ModeState, profile: &CavityModeProfile, t: f64) -> f64 {
    e2_at_phase(state, profile, spec.phase(t))
}

fn e2_at_phase(state: &ModeState, profile: &CavityModeProfile, phase: f64) -> f64 {
    profile.f_squared * 2.0 * normal_ordered_quadrature(state, phase)
}

/// One report per mode phase φ = ωt − kx at which an atom crosses.
pub fn transit_scan(
    spec: &ModeSpec,
    state: &ModeState,
    profile: &CavityModeProfile,
    phases: &[f64],
) -> Result<Vec<DecayReport>> {
    if phases.is_empty() {
        return Err(Error::domain("transit scan needs at least one phase"));
    }
    phases
        .iter()
        .map(|&phase| {
            let t = (phase + spec.wavenumber() * spec.position) / spec.omega;
            decay_ratio(profile, e2_from_mode(spec, state, profile, t))
        })
        .collect()
}

/// `count` equally spaced phases covering one field cycle [0, 2π).
pub fn uniform_phases(count: usize) -> Vec<f64> {
    (0..count).map(|k| TAU * k as f64 / count as f64).collect()
}
