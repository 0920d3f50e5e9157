//! Energy density of a single excited mode of a massless scalar field in
//! two dimensions.
//!
//! The mode is a right-moving plane wave of frequency ω (wavenumber k = ω)
//! in a periodic box of length L. With the mode function
//! `i e^{i(kx − ωt)} / √(2ωL)` the normal-ordered energy density is
//!
//! ```text
//! ρ(t) = (ω/L) ⟨:Π²:⟩,   Π = (a e^{−iφ} + a† e^{iφ}) / √2,   φ = ωt − kx
//!      = (ω/L) [ ⟨a†a⟩ + Re(⟨a²⟩ e^{−2iφ}) ]
//! ```
//!
//! All other modes stay in their vacuum and contribute nothing after normal
//! ordering. Squeezed states use S(ζ) = exp[(ζ* a² − ζ a†²)/2] with
//! ζ = r e^{iθ}, giving ⟨a†a⟩ = sinh²r and ⟨a²⟩ = −e^{iθ} sinh r cosh r, so
//!
//! ```text
//! ρ(t) = (ω/L) [ sinh²r − sinh r cosh r · cos(2ωt − 2kx − θ) ].
//! ```

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeSpec {
    pub omega: f64,
    pub box_length: f64,
    pub position: f64,
}

impl ModeSpec {
    pub fn new(omega: f64, box_length: f64, position: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!("mode frequency must be finite and > 0, got {omega}")));
        }
        if !(box_length > 0.0 && box_length.is_finite()) {
            return Err(Error::domain(format!("box length must be finite and > 0, got {box_length}")));
        }
        if !position.is_finite() {
            return Err(Error::domain("observation point must be finite"));
        }
        Ok(Self { omega, box_length, position })
    }

    /// The n-th right-moving mode of a periodic box: ω = 2πn/L.
    pub fn periodic(mode_number: u32, box_length: f64, position: f64) -> Result<Self> {
        if mode_number == 0 {
            return Err(Error::domain("mode number must be at least 1"));
        }
        Self::new(TAU * mode_number as f64 / box_length, box_length, position)
    }

    /// Whether ωL/2π is (to rounding) a positive integer.
    pub fn fits_box(&self) -> bool {
        let n = self.omega * self.box_length / TAU;
        n >= 0.5 && (n - n.round()).abs() < 1e-9 * n
    }

    pub fn wavenumber(&self) -> f64 {
        self.omega
    }

    /// ω/L, the energy density carried by one quantum.
    pub fn quantum_density(&self) -> f64 {
        self.omega / self.box_length
    }

    /// Local mode phase φ = ωt − kx.
    pub fn phase(&self, t: f64) -> f64 {
        self.omega * t - self.wavenumber() * self.position
    }

    /// Period of ρ(t), half the field period: π/ω.
    pub fn density_period(&self) -> f64 {
        PI / self.omega
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeState {
    Vacuum,
    Coherent { re: f64, im: f64 },
    SqueezedVacuum { r: f64, theta: f64 },
}

impl ModeState {
    pub fn coherent(alpha: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::domain("coherent amplitude must be finite"));
        }
        Ok(ModeState::Coherent { re: alpha.re, im: alpha.im })
    }

    /// Squeezed vacuum S(r e^{iθ})|0⟩. θ is reduced into [0, 2π).
    pub fn squeezed(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::domain(format!("squeeze magnitude must be finite and >= 0, got {r}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain("squeeze phase must be finite"));
        }
        Ok(ModeState::SqueezedVacuum { r, theta: theta.rem_euclid(TAU) })
    }

    /// ⟨a†a⟩.
    pub fn mean_number(&self) -> f64 {
        match *self {
            ModeState::Vacuum => 0.0,
            ModeState::Coherent { re, im } => re * re + im * im,
            ModeState::SqueezedVacuum { r, .. } => r.sinh().powi(2),
        }
    }

    /// ⟨a²⟩.
    pub fn pair_amplitude(&self) -> Complex64 {
        match *self {
            ModeState::Vacuum => Complex64::new(0.0, 0.0),
            ModeState::Coherent { re, im } => Complex64::new(re, im).powi(2),
            ModeState::SqueezedVacuum { r, theta } => -Complex64::from_polar(r.sinh() * r.cosh(), theta),
        }
    }

    /// True when every observable coincides with the vacuum.
    pub fn is_vacuum_like(&self) -> bool {
        match *self {
            ModeState::Vacuum => true,
            ModeState::Coherent { re, im } => re == 0.0 && im == 0.0,
            ModeState::SqueezedVacuum { r, .. } => r == 0.0,
        }
    }
}

/// ⟨:Π²:⟩ = ⟨a†a⟩ + Re(⟨a²⟩ e^{−2iφ}) at mode phase φ.
///
/// The squeezed branch is written as sinh r · (2 cosh r · sin²(Φ/2) − e^{−r}),
/// Φ = 2φ − θ, which avoids the cancellation in sinh²r − sinh r cosh r cos Φ
/// for large r.
pub fn normal_ordered_quadrature(state: &ModeState, phase: f64) -> f64 {
    match *state {
        ModeState::Vacuum => 0.0,
        ModeState::SqueezedVacuum { r, theta } => {
            let half = phase - 0.5 * theta;
            r.sinh() * (2.0 * r.cosh() * half.sin().powi(2) - (-r).exp())
        }
        ModeState::Coherent { .. } => {
            let rot = Complex64::from_polar(1.0, -2.0 * phase);
            state.mean_number() + (state.pair_amplitude() * rot).re
        }
    }
}

/// Closed-form ⟨:T_tt:⟩ at time `t`.
pub fn energy_density(spec: &ModeSpec, state: &ModeState, t: f64) -> f64 {
    spec.quantum_density() * normal_ordered_quadrature(state, spec.phase(t))
}

/// Average of ρ over one period π/ω: (ω/L)⟨a†a⟩.
pub fn period_average(spec: &ModeSpec, state: &ModeState) -> f64 {
    spec.quantum_density() * state.mean_number()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegativeInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub min_density: f64,
}

impl NegativeInterval {
    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }

    /// Time at which ρ is most negative.
    pub fn center(&self) -> f64 {
        0.5 * (self.t_start + self.t_end)
    }
}

/// The window of one period in which ρ < 0, centred on its minimum, with the
/// centre reduced into [0, π/ω). `None` for states with ρ ≥ 0 throughout.
///
/// For squeezed vacuum ρ < 0 exactly when cos(2ωt − 2kx − θ) > tanh r, and
/// the minimum is −(ω/L) sinh r e^{−r}.
pub fn negative_interval(spec: &ModeSpec, state: &ModeState) -> Option<NegativeInterval> {
    match *state {
        ModeState::SqueezedVacuum { r, theta } if r > 0.0 => {
            let w = spec.omega;
            let center =
                ((theta + 2.0 * spec.wavenumber() * spec.position) / (2.0 * w)).rem_euclid(spec.density_period());
            let half = r.tanh().acos() / (2.0 * w);
            Some(NegativeInterval {
                t_start: center - half,
                t_end: center + half,
                min_density: -spec.quantum_density() * r.sinh() * (-r).exp(),
            })
        }
        // coherent states give ρ = 2(ω/L) Re(α e^{−iφ})² ≥ 0
        _ => None,
    }
}
