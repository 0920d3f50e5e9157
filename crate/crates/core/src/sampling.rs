//! Sampling (time-smearing) functions g(t, τ).
//!
//! Every built-in window is unit-normalized with τ as its scale parameter:
//!
//! | kind       | g(t)                                      | support        |
//! |------------|-------------------------------------------|----------------|
//! | Gaussian   | e^{-t²/τ²} / (√π τ)                        | ℝ              |
//! | Lorentzian | τ / (π (t² + τ²))                          | ℝ              |
//! | Bump       | e^{-1/(1-u²)} / (Z s τ),  u = t/(sτ), s = 2 | (-sτ, sτ)      |
//!
//! Bump's Z = ∫₋₁¹ e^{-1/(1-u²)} du is computed by quadrature once per process.
//! C values from different families are only comparable under this fixed
//! width convention.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};

/// Support half-width of the bump window in units of τ.
pub const BUMP_SHAPE_FACTOR: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplingKind {
    Gaussian,
    Lorentzian,
    Bump,
    UserDefined,
}

impl fmt::Display for SamplingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SamplingKind::Gaussian => "gaussian",
            SamplingKind::Lorentzian => "lorentzian",
            SamplingKind::Bump => "bump",
            SamplingKind::UserDefined => "user-defined",
        };
        f.write_str(s)
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Profile {
    Gaussian,
    Lorentzian,
    Bump { norm: f64 },
    User { g: RealFn, dg: RealFn, support: (f64, f64) },
}

/// A normalized, non-negative time window with an analytic derivative.
#[derive(Clone)]
pub struct SamplingFunction {
    kind: SamplingKind,
    tau: f64,
    profile: Profile,
}

impl fmt::Debug for SamplingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SamplingFunction").field("kind", &self.kind).field("tau", &self.tau).finish()
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("sampling width tau must be finite and > 0, got {tau}")))
    }
}

fn bump_norm() -> f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| {
        let spec = QuadratureSpec::new(1e-14, 1e-13, 2000).expect("valid spec");
        integrate(bump_shape, -1.0, 1.0, &spec).expect("bump profile is smooth and bounded").value
    })
}

fn bump_shape(u: f64) -> f64 {
    let w = 1.0 - u * u;
    if w > 0.0 {
        (-1.0 / w).exp()
    } else {
        0.0
    }
}

pub fn make_gaussian(tau: f64) -> Result<SamplingFunction> {
    check_tau(tau)?;
    Ok(SamplingFunction { kind: SamplingKind::Gaussian, tau, profile: Profile::Gaussian })
}

pub fn make_lorentzian(tau: f64) -> Result<SamplingFunction> {
    check_tau(tau)?;
    Ok(SamplingFunction { kind: SamplingKind::Lorentzian, tau, profile: Profile::Lorentzian })
}

/// Smooth window vanishing with all derivatives at `±2τ`.
pub fn make_bump(tau: f64) -> Result<SamplingFunction> {
    check_tau(tau)?;
    Ok(SamplingFunction { kind: SamplingKind::Bump, tau, profile: Profile::Bump { norm: bump_norm() } })
}

/// Caller-supplied window. Both `g` and its derivative `dg` must be given;
/// `support` is the open interval on which `g > 0` (bounds may be infinite).
/// Normalization is the caller's responsibility; see [`SamplingFunction::normalization`].
pub fn make_user_defined<G, D>(tau: f64, support: (f64, f64), g: G, dg: D) -> Result<SamplingFunction>
where
    G: Fn(f64) -> f64 + Send + Sync + 'static,
    D: Fn(f64) -> f64 + Send + Sync + 'static,
{
    check_tau(tau)?;
    if support.0.is_nan() || support.1.is_nan() || support.0 >= support.1 {
        return Err(Error::domain("user-defined support must be a non-empty interval"));
    }
    Ok(SamplingFunction {
        kind: SamplingKind::UserDefined,
        tau,
        profile: Profile::User { g: Arc::new(g), dg: Arc::new(dg), support },
    })
}

/// Builds a built-in family by name (`gaussian`, `lorentzian`, `bump`).
pub fn make_by_name(name: &str, tau: f64) -> Result<SamplingFunction> {
    match name.to_ascii_lowercase().as_str() {
        "gaussian" => make_gaussian(tau),
        "lorentzian" => make_lorentzian(tau),
        "bump" => make_bump(tau),
        other => Err(Error::domain(format!("unknown sampling function '{other}'"))),
    }
}

impl SamplingFunction {
    pub fn kind(&self) -> SamplingKind {
        self.kind
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Open interval on which g > 0.
    pub fn support(&self) -> (f64, f64) {
        match &self.profile {
            Profile::Gaussian | Profile::Lorentzian => (f64::NEG_INFINITY, f64::INFINITY),
            Profile::Bump { .. } => {
                let edge = BUMP_SHAPE_FACTOR * self.tau;
                (-edge, edge)
            }
            Profile::User { support, .. } => *support,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let tau = self.tau;
        match &self.profile {
            Profile::Gaussian => (-(t / tau).powi(2)).exp() / (PI.sqrt() * tau),
            Profile::Lorentzian => tau / (PI * (t * t + tau * tau)),
            Profile::Bump { norm } => {
                let width = BUMP_SHAPE_FACTOR * tau;
                bump_shape(t / width) / (norm * width)
            }
            Profile::User { g, .. } => g(t),
        }
    }

    /// ġ = ∂g/∂t.
    pub fn derivative(&self, t: f64) -> f64 {
        match &self.profile {
            Profile::User { dg, .. } => dg(t),
            _ => self.value(t) * self.log_derivative(t),
        }
    }

    /// ġ/g for the built-in families; meaningful only inside the support.
    fn log_derivative(&self, t: f64) -> f64 {
        let tau = self.tau;
        match &self.profile {
            Profile::Gaussian => -2.0 * t / (tau * tau),
            Profile::Lorentzian => -2.0 * t / (t * t + tau * tau),
            Profile::Bump { .. } => {
                let width = BUMP_SHAPE_FACTOR * tau;
                let u = t / width;
                let w = 1.0 - u * u;
                if w > 0.0 {
                    -2.0 * u / (w * w * width)
                } else {
                    0.0
                }
            }
            Profile::User { g, dg, .. } => {
                let gv = g(t);
                if gv > 0.0 {
                    dg(t) / gv
                } else {
                    0.0
                }
            }
        }
    }

    /// ġ²/g, evaluated as g·(ġ/g)² so that it stays finite where g underflows.
    pub fn fisher_density(&self, t: f64) -> f64 {
        match &self.profile {
            Profile::User { g, dg, .. } => {
                let gv = g(t);
                if gv > 0.0 {
                    dg(t).powi(2) / gv
                } else {
                    0.0
                }
            }
            _ => {
                let gv = self.value(t);
                if gv > 0.0 {
                    gv * self.log_derivative(t).powi(2)
                } else {
                    0.0
                }
            }
        }
    }

    /// Integrates `f(t)` over the support in the scaled variable u = t/τ.
    pub(crate) fn integrate_over_support<F>(&self, f: F, spec: &QuadratureSpec) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let (lo, hi) = self.support();
        let tau = self.tau;
        let est = integrate(|u| tau * f(tau * u), lo / tau, hi / tau, spec)?;
        Ok(est.value)
    }

    /// ∫ g dt over the support.
    pub fn normalization(&self) -> Result<f64> {
        self.integrate_over_support(|t| self.value(t), &QuadratureSpec::default())
    }
}

/// |central difference of g at t with step h − ġ(t)|.
pub fn derivative_check(g: &SamplingFunction, t: f64, h: f64) -> f64 {
    let fd = (g.value(t + h) - g.value(t - h)) / (2.0 * h);
    (fd - g.derivative(t)).abs()
}
