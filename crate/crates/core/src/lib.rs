//! Sub-vacuum effects of free quantum fields.
//!
//! Sampled energy bounds in two dimensions, single-mode states with
//! sub-vacuum windows, a truncated Fock-space cross-check, the probability
//! law of smeared vacuum energy density, the parallel-plate stress tensor and
//! the cavity decay ratio. Units are ħ = c = 1 throughout.

// Coefficient tables carry more digits than f64 holds, and `!(x > 0.0)`
// is the NaN-rejecting guard used for argument checks.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod casimir;
pub mod decay;
pub mod error;
pub mod fluctuation;
pub mod fock;
pub mod mode;
pub mod numerics;
pub mod qi;
pub mod sampling;

pub use casimir::{casimir_tensor, pressure_consistency, PressureConsistency, StressTensor4};
pub use decay::{decay_ratio, e2_from_mode, transit_scan, CavityModeProfile, DecayReport};
pub use error::{Error, Result};
pub use fluctuation::{FluctuationDistribution, Moments, SmearedDensitySample, DEFAULT_X0};
pub use fock::{oracle_energy_density, FockOracle, TruncatedOperator};
pub use mode::{energy_density, negative_interval, ModeSpec, ModeState, NegativeInterval};
pub use qi::{flanagan_coefficient, qi_bound, qi_check, QiBound, QiReport};
pub use sampling::{
    make_bump, make_by_name, make_gaussian, make_lorentzian, make_user_defined, SamplingFunction, SamplingKind,
};

pub use num_complex::Complex64;
