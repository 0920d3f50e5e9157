//! Vacuum stress tensor between two perfectly reflecting parallel plates.
//!
//! In units ħ = c = 1, with the plates normal to z and separated by `a`,
//!
//! ```text
//! T_μν = π²/(720 a⁴) · diag(−1, 1, 1, −3)
//! ```
//!
//! The energy density between the plates is constant and negative. The tensor
//! is constant in the gap, so conservation holds trivially.
//!
//! Plates with finite reflectivity are not modelled. For a plasma-model
//! dielectric the energy density at the centre of the gap only turns negative
//! once ω_p a > 100.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::central_derivative;

/// diag(−1, 1, 1, −3) in the order (t, x, y, z).
pub const PATTERN: [i32; 4] = [-1, 1, 1, -3];
/// Minkowski signature (−, +, +, +) used to raise one index for the trace.
pub const SIGNATURE: [i32; 4] = [-1, 1, 1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StressTensor4 {
    separation: f64,
    scale: f64,
}

pub fn casimir_tensor(a: f64) -> Result<StressTensor4> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("plate separation must be finite and > 0, got {a}")));
    }
    Ok(StressTensor4 { separation: a, scale: PI * PI / (720.0 * a.powi(4)) })
}

impl StressTensor4 {
    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// π²/(720 a⁴)
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn component(&self, mu: usize, nu: usize) -> f64 {
        if mu == nu && mu < 4 {
            PATTERN[mu] as f64 * self.scale
        } else {
            0.0
        }
    }

    pub fn components(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.component(i, i);
        }
        m
    }

    pub fn energy_density(&self) -> f64 {
        self.component(0, 0)
    }

    pub fn t_xx(&self) -> f64 {
        self.component(1, 1)
    }

    pub fn t_yy(&self) -> f64 {
        self.component(2, 2)
    }

    pub fn t_zz(&self) -> f64 {
        self.component(3, 3)
    }

    /// η^μν T_μν, formed on the integer pattern before scaling so it is exactly 0.
    pub fn trace(&self) -> f64 {
        let pattern: i32 = PATTERN.iter().zip(SIGNATURE).map(|(p, s)| p * s).sum();
        pattern as f64 * self.scale
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PressureConsistency {
    pub separation: f64,
    /// E/A = T_00 · a = −π²/(720 a³)
    pub energy_per_area: f64,
    /// −d(E/A)/da evaluated analytically
    pub force_per_area: f64,
    /// −d(E/A)/da by a five-point central difference
    pub force_per_area_numeric: f64,
    pub t_zz: f64,
    /// force_per_area − t_zz
    pub difference: f64,
}

/// Checks that the normal stress equals the force per unit area obtained
/// from the energy per unit plate area.
pub fn pressure_consistency(a: f64) -> Result<PressureConsistency> {
    let t = casimir_tensor(a)?;
    let energy = |sep: f64| -PI * PI / (720.0 * sep.powi(3));
    let force = -PI * PI / (240.0 * a.powi(4));
    let numeric = -central_derivative(energy, a, 1e-3 * a);
    Ok(PressureConsistency {
        separation: a,
        energy_per_area: t.energy_density() * a,
        force_per_area: force,
        force_per_area_numeric: numeric,
        t_zz: t.t_zz(),
        difference: force - t.t_zz(),
    })
}

/// ħc in J·m (CODATA 2018, exact SI ħ and c).
pub const HBAR_C_JOULE_METRE: f64 = 1.054_571_817e-34 * 299_792_458.0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_separation_values() {
        let t = casimir_tensor(1.0).unwrap();
        assert!((t.energy_density() + PI * PI / 720.0).abs() < 1e-15);
        assert!((t.energy_density() + 0.013_707_783_890_401_887).abs() < 1e-15);
        assert_eq!(t.t_xx(), -t.energy_density());
        assert_eq!(t.t_yy(), t.t_xx());
        assert_eq!(t.t_zz(), 3.0 * t.energy_density());
    }

    #[test]
    fn trace_and_off_diagonals_vanish() {
        for a in [1e-3, 0.5, 1.0, 7.0, 1e4] {
            let t = casimir_tensor(a).unwrap();
            assert_eq!(t.trace(), 0.0);
            for (i, row) in t.components().iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i != j {
                        assert_eq!(*v, 0.0);
                    }
                }
            }
            assert!(t.energy_density() < 0.0);
        }
    }

    #[test]
    fn inverse_quartic_scaling() {
        let t1 = casimir_tensor(0.8).unwrap().components();
        let t2 = casimir_tensor(1.6).unwrap().components();
        for i in 0..4 {
            assert!((t2[i][i] * 16.0 - t1[i][i]).abs() < 1e-15 * t1[i][i].abs());
        }
    }

    #[test]
    fn pressure_from_energy() {
        let p = pressure_consistency(1.0).unwrap();
        assert!((p.force_per_area + PI * PI / 240.0).abs() < 1e-15);
        assert!(p.difference.abs() < 1e-15);
        let p = pressure_consistency(0.5).unwrap();
        assert!((p.t_zz + 16.0 * PI * PI / 240.0).abs() < 1e-13);
        for a in [0.5, 1.0, 2.0] {
            let p = pressure_consistency(a).unwrap();
            assert!((p.force_per_area_numeric - p.t_zz).abs() <= 1e-8 * p.t_zz.abs());
        }
    }

    #[test]
    fn invalid_separation() {
        assert!(casimir_tensor(0.0).is_err());
        assert!(casimir_tensor(-1.0).is_err());
        assert!(pressure_consistency(f64::NAN).is_err());
    }
}
