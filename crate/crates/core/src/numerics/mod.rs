//! Shared numerical kernel: quadrature, root finding, gamma functions.

mod quadrature;
mod roots;
mod special;

pub use quadrature::{integrate, Estimate, QuadratureSpec};
pub use roots::brent;
pub use special::{ln_gamma, ln_gamma_stirling, regularized_incomplete_gamma, regularized_upper_incomplete_gamma};

/// Five-point central difference of `f` at `x`.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
