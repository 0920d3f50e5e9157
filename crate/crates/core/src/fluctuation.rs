//! Probability law of the Gaussian-smeared vacuum energy density in a 2D
//! conformal field theory.
//!
//! With `u = (√π τ)⁻¹ ∫ T_tt e^{−t²/τ²} dt` and `x = u τ²`,
//!
//! ```text
//! P(x) = π^{c/12} / Γ(c/12) · (x + x₀)^{c/12 − 1} · e^{−π(x + x₀)},   x > −x₀
//! ```
//!
//! and zero below, i.e. a Gamma law of shape c/12 and rate π shifted left
//! by x₀. The cutoff −x₀/τ² is the quantum-inequality bound for the Gaussian
//! window, so x₀ defaults to 1/(12π). How x₀ should scale with c is left
//! to the caller.
//!
//! For c = 1 a few percent of the mass sits so close to −x₀ that `x` itself
//! rounds to −x₀ in double precision. The excess `y = x + x₀ > 0` is therefore
//! the primary coordinate for samples and quantiles; the `*_excess` methods
//! work in it directly.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{brent, ln_gamma, regularized_incomplete_gamma, regularized_upper_incomplete_gamma};

/// Default cutoff 1/(12π): the Gaussian-window bound for c = 1.
pub const DEFAULT_X0: f64 = 1.0 / (12.0 * PI);

/// Draws per independently seeded shard in [`FluctuationDistribution::sample_seeded`].
pub const SHARD_SIZE: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FluctuationDistribution {
    c: f64,
    x0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
}

/// One draw of the smeared energy density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmearedDensitySample {
    excess: f64,
    x0: f64,
}

impl SmearedDensitySample {
    /// Dimensionless x = u τ².
    pub fn x(&self) -> f64 {
        self.excess - self.x0
    }

    /// x + x₀, strictly positive.
    pub fn excess(&self) -> f64 {
        self.excess
    }

    /// u = x / τ².
    pub fn energy_density(&self, tau: f64) -> f64 {
        self.x() / (tau * tau)
    }

    /// x < 0, decided without rounding through x.
    pub fn is_negative(&self) -> bool {
        self.excess < self.x0
    }
}

impl FluctuationDistribution {
    pub fn new(c: f64, x0: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("central charge must be finite and > 0, got {c}")));
        }
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::domain(format!("cutoff x0 must be finite and > 0, got {x0}")));
        }
        Ok(Self { c, x0 })
    }

    /// Central charge `c` with the default cutoff 1/(12π).
    pub fn with_central_charge(c: f64) -> Result<Self> {
        Self::new(c, DEFAULT_X0)
    }

    /// Free massless scalar: c = 1, x₀ = 1/(12π).
    pub fn free_scalar() -> Self {
        Self { c: 1.0, x0: DEFAULT_X0 }
    }

    pub fn central_charge(&self) -> f64 {
        self.c
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn shape(&self) -> f64 {
        self.c / 12.0
    }

    pub fn rate(&self) -> f64 {
        PI
    }

    /// Density in x; zero on (−∞, −x₀]. Diverges integrably at −x₀⁺ for c < 12.
    pub fn pdf(&self, x: f64) -> f64 {
        self.pdf_excess(x + self.x0)
    }

    /// Density as a function of y = x + x₀.
    pub fn pdf_excess(&self, y: f64) -> f64 {
        if y > 0.0 {
            self.ln_pdf_excess(y).exp()
        } else {
            0.0
        }
    }

    fn ln_pdf_excess(&self, y: f64) -> f64 {
        let a = self.shape();
        let lg = ln_gamma(a).expect("shape is positive");
        a * PI.ln() - lg + (a - 1.0) * y.ln() - PI * y
    }

    /// ln P(x) for x > −x₀, −∞ otherwise.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let y = x + self.x0;
        if y > 0.0 {
            self.ln_pdf_excess(y)
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_excess(x + self.x0)
    }

    pub fn cdf_excess(&self, y: f64) -> f64 {
        if y.is_nan() {
            return f64::NAN;
        }
        if y <= 0.0 {
            return 0.0;
        }
        regularized_incomplete_gamma(self.shape(), PI * y).expect("valid incomplete gamma arguments")
    }

    /// 1 − cdf, without cancellation in the positive tail.
    pub fn survival(&self, x: f64) -> f64 {
        let y = x + self.x0;
        if y <= 0.0 {
            return 1.0;
        }
        regularized_upper_incomplete_gamma(self.shape(), PI * y).expect("valid incomplete gamma arguments")
    }

    /// Inverse cdf in x. Loses resolution for p below roughly cdf(−x₀ + ulp(x₀));
    /// use [`Self::quantile_excess`] there.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.quantile_excess(p)? - self.x0)
    }

    /// Inverse cdf in y = x + x₀, solved for ln(πy) with Brent's method.
    pub fn quantile_excess(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("quantile level must lie in (0, 1), got {p}")));
        }
        let a = self.shape();
        let f = |s: f64| regularized_incomplete_gamma(a, s.exp()).expect("valid arguments") - p;

        // small-z asymptote P ≈ z^a / Γ(a+1) seeds the bracket
        let guess = ((p.ln() + ln_gamma(a + 1.0)?) / a).clamp(-700.0, 6.0);
        let mut lo = guess - 1.0;
        let mut hi = guess + 1.0;
        while f(lo) > 0.0 {
            lo -= 2.0 * (hi - lo);
            if lo < -745.0 {
                return Err(Error::RootNotBracketed(format!("quantile {p} below representable range")));
            }
        }
        while f(hi) < 0.0 {
            hi += 2.0 * (hi - lo);
            if hi > 700.0 {
                return Err(Error::RootNotBracketed(format!("quantile {p} above representable range")));
            }
        }
        let s = brent(f, lo, hi, 1e-15, 200)?;
        Ok(s.exp() / PI)
    }

    pub fn moments(&self) -> Moments {
        let a = self.shape();
        Moments { mean: self.c / (12.0 * PI) - self.x0, variance: self.c / (12.0 * PI * PI), skewness: 2.0 / a.sqrt() }
    }

    /// `n` i.i.d. draws using the caller's generator.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<SmearedDensitySample> {
        let gamma = GammaSampler::new(self.shape()).expect("shape is positive");
        (0..n).map(|_| self.sample_from_gamma(gamma.sample_positive(rng))).collect()
    }

    /// `n` draws split into shards of [`SHARD_SIZE`], shard `k` drawn from
    /// ChaCha8 seeded with `seed` on stream `k`. The output depends only on
    /// `(seed, n)`, not on how many threads run the shards.
    pub fn sample_seeded(&self, seed: u64, n: usize) -> Vec<SmearedDensitySample> {
        let gamma = GammaSampler::new(self.shape()).expect("shape is positive");
        let shards = n.div_ceil(SHARD_SIZE);
        (0..shards)
            .into_par_iter()
            .flat_map_iter(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                let count = SHARD_SIZE.min(n - k * SHARD_SIZE);
                (0..count).map(move |_| self.sample_from_gamma(gamma.sample_positive(&mut rng)))
            })
            .collect()
    }

    fn sample_from_gamma(&self, g: f64) -> SmearedDensitySample {
        SmearedDensitySample { excess: g / PI, x0: self.x0 }
    }
}

/// Gamma(shape, 1) sampler that stays valid for very small shapes.
///
/// Marsaglia–Tsang squeeze/rejection for shape ≥ 1. For shape a < 1 the
/// boost G(a) = G(a+1)·U^{1/a} is applied in log space, so U^{1/a} never
/// underflows before the final exponential; a draw that still underflows to
/// zero is redrawn (probability below 1e−26 at a = 1/12).
#[derive(Clone, Copy, Debug)]
pub struct GammaSampler {
    shape: f64,
    d: f64,
    c: f64,
}

impl GammaSampler {
    pub fn new(shape: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::domain(format!("gamma shape must be finite and > 0, got {shape}")));
        }
        let base = if shape < 1.0 { shape + 1.0 } else { shape };
        let d = base - 1.0 / 3.0;
        Ok(Self { shape, d, c: 1.0 / (9.0 * d).sqrt() })
    }

    /// ln of a Gamma(shape, 1) variate.
    pub fn sample_ln<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let base = self.marsaglia_tsang(rng).ln();
        if self.shape < 1.0 {
            // 1 − [0,1) is (0,1]
            let u: f64 = 1.0 - rng.random::<f64>();
            base + u.ln() / self.shape
        } else {
            base
        }
    }

    /// A strictly positive Gamma(shape, 1) variate.
    pub fn sample_positive<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let g = self.sample_ln(rng).exp();
            if g > 0.0 {
                return g;
            }
        }
    }

    fn marsaglia_tsang<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let x: f64 = rng.sample(StandardNormal);
            let t = 1.0 + self.c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u: f64 = 1.0 - rng.random::<f64>();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 {
                return self.d * v;
            }
            if u.ln() < 0.5 * x2 + self.d * (1.0 - v + v.ln()) {
                return self.d * v;
            }
        }
    }
}
