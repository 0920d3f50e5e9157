//! Truncated Fock-space oracle for single-mode expectation values.
//!
//! Operators are dense N×N complex matrices on the number states
//! |0⟩ … |N−1⟩. States are produced by exponentiating the squeeze or
//! displacement generator numerically, never from the closed-form Fock
//! coefficients, so agreement with [`crate::mode`] is a genuine cross-check.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mode::{ModeSpec, ModeState};

/// Largest truncation tried by the doubling retry.
pub const MAX_TRUNCATION: usize = 4096;
/// Probability mass allowed beyond the truncation.
pub const TAIL_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_TRUNCATION: usize = 60;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OperatorRole {
    Annihilation,
    Creation,
    Squeeze { r: f64, theta: f64 },
    Displacement { alpha: Complex64 },
    NumberOp,
    QuadratureCos,
    QuadratureSin,
    Composite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    role: OperatorRole,
    matrix: DMatrix<Complex64>,
}

fn annihilation_matrix(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { Complex64::new((j as f64).sqrt(), 0.0) } else { ZERO })
}

impl TruncatedOperator {
    pub fn annihilation(dim: usize) -> Self {
        Self { role: OperatorRole::Annihilation, matrix: annihilation_matrix(dim) }
    }

    pub fn creation(dim: usize) -> Self {
        Self { role: OperatorRole::Creation, matrix: annihilation_matrix(dim).adjoint() }
    }

    pub fn number(dim: usize) -> Self {
        let diag = DVector::from_fn(dim, |i, _| Complex64::new(i as f64, 0.0));
        Self { role: OperatorRole::NumberOp, matrix: DMatrix::from_diagonal(&diag) }
    }

    /// (a + a†)/√2
    pub fn quadrature_cos(dim: usize) -> Self {
        let a = annihilation_matrix(dim);
        let m = (&a + a.adjoint()) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { role: OperatorRole::QuadratureCos, matrix: m }
    }

    /// −i(a − a†)/√2
    pub fn quadrature_sin(dim: usize) -> Self {
        let a = annihilation_matrix(dim);
        let m = (&a - a.adjoint()) * Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
        Self { role: OperatorRole::QuadratureSin, matrix: m }
    }

    /// exp[(ζ* a² − ζ a†²)/2] with ζ = r e^{iθ}, by dense scaling and squaring.
    pub fn squeeze(dim: usize, r: f64, theta: f64) -> Self {
        let a = annihilation_matrix(dim);
        let a2 = &a * &a;
        let zeta = Complex64::from_polar(r, theta);
        let gen = (&a2 * zeta.conj() - a2.adjoint() * zeta) * Complex64::new(0.5, 0.0);
        Self { role: OperatorRole::Squeeze { r, theta }, matrix: expm(&gen) }
    }

    /// exp(α a† − α* a).
    pub fn displacement(dim: usize, alpha: Complex64) -> Self {
        let a = annihilation_matrix(dim);
        let gen = a.adjoint() * alpha - &a * alpha.conj();
        Self { role: OperatorRole::Displacement { alpha }, matrix: expm(&gen) }
    }

    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch { operator: matrix.nrows(), state: matrix.ncols() });
        }
        Ok(Self { role: OperatorRole::Composite, matrix })
    }

    pub fn role(&self) -> OperatorRole {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        let role = match self.role {
            OperatorRole::Annihilation => OperatorRole::Creation,
            OperatorRole::Creation => OperatorRole::Annihilation,
            OperatorRole::NumberOp | OperatorRole::QuadratureCos | OperatorRole::QuadratureSin => self.role,
            _ => OperatorRole::Composite,
        };
        Self { role, matrix: self.matrix.adjoint() }
    }

    /// Operator product `self · rhs`.
    pub fn then(&self, rhs: &TruncatedOperator) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { operator: self.dim(), state: rhs.dim() });
        }
        Ok(Self { role: OperatorRole::Composite, matrix: &self.matrix * &rhs.matrix })
    }

    pub fn apply(&self, psi: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if self.dim() != psi.len() {
            return Err(Error::DimensionMismatch { operator: self.dim(), state: psi.len() });
        }
        Ok(&self.matrix * psi)
    }
}

/// ⟨ψ|O|ψ⟩.
pub fn expectation(op: &TruncatedOperator, psi: &DVector<Complex64>) -> Result<Complex64> {
    let o_psi = op.apply(psi)?;
    Ok(psi.dotc(&o_psi))
}

/// ⟨ψ|O₁O₂…Oₖ|ψ⟩ evaluated by successive matrix–vector products.
pub fn expectation_chain(ops: &[&TruncatedOperator], psi: &DVector<Complex64>) -> Result<Complex64> {
    let mut v = psi.clone();
    for op in ops.iter().rev() {
        v = op.apply(&v)?;
    }
    Ok(psi.dotc(&v))
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The matrix is scaled by 2^-s so that its 1-norm is at most 1/2; the series
/// is cut once the remainder bound ‖A‖^{k+1}/(k+1)! · 2 drops below 1e-18.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a * Complex64::new(0.5f64.powi(s), 0.0);
    let scaled_norm = norm * 0.5f64.powi(s);

    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut bound = 1.0;
    for k in 1..64 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        result += &term;
        bound *= scaled_norm / (k + 1) as f64;
        if 2.0 * bound < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Sparse generator of a Gaussian unitary: `G = c₂ a² + c₂' a†² + c₁ a + c₁' a†`.
#[derive(Clone, Copy, Debug)]
struct Generator {
    a2: Complex64,
    adag2: Complex64,
    a1: Complex64,
    adag1: Complex64,
}

impl Generator {
    fn squeeze(r: f64, theta: f64) -> Self {
        let zeta = Complex64::from_polar(r, theta);
        Self { a2: 0.5 * zeta.conj(), adag2: -0.5 * zeta, a1: ZERO, adag1: ZERO }
    }

    fn displacement(alpha: Complex64) -> Self {
        Self { a2: ZERO, adag2: ZERO, a1: -alpha.conj(), adag1: alpha }
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let m = v.len();
        for n in 0..m {
            let mut acc = ZERO;
            if n + 2 < m {
                acc += self.a2 * ((((n + 1) * (n + 2)) as f64).sqrt()) * v[n + 2];
            }
            if n >= 2 {
                acc += self.adag2 * (((n * (n - 1)) as f64).sqrt()) * v[n - 2];
            }
            if n + 1 < m {
                acc += self.a1 * (((n + 1) as f64).sqrt()) * v[n + 1];
            }
            if n >= 1 {
                acc += self.adag1 * ((n as f64).sqrt()) * v[n - 1];
            }
            out[n] = acc;
        }
    }

    /// Upper bound on the 1-norm of G restricted to `m` levels.
    fn norm_bound(&self, m: usize) -> f64 {
        let m = m as f64;
        (self.a2.norm() + self.adag2.norm()) * (m + 1.0) + (self.a1.norm() + self.adag1.norm()) * (m + 1.0).sqrt()
    }
}

/// exp(G)|0⟩ in `m` levels: `steps` Taylor-propagated slices of exp(G/steps).
fn exp_action_on_vacuum(g: &Generator, m: usize) -> Vec<Complex64> {
    let steps = g.norm_bound(m).ceil().max(1.0) as usize;
    let inv = 1.0 / steps as f64;
    let mut v = vec![ZERO; m];
    v[0] = ONE;
    let mut term = vec![ZERO; m];
    let mut next = vec![ZERO; m];
    for _ in 0..steps {
        term.copy_from_slice(&v);
        let mut acc = v.clone();
        for k in 1..60 {
            g.apply(&term, &mut next);
            let f = inv / k as f64;
            let mut size = 0.0;
            for (t, nx) in term.iter_mut().zip(&next) {
                *t = nx * f;
                size += t.norm_sqr();
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
            // ‖G/steps‖ ≤ 1: the remaining terms are bounded by the current one
            if size.sqrt() < 1e-17 {
                break;
            }
        }
        v = acc;
    }
    v
}

/// Fock coefficients of `state` in `dim` levels.
///
/// The state is propagated in `dim + max(16, dim/2)` levels and the
/// probability beyond `dim` must stay below [`TAIL_TOLERANCE`].
pub fn build_state_vector(state: &ModeState, dim: usize) -> Result<DVector<Complex64>> {
    if dim < 2 {
        return Err(Error::TruncationTooSmall { dim, tail: 1.0 });
    }
    let generator = match *state {
        _ if state.is_vacuum_like() => None,
        ModeState::Vacuum => None,
        ModeState::SqueezedVacuum { r, theta } => Some(Generator::squeeze(r, theta)),
        ModeState::Coherent { re, im } => Some(Generator::displacement(Complex64::new(re, im))),
    };
    let Some(generator) = generator else {
        let mut v = DVector::from_element(dim, ZERO);
        v[0] = ONE;
        return Ok(v);
    };
    let work = dim + (dim / 2).max(16);
    let full = exp_action_on_vacuum(&generator, work);
    let tail: f64 = full[dim..].iter().map(|z| z.norm_sqr()).sum();
    let kept = DVector::from_column_slice(&full[..dim]);
    let norm_defect = (kept.norm_squared() - 1.0).abs();
    if tail > TAIL_TOLERANCE || norm_defect > TAIL_TOLERANCE {
        return Err(Error::TruncationTooSmall { dim, tail: tail.max(norm_defect) });
    }
    Ok(kept)
}

/// [`build_state_vector`] with the truncation doubled on each
/// `TruncationTooSmall`, up to [`MAX_TRUNCATION`]. Returns the vector and the
/// truncation that succeeded.
pub fn build_state_vector_adaptive(state: &ModeState, start: usize) -> Result<(DVector<Complex64>, usize)> {
    let mut dim = start.max(2);
    loop {
        match build_state_vector(state, dim) {
            Ok(v) => return Ok((v, dim)),
            Err(Error::TruncationTooSmall { .. }) if dim * 2 <= MAX_TRUNCATION => dim *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Moments of a prepared state, measured with truncated matrices.
#[derive(Clone, Debug)]
pub struct FockOracle {
    dim: usize,
    number: f64,
    pair: Complex64,
    displacement: Complex64,
}

impl FockOracle {
    /// Builds the state starting from truncation `dim` (doubling as needed)
    /// and measures ⟨a†a⟩, ⟨a²⟩ and ⟨a⟩.
    pub fn prepare(state: &ModeState, dim: usize) -> Result<Self> {
        let (psi, dim) = build_state_vector_adaptive(state, dim)?;
        let a = TruncatedOperator::annihilation(dim);
        let adag = a.adjoint();
        let number = expectation_chain(&[&adag, &a], &psi)?.re;
        let pair = expectation_chain(&[&a, &a], &psi)?;
        let displacement = expectation(&a, &psi)?;
        Ok(Self { dim, number, pair, displacement })
    }

    pub fn truncation(&self) -> usize {
        self.dim
    }

    pub fn mean_number(&self) -> f64 {
        self.number
    }

    pub fn pair_amplitude(&self) -> Complex64 {
        self.pair
    }

    pub fn mean_amplitude(&self) -> Complex64 {
        self.displacement
    }

    /// ⟨:Π²:⟩ at mode phase φ, Π = (a e^{−iφ} + a† e^{iφ})/√2.
    pub fn normal_ordered_quadrature(&self, phase: f64) -> f64 {
        self.number + (self.pair * Complex64::from_polar(1.0, -2.0 * phase)).re
    }

    /// (ω/L)⟨:Π²:⟩ at time `t`.
    pub fn energy_density(&self, spec: &ModeSpec, t: f64) -> f64 {
        spec.quantum_density() * self.normal_ordered_quadrature(spec.phase(t))
    }
}

/// One-shot oracle evaluation of ⟨:T_tt:⟩; see [`FockOracle`] for repeated use.
pub fn oracle_energy_density(spec: &ModeSpec, state: &ModeState, t: f64, dim: usize) -> Result<f64> {
    Ok(FockOracle::prepare(state, dim)?.energy_density(spec, t))
}
