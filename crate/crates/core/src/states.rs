//! Pure states, density matrices and random sampling over `Cᵈ`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::seed::{rng_from_seed, Rng};

/// Tolerance on the norm / trace of constructed states.
pub const STATE_TOL: f64 = 1e-12;
/// Tolerance on the smallest eigenvalue of a density matrix.
pub const PSD_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;

/// A unit vector in `Cᵈ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: DVector<Complex64>,
}

impl PureState {
    /// Wraps `amps`, which must already have unit norm.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let amps = DVector::from_vec(amps);
        let norm = amps.norm();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("norm {norm} differs from 1")));
        }
        Ok(Self { amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let mut amps = DVector::from_vec(amps);
        let norm = amps.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        amps.unscale_mut(norm);
        Ok(Self { amps })
    }

    /// Computational basis vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if k >= dim {
            return Err(Error::InvalidParameter(format!("basis index {k} >= dimension {dim}")));
        }
        let mut amps = DVector::zeros(dim);
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `U|ψ⟩`. Panics if `u` is not `dim × dim`.
    pub fn transformed(&self, u: &DMatrix<Complex64>) -> PureState {
        PureState { amps: u * &self.amps }
    }
}

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if entries.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: entries.ncols() });
        }
        for i in 0..dim {
            for j in i..dim {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > HERMITIAN_TOL {
                    return Err(Error::InvalidState(format!("not Hermitian at ({i}, {j})")));
                }
            }
        }
        let tr = entries.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let rho = Self { entries };
        let min = rho.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// `UρU†`.
    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> DensityMatrix {
        DensityMatrix { entries: u * &self.entries * u.adjoint() }
    }
}

/// Anything carrying a Hilbert-space dimension.
pub trait Dimensioned {
    fn dimension(&self) -> usize;
}

impl Dimensioned for PureState {
    fn dimension(&self) -> usize {
        self.dim()
    }
}

impl Dimensioned for DensityMatrix {
    fn dimension(&self) -> usize {
        self.dim()
    }
}

/// An ordered tuple of `n ≥ 2` states of one kind sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTuple<S> {
    states: Vec<S>,
}

impl<S: Dimensioned> StateTuple<S> {
    pub fn new(states: Vec<S>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::InvalidOrder { n: states.len(), min: 2 });
        }
        let dim = states[0].dimension();
        if let Some(bad) = states.iter().find(|s| s.dimension() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dimension() });
        }
        Ok(Self { states })
    }

    pub fn order(&self) -> usize {
        self.states.len()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dimension()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn into_states(self) -> Vec<S> {
        self.states
    }

    /// The tuple in reverse order.
    pub fn reversed(&self) -> Self
    where
        S: Clone,
    {
        Self { states: self.states.iter().rev().cloned().collect() }
    }

    /// The tuple rotated left by `k` positions.
    pub fn rotated(&self, k: usize) -> Self
    where
        S: Clone,
    {
        let mut states = self.states.clone();
        let k = k % states.len();
        states.rotate_left(k);
        Self { states }
    }
}

impl StateTuple<PureState> {
    pub fn projectors(&self) -> StateTuple<DensityMatrix> {
        StateTuple { states: self.states.iter().map(projector).collect() }
    }
}

fn standard_complex_normal(rng: &mut Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state drawn from an existing generator.
pub fn haar_random_pure_with(rng: &mut Rng, d: usize) -> Result<PureState> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    loop {
        let amps: Vec<Complex64> = (0..d).map(|_| standard_complex_normal(rng)).collect();
        // a zero vector has probability zero but would poison the normalization
        if amps.iter().any(|a| a.norm_sqr() > 0.0) {
            return PureState::normalized(amps);
        }
    }
}

/// Haar-random pure state in `Cᵈ`, deterministic in `seed`.
pub fn haar_random_pure(d: usize, seed: u64) -> Result<PureState> {
    haar_random_pure_with(&mut rng_from_seed(seed), d)
}

/// Hilbert–Schmidt random density matrix `GG†/Tr(GG†)` from an existing generator.
pub fn ginibre_density_with(rng: &mut Rng, d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let g = DMatrix::from_fn(d, d, |_, _| standard_complex_normal(rng));
    let mut m = &g * g.adjoint();
    m = (&m + m.adjoint()).scale(0.5);
    let tr = m.trace().re;
    m.unscale_mut(tr);
    DensityMatrix::new(m)
}

/// Hilbert–Schmidt random density matrix, deterministic in `seed`.
pub fn ginibre_density(d: usize, seed: u64) -> Result<DensityMatrix> {
    ginibre_density_with(&mut rng_from_seed(seed), d)
}

/// Haar-random unitary via QR of a Ginibre matrix with the phases of `R`'s diagonal removed.
pub fn haar_unitary_with(rng: &mut Rng, d: usize) -> Result<DMatrix<Complex64>> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let g = DMatrix::from_fn(d, d, |_, _| standard_complex_normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

pub fn haar_unitary(d: usize, seed: u64) -> Result<DMatrix<Complex64>> {
    haar_unitary_with(&mut rng_from_seed(seed), d)
}

/// `⟨a|b⟩ = Σ conj(aᵢ)·bᵢ`.
pub fn overlap(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(inner(a.amplitudes(), b.amplitudes()))
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

/// `|a⟩⟨a|`.
pub fn projector(a: &PureState) -> DensityMatrix {
    let v = a.as_vector();
    DensityMatrix { entries: v * v.adjoint() }
}
