//! The region `Rₙ` enclosed by `rₙ(θ) = cosⁿ(π/n)·secⁿ((θ−π)/n)`, `θ ∈ [0, 2π)`.
//!
//! For `n ∈ {3, 4}` this is exactly the set of order-`n` invariants of pure
//! states in any dimension `d ≥ 2`; for `n ≥ 5` that identity is conjectural and
//! everything here is just the region itself.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{arg, normalize_angle};
use crate::states::{PureState, StateTuple};

/// Rounding slack allowed on the `cos² t ∈ [0, 1]` range check.
const COS2_SLACK: f64 = 1e-12;

fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidOrder { n, min: 3 });
    }
    Ok(())
}

/// The region `Rₙ`, `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionSpec {
    n: usize,
}

impl RegionSpec {
    pub fn new(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Self { n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `ωₙ = e^{−2πi/n}`.
    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, -TAU / self.n as f64)
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let n = self.n as f64;
        let theta = normalize_angle(theta);
        ((PI / n).cos() / ((theta - PI) / n).cos()).powi(self.n as i32)
    }

    /// Boundary point from `((ωₙ + 1)/(ωₙ + e^{−2iθ/n}))ⁿ`.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        let w = self.omega();
        let theta = normalize_angle(theta);
        let denom = w + Complex64::from_polar(1.0, -2.0 * theta / self.n as f64);
        ((w + 1.0) / denom).powu(self.n as u32)
    }

    /// `|z| ≤ rₙ(arg z) + tol`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        if z.re == 0.0 && z.im == 0.0 {
            return true;
        }
        z.norm() <= self.radius(arg(z)) + tol
    }

    /// `|z| − rₙ(arg z)`; positive outside the region.
    pub fn excess(&self, z: Complex64) -> f64 {
        z.norm() - self.radius(arg(z))
    }

    pub fn tau(&self) -> f64 {
        let n = self.n as f64;
        (PI / n).cos().powi(self.n as i32) / (PI / (2.0 * (n - 1.0))).cos().powi(self.n as i32 - 1)
    }

    pub fn theta_star(&self) -> f64 {
        let n = self.n as f64;
        (n - 2.0) / (n - 1.0) * FRAC_PI_2
    }
}

pub fn boundary_radius(n: usize, theta: f64) -> Result<f64> {
    Ok(RegionSpec::new(n)?.radius(theta))
}

pub fn region_contains(n: usize, z: Complex64, tol: f64) -> Result<bool> {
    Ok(RegionSpec::new(n)?.contains(z, tol))
}

/// Largest imaginary part over `Rₙ`: `cosⁿ(π/n)·sec^{n−1}(π/(2(n−1)))`.
pub fn tau(n: usize) -> Result<f64> {
    Ok(RegionSpec::new(n)?.tau())
}

/// Angle `((n−2)/(n−1))·(π/2)` at which the imaginary part peaks.
pub fn theta_star(n: usize) -> Result<f64> {
    Ok(RegionSpec::new(n)?.theta_star())
}

/// Qubit tuple `|ψₖ(t)⟩ = sin t|0⟩ + ω̄ₙᵏ cos t|1⟩`, `k = 0..n−1`, whose
/// invariant is `(sin²t + ω̄ₙcos²t)ⁿ`, a point of `∂Rₙ`.
pub fn extremal_tuple(n: usize, t: f64) -> Result<StateTuple<PureState>> {
    check_order(n)?;
    let (s, c) = t.sin_cos();
    let states = (0..n)
        .map(|k| {
            let phase = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
            PureState::normalized(vec![Complex64::new(s, 0.0), phase * c])
        })
        .collect::<Result<Vec<_>>>()?;
    StateTuple::new(states)
}

/// The common neighbouring overlap `sin²t + ω̄ₙcos²t` of [`extremal_tuple`].
pub fn extremal_overlap(n: usize, t: f64) -> Result<Complex64> {
    let w = RegionSpec::new(n)?.omega();
    let (s, c) = t.sin_cos();
    Ok(s * s + w.conj() * (c * c))
}

/// Parameter `t ∈ [0, π/2]` placing `Δₙ(extremal_tuple(n, t))` at angle `θ`:
/// `cos²t = sin(θ/n) / (2 sin(π/n) cos((θ−π)/n))`.
pub fn t_from_theta(n: usize, theta: f64) -> Result<f64> {
    check_order(n)?;
    let nf = n as f64;
    let theta = normalize_angle(theta);
    let value = (theta / nf).sin() / (2.0 * (PI / nf).sin() * ((theta - PI) / nf).cos());
    if !(-COS2_SLACK..=1.0 + COS2_SLACK).contains(&value) {
        return Err(Error::OutOfRange { theta, value });
    }
    Ok(value.clamp(0.0, 1.0).sqrt().acos())
}

/// Positive root `s = 2cos((θ−π)/3)` of `s³ − 3s + 2cos θ = 0`; `s⁻³ = r₃(θ)`.
pub fn cubic_root_n3(theta: f64) -> f64 {
    2.0 * ((normalize_angle(theta) - PI) / 3.0).cos()
}

/// All three real roots `2cos((θ−π)/3 + 2πk/3)`, `k = 0, 1, 2`; index 0 is
/// [`cubic_root_n3`].
pub fn cubic_roots_n3(theta: f64) -> [f64; 3] {
    let base = (normalize_angle(theta) - PI) / 3.0;
    [0.0, 1.0, 2.0].map(|k| 2.0 * (base + k * TAU / 3.0).cos())
}

/// Discriminant `108 sin²θ` of `s³ − 3s + 2cos θ`.
pub fn cubic_discriminant_n3(theta: f64) -> f64 {
    let (p, q) = (-3.0, 2.0 * theta.cos());
    -4.0 * p * p * p - 27.0 * q * q
}

/// Samples `(θ, r)` of a polar curve with strictly increasing `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCurve {
    samples: Vec<(f64, f64)>,
}

impl PolarCurve {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        for (k, &(theta, r)) in samples.iter().enumerate() {
            if !(0.0..TAU).contains(&theta) || !r.is_finite() {
                return Err(Error::InvalidParameter(format!("bad curve sample ({theta}, {r})")));
            }
            if k > 0 && theta <= samples[k - 1].0 {
                return Err(Error::InvalidParameter("curve angles must strictly increase".into()));
            }
        }
        Ok(Self { samples })
    }

    /// `rₙ` on the uniform grid `θₖ = 2πk/grid`.
    pub fn boundary(n: usize, grid: usize) -> Result<Self> {
        let region = RegionSpec::new(n)?;
        if grid == 0 {
            return Err(Error::InvalidParameter("grid must be positive".into()));
        }
        Self::new(uniform_grid(grid).into_iter().map(|t| (t, region.radius(t))).collect())
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|&(t, r)| Complex64::from_polar(r, t)).collect()
    }
}

/// `θₖ = 2πk/grid`, `k = 0..grid`.
pub fn uniform_grid(grid: usize) -> Vec<f64> {
    (0..grid).map(|k| TAU * k as f64 / grid as f64).collect()
}
