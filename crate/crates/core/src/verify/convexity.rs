use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng as _;

use crate::boundary::RegionSpec;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

const FD_STEP: f64 = 1e-4;

/// `d²y/dx²` of the upper boundary from the closed-form expression
/// `−((n−1)/n)·secⁿ(π/n)·cos^{n+1}((θ−π)/n)·csc³((π+(n−1)θ)/n)`.
pub fn analytic_second_derivative(n: usize, theta: f64) -> f64 {
    let nf = n as f64;
    let sec_n = (PI / nf).cos().powi(-(n as i32));
    let c = ((theta - PI) / nf).cos().powi(n as i32 + 1);
    let csc3 = ((PI + (nf - 1.0) * theta) / nf).sin().powi(-3);
    -((nf - 1.0) / nf) * sec_n * c * csc3
}

fn numeric_second_derivative(region: &RegionSpec, theta: f64) -> f64 {
    let xy = |t: f64| {
        let r = region.radius(t);
        (r * t.cos(), r * t.sin())
    };
    let h = FD_STEP;
    let (xm, ym) = xy(theta - h);
    let (x0, y0) = xy(theta);
    let (xp, yp) = xy(theta + h);
    let dx = (xp - xm) / (2.0 * h);
    let dy = (yp - ym) / (2.0 * h);
    let ddx = (xp - 2.0 * x0 + xm) / (h * h);
    let ddy = (yp - 2.0 * y0 + ym) / (h * h);
    (dx * ddy - dy * ddx) / dx.powi(3)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityReport {
    pub n: usize,
    pub points: usize,
    /// Every finite-difference `d²y/dx²` on `(0, π)` is negative.
    pub all_negative: bool,
    /// Largest (least negative) finite-difference value.
    pub worst: f64,
    /// `Some` for `n ≥ 4`, where the closed form is checked too.
    pub sign_agreement: Option<bool>,
    /// Largest relative gap between the two when the closed form is checked.
    pub max_relative_gap: Option<f64>,
}

impl ConcavityReport {
    pub fn passed(&self) -> bool {
        self.all_negative && self.sign_agreement.unwrap_or(true)
    }
}

/// Concavity of the upper boundary of `Rₙ` on `grid` interior points of `(0, π)`.
pub fn concavity_check(n: usize, grid: usize) -> Result<ConcavityReport> {
    let region = RegionSpec::new(n)?;
    if grid < 8 {
        return Err(Error::InvalidParameter(format!("grid {grid} is below the minimum of 8")));
    }
    let mut worst = f64::NEG_INFINITY;
    let mut all_negative = true;
    let mut agree = true;
    let mut gap: f64 = 0.0;
    for k in 1..=grid {
        let theta = PI * k as f64 / (grid + 1) as f64;
        let numeric = numeric_second_derivative(&region, theta);
        worst = worst.max(numeric);
        all_negative &= numeric < 0.0;
        if n >= 4 {
            let analytic = analytic_second_derivative(n, theta);
            agree &= (analytic < 0.0) == (numeric < 0.0);
            gap = gap.max((analytic - numeric).abs() / analytic.abs());
        }
    }
    Ok(ConcavityReport {
        n,
        points: grid,
        all_negative,
        worst,
        sign_agreement: (n >= 4).then_some(agree),
        max_relative_gap: (n >= 4).then_some(gap),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointReport {
    pub n: usize,
    pub pairs: usize,
    pub failures: usize,
    /// Largest `|m| − rₙ(arg m)` over the midpoints.
    pub worst_excess: f64,
}

/// Midpoints of `pairs` random pairs of boundary points must lie in `Rₙ`.
pub fn midpoint_check(n: usize, pairs: usize, seed: u64, tol: f64) -> Result<MidpointReport> {
    let region = RegionSpec::new(n)?;
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..pairs {
        let a = rng.random::<f64>() * TAU;
        let b = rng.random::<f64>() * TAU;
        let m = (Complex64::from_polar(region.radius(a), a) + Complex64::from_polar(region.radius(b), b)) * 0.5;
        worst = worst.max(region.excess(m));
        if !region.contains(m, tol) {
            failures += 1;
        }
    }
    Ok(MidpointReport { n, pairs, failures, worst_excess: worst })
}

/// Area `½∫rₙ(θ)²dθ` by the periodic trapezoid rule on `points` nodes.
pub fn region_area(n: usize, points: usize) -> Result<f64> {
    let region = RegionSpec::new(n)?;
    if points == 0 {
        return Err(Error::InvalidParameter("need at least one quadrature node".into()));
    }
    let h = TAU / points as f64;
    Ok(0.5 * h * (0..points).map(|k| region.radius(h * k as f64).powi(2)).sum::<f64>())
}

/// `max rₙ(θ) sin θ` over `θ ∈ [0, π]`: grid search, then golden-section refinement.
pub fn tau_numeric(n: usize, grid: usize) -> Result<f64> {
    let region = RegionSpec::new(n)?;
    if grid < 2 {
        return Err(Error::InvalidParameter("grid must have at least 2 points".into()));
    }
    let f = |t: f64| region.radius(t) * t.sin();
    let step = PI / grid as f64;
    let (k_best, f_best) =
        (0..=grid)
            .map(|k| (k, f(step * k as f64)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut lo = step * k_best.saturating_sub(1) as f64;
    let mut hi = (step * (k_best + 1) as f64).min(PI);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if f(a) < f(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    Ok(f(0.5 * (lo + hi)).max(f_best))
}
