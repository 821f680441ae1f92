//! Elliptical disks with one focus at the origin and Minkowski products of
//! planar point sets.
//!
//! A disk is stored as `(c, s)` and denotes `{z : |z| + |z − c| ≤ s}`; the second
//! focus is `c` and `s` is the length of the major axis. `|c| = s` gives the
//! segment `[0, c]` and `s = 0` gives `{0}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::rng_from_seed;
use crate::states::{inner, PureState};

const FOCUS_TOL: f64 = 1e-12;

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Argument of `z` in `[0, 2π)`, with `arg 0 = 0`.
pub fn arg(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        normalize_angle(z.im.atan2(z.re))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticalDisk {
    focus: Complex64,
    sum: f64,
}

impl EllipticalDisk {
    /// Disk `{z : |z| + |z − focus| ≤ sum}`; requires `|focus| ≤ sum`.
    pub fn new(focus: Complex64, sum: f64) -> Result<Self> {
        if !sum.is_finite() || sum < 0.0 {
            return Err(Error::InvalidParameter(format!("sum bound {sum} must be finite and >= 0")));
        }
        if focus.norm() > sum + FOCUS_TOL {
            return Err(Error::InvalidParameter(format!("focus modulus {} exceeds sum bound {sum}", focus.norm())));
        }
        let focus = if sum == 0.0 { Complex64::new(0.0, 0.0) } else { focus };
        Ok(Self { focus, sum })
    }

    pub fn focus(&self) -> Complex64 {
        self.focus
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn is_point(&self) -> bool {
        self.sum == 0.0
    }

    pub fn is_segment(&self) -> bool {
        self.sum > 0.0 && self.focus.norm() >= self.sum
    }

    /// Minor axis length `√(s² − |c|²)`.
    pub fn minor_axis(&self) -> f64 {
        (self.sum * self.sum - self.focus.norm_sqr()).max(0.0).sqrt()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.norm() + (z - self.focus).norm() <= self.sum + tol
    }

    /// Distance from the origin to the boundary along direction `theta`.
    pub fn polar_radius(&self, theta: f64) -> Result<f64> {
        let c = self.focus.norm();
        if self.sum <= 0.0 || c >= self.sum {
            return Err(Error::DegenerateDisk { focus_modulus: c, sum: self.sum });
        }
        let phase = if c > 0.0 { arg(self.focus) } else { 0.0 };
        Ok((self.sum * self.sum - c * c) / (2.0 * (self.sum - c * (theta - phase).cos())))
    }

    /// `count` boundary points at equally spaced polar angles. Degenerate disks
    /// yield points spread along the segment (or the single point 0).
    pub fn boundary_sample(&self, count: usize) -> PlanarSample {
        let points = (0..count)
            .map(|k| {
                let u = k as f64 / count as f64;
                match self.polar_radius(TAU * u) {
                    Ok(r) => Complex64::from_polar(r, TAU * u),
                    Err(_) => self.focus * u,
                }
            })
            .collect();
        PlanarSample::new(points, "ellipse-boundary")
    }

    /// `count` random points of the disk (radially scaled boundary points).
    pub fn interior_sample(&self, count: usize, seed: u64) -> PlanarSample {
        let mut rng = rng_from_seed(seed);
        let points = (0..count)
            .map(|_| {
                let theta: f64 = rng.random::<f64>() * TAU;
                let u: f64 = rng.random::<f64>().sqrt();
                match self.polar_radius(theta) {
                    Ok(r) => Complex64::from_polar(u * r, theta),
                    Err(_) => self.focus * u,
                }
            })
            .collect();
        PlanarSample::new(points, "ellipse-interior")
    }
}

/// A finite set of points in the complex plane with a note on where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSample {
    pub points: Vec<Complex64>,
    pub provenance: String,
}

impl PlanarSample {
    pub fn new(points: Vec<Complex64>, provenance: impl Into<String>) -> Self {
        Self { points, provenance: provenance.into() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Numerical range of the rank-one matrix `|u⟩⟨v|`: the disk with foci `0` and
/// `⟨v|u⟩` and major axis `‖u‖‖v‖`.
pub fn rank_one_nr_params(u: &[Complex64], v: &[Complex64]) -> Result<EllipticalDisk> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    let nu = inner(u, u).re.sqrt();
    let nv = inner(v, v).re.sqrt();
    let sum = nu * nv;
    let focus = inner(v, u);
    // Cauchy–Schwarz can be violated by rounding
    let focus = if focus.norm() > sum { focus * (sum / focus.norm()) } else { focus };
    EllipticalDisk::new(focus, sum)
}

/// The disk containing every `Tr(ψ₁⋯ψₙ₋₁ψₙ)` as `ψₙ` ranges over pure states:
/// focus `Tr(ψ₁⋯ψₙ₋₁)`, sum bound `|∏ⱼ⟨ψⱼ|ψⱼ₊₁⟩|`.
pub fn disk_from_tuple(states: &[PureState]) -> Result<EllipticalDisk> {
    if states.len() < 2 {
        return Err(Error::TooFewStates { min: 2, found: states.len() });
    }
    let dim = states[0].dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    let chain =
        states.windows(2).fold(Complex64::new(1.0, 0.0), |acc, w| acc * inner(w[0].amplitudes(), w[1].amplitudes()));
    let sum = chain.norm();
    if sum == 0.0 {
        return EllipticalDisk::new(Complex64::new(0.0, 0.0), 0.0);
    }
    let closing = inner(states[states.len() - 1].amplitudes(), states[0].amplitudes());
    let focus = chain * closing;
    let focus = if focus.norm() > sum { focus * (sum / focus.norm()) } else { focus };
    EllipticalDisk::new(focus, sum)
}

/// `count` products `a₁a₂⋯aₖ`, each factor drawn uniformly from its set.
pub fn minkowski_sample(sets: &[PlanarSample], count: usize, seed: u64) -> Result<PlanarSample> {
    if sets.is_empty() || sets.iter().any(PlanarSample::is_empty) {
        return Err(Error::EmptySet);
    }
    let mut rng = rng_from_seed(seed);
    let points = (0..count)
        .map(|_| {
            sets.iter()
                .fold(Complex64::new(1.0, 0.0), |acc, set| acc * set.points[rng.random_range(0..set.points.len())])
        })
        .collect();
    Ok(PlanarSample::new(points, "minkowski-product"))
}

/// Polar radius of `∂(E_t²)` where `E_t = {z : |z| + |z − t| ≤ 1}`.
///
/// With `c = |cos(θ/2)|` the outer product of boundary points is
/// `(1 − t²)² / (4(1 − tc)²)` when `c ≥ t`, from the pair `α = θ/2, θ − α`,
/// and `(1 − t²) / (4 sin²(θ/2))` when `c < t`, where the optimal pair splits
/// asymmetrically. The two agree at `c = t`.
pub fn minkowski_square_boundary(t: f64, theta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in [0, 1)")));
    }
    let (s, c) = (normalize_angle(theta) / 2.0).sin_cos();
    let c = c.abs();
    let q = 1.0 - t * t;
    if c >= t {
        Ok(q * q / (4.0 * (1.0 - t * c).powi(2)))
    } else {
        Ok(q / (4.0 * s * s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_examples() {
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = [c(0.0, 0.0), c(1.0, 0.0)];
        let d = rank_one_nr_params(&e1, &e1).unwrap();
        assert_eq!((d.focus(), d.sum()), (c(1.0, 0.0), 1.0));
        assert!(d.is_segment());

        let d = rank_one_nr_params(&e1, &e2).unwrap();
        assert_eq!((d.focus(), d.sum()), (c(0.0, 0.0), 1.0));
        assert_abs_diff_eq!(d.polar_radius(1.234).unwrap(), 0.5, epsilon = 1e-15);

        let two = [c(2.0, 0.0), c(0.0, 0.0)];
        let d = rank_one_nr_params(&two, &e1).unwrap();
        assert_eq!((d.focus(), d.sum()), (c(2.0, 0.0), 2.0));

        assert!(rank_one_nr_params(&e1, &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn tuple_disk_examples() {
        let psi = crate::states::haar_random_pure(3, 9).unwrap();
        let d = disk_from_tuple(&[psi.clone(), psi]).unwrap();
        assert_abs_diff_eq!(d.focus().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.sum(), 1.0, epsilon = 1e-12);

        let e1 = PureState::basis(2, 0).unwrap();
        let e2 = PureState::basis(2, 1).unwrap();
        let d = disk_from_tuple(&[e1.clone(), e2.clone()]).unwrap();
        assert!(d.is_point());
        assert!(d.contains(c(0.0, 0.0), 0.0));
        assert!(!d.contains(c(1e-6, 0.0), 0.0));

        let h = PureState::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        let d = disk_from_tuple(&[e1.clone(), h, e2]).unwrap();
        assert_abs_diff_eq!(d.focus().norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.sum(), 0.5, epsilon = 1e-15);

        assert!(matches!(disk_from_tuple(&[e1]), Err(Error::TooFewStates { .. })));
    }

    #[test]
    fn membership_examples() {
        for t in [0.0, 0.3, 1.0] {
            assert!(EllipticalDisk::new(c(t, 0.0), 1.0).unwrap().contains(c(0.0, 0.0), 0.0));
        }
        let seg = EllipticalDisk::new(c(1.0, 0.0), 1.0).unwrap();
        assert!(!seg.contains(c(0.5, 0.1), 1e-12));
        let circle = EllipticalDisk::new(c(0.0, 0.0), 1.0).unwrap();
        assert!(circle.contains(c(0.5, 0.0), 0.0));
    }

    #[test]
    fn polar_examples() {
        let t: f64 = 0.37;
        let d = EllipticalDisk::new(c(t, 0.0), 1.0).unwrap();
        for theta in [0.0, 1.0, PI, 5.0] {
            let want = (1.0 - t * t) / (2.0 * (1.0 - t * theta.cos()));
            assert_abs_diff_eq!(d.polar_radius(theta).unwrap(), want, epsilon = 1e-15);
        }
        let d = EllipticalDisk::new(c(0.5, 0.0), 1.0).unwrap();
        assert_abs_diff_eq!(d.polar_radius(0.0).unwrap(), 0.75, epsilon = 1e-15);
        let seg = EllipticalDisk::new(c(0.0, 0.8), 0.8).unwrap();
        assert!(matches!(seg.polar_radius(0.1), Err(Error::DegenerateDisk { .. })));
        let point = EllipticalDisk::new(c(0.0, 0.0), 0.0).unwrap();
        assert!(point.polar_radius(0.1).is_err());
    }

    #[test]
    fn invalid_disks_are_rejected() {
        assert!(EllipticalDisk::new(c(1.0, 1.0), 1.0).is_err());
        assert!(EllipticalDisk::new(c(0.0, 0.0), -1.0).is_err());
        assert!(EllipticalDisk::new(c(0.0, 0.0), f64::NAN).is_err());
    }

    #[test]
    fn minkowski_identity_factor() {
        let one = PlanarSample::new(vec![c(1.0, 0.0)], "one");
        let b = EllipticalDisk::new(c(0.2, 0.3), 0.9).unwrap().boundary_sample(16);
        let prod = minkowski_sample(&[one, b.clone()], 200, 1).unwrap();
        assert!(prod.points.iter().all(|z| b.points.contains(z)));
        assert_eq!(minkowski_sample(&[], 3, 0), Err(Error::EmptySet));
        let empty = PlanarSample::new(vec![], "empty");
        assert_eq!(minkowski_sample(&[b, empty], 3, 0), Err(Error::EmptySet));
    }

    #[test]
    fn minkowski_of_half_disks_stays_in_quarter_disk() {
        let disk = EllipticalDisk::new(c(0.0, 0.0), 1.0).unwrap();
        let a = disk.interior_sample(500, 1);
        let b = disk.interior_sample(500, 2);
        let prod = minkowski_sample(&[a, b], 10_000, 3).unwrap();
        assert!(prod.points.iter().all(|z| z.norm() <= 0.25 + 1e-15));
    }

    #[test]
    fn minkowski_square_boundary_examples() {
        for theta in [0.0, 1.0, 3.0, 6.0] {
            assert_abs_diff_eq!(minkowski_square_boundary(0.0, theta).unwrap(), 0.25, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(minkowski_square_boundary(0.5, 0.0).unwrap(), 0.5625, epsilon = 1e-15);
        // symmetric about the real axis: just below 2π matches θ = 0
        let below = minkowski_square_boundary(0.5, TAU - 1e-9).unwrap();
        assert_abs_diff_eq!(below, 0.5625, epsilon = 1e-9);
        // on the negative real axis the pair (0.75, −0.25) beats the symmetric pair (0.375i)²
        assert_abs_diff_eq!(minkowski_square_boundary(0.5, PI).unwrap(), 0.1875, epsilon = 1e-15);
        // branches meet where |cos(θ/2)| = t
        let switch = 2.0 * 0.5f64.acos();
        let lo = minkowski_square_boundary(0.5, switch - 1e-12).unwrap();
        let hi = minkowski_square_boundary(0.5, switch + 1e-12).unwrap();
        assert_abs_diff_eq!(lo, hi, epsilon = 1e-10);
        assert!(minkowski_square_boundary(1.0, 0.0).is_err());
        assert!(minkowski_square_boundary(-0.1, 0.0).is_err());
    }

    #[test]
    fn brute_force_square_maximum_matches_closed_form() {
        let boundary = EllipticalDisk::new(c(0.5, 0.0), 1.0).unwrap().boundary_sample(4096);
        let prod = minkowski_sample(&[boundary.clone(), boundary], 100_000, 5).unwrap();
        let max = prod.points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(max <= 0.5625 + 1e-12);
        assert!(max > 0.5625 - 1e-3, "max {max}");
    }

    #[test]
    fn square_boundary_matches_pairwise_maximum() {
        let r_e = |t: f64, a: f64| (1.0 - t * t) / (2.0 * (1.0 - t * a.cos()));
        for t in [0.1, 0.5, 0.9] {
            for k in 0..32 {
                let theta = TAU * k as f64 / 32.0;
                let best = (0..20_000)
                    .map(|j| {
                        let a = TAU * j as f64 / 20_000.0;
                        r_e(t, a) * r_e(t, theta - a)
                    })
                    .fold(0.0, f64::max);
                let r = minkowski_square_boundary(t, theta).unwrap();
                assert!(best <= r + 1e-12 && best > r - 1e-6, "t={t} θ={theta}: {best} vs {r}");
            }
        }
    }

    #[test]
    fn angle_helpers() {
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert_abs_diff_eq!(normalize_angle(-PI / 2.0), 1.5 * PI, epsilon = 1e-15);
        assert_eq!(arg(c(0.0, 0.0)), 0.0);
        assert_abs_diff_eq!(arg(c(-1.0, 0.0)), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(arg(c(0.0, -1.0)), 1.5 * PI, epsilon = 1e-15);
    }
}
