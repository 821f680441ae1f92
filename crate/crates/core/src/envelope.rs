//! Numeric envelopes of one-parameter families of polar curves `F(r, θ, p) = 0`.
//!
//! At a fixed angle every family member crosses the ray once, at radius `r(p)`.
//! The envelope point is where that radius is stationary in `p`, i.e. where
//! `F(r(p), θ, p) = 0` and `∂F/∂p(r(p), θ, p) = 0` hold together. Stationary
//! parameters are enumerated by scanning the parameter domain for sign changes
//! of `∂F/∂p` and bisecting each bracket; among the candidates the largest
//! radius in `(0, 1]` is kept.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::boundary::PolarCurve;
use crate::error::{Error, Result};
use crate::geometry::normalize_angle;

/// Number of sub-brackets scanned for stationary parameters.
pub const SCAN_BRACKETS: usize = 256;
/// Step of the central finite difference used for families without an analytic derivative.
pub const FD_STEP: f64 = 1e-6;

/// The curve families behind the `n = 3` and `n = 4` boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveFamily {
    /// Ellipses `r(1 − t cos θ) = t(1 − t²)/2`, `t ∈ [0, 1]`.
    N3,
    /// Ellipses `(1 − t cos α)(1 − t cos(α − θ)) r = (1 − t²)²/4`, `α ∈ [0, 2π]`, `t` fixed;
    /// their envelope is `∂(E_t²)`.
    N4Inner { t: f64 },
    /// Curves `(1 − t|cos(θ/2)|)√r = (1 − t²)/2`, `t ∈ [0, 1]`, i.e. the boundaries `∂(E_t²)`.
    N4Outer,
}

impl CurveFamily {
    pub fn name(&self) -> String {
        match self {
            CurveFamily::N3 => "N3".into(),
            CurveFamily::N4Inner { t } => format!("N4_INNER(t={t})"),
            CurveFamily::N4Outer => "N4_OUTER".into(),
        }
    }

    /// Parses `N3`, `N4_OUTER` or `N4_INNER` (the latter needs `t`).
    pub fn parse(name: &str, t: Option<f64>) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "N3" => Ok(CurveFamily::N3),
            "N4_OUTER" => Ok(CurveFamily::N4Outer),
            "N4_INNER" => {
                let t = t.ok_or_else(|| Error::InvalidParameter("N4_INNER needs a value of t".into()))?;
                if !(0.0..1.0).contains(&t) {
                    return Err(Error::InvalidParameter(format!("t = {t} must lie in [0, 1)")));
                }
                Ok(CurveFamily::N4Inner { t })
            }
            other => Err(Error::InvalidParameter(format!("unknown curve family {other}"))),
        }
    }

    /// Closed parameter interval.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            CurveFamily::N3 | CurveFamily::N4Outer => (0.0, 1.0),
            CurveFamily::N4Inner { .. } => (0.0, TAU),
        }
    }

    /// Envelope radius at `θ = 0`, where the family degenerates, if known analytically.
    pub fn limit_at_zero(&self) -> Option<(f64, f64)> {
        match self {
            CurveFamily::N3 | CurveFamily::N4Outer => Some((1.0, 1.0)),
            CurveFamily::N4Inner { .. } => None,
        }
    }

    pub fn value(&self, r: f64, theta: f64, p: f64) -> f64 {
        self.eval(r, theta, p).0
    }

    /// `(F, ∂F/∂p)` from the analytic expressions.
    pub fn eval(&self, r: f64, theta: f64, p: f64) -> (f64, f64) {
        match *self {
            CurveFamily::N3 => {
                let t = p;
                let f = r * (1.0 - t * theta.cos()) - t * (1.0 - t * t) / 2.0;
                let df = 0.5 * (3.0 * t * t - 2.0 * r * theta.cos() - 1.0);
                (f, df)
            }
            CurveFamily::N4Inner { t } => {
                let a = p;
                let q = 1.0 - t * t;
                let f = (1.0 - t * a.cos()) * (1.0 - t * (a - theta).cos()) * r - q * q / 4.0;
                let df = r * t * ((a - theta).sin() + a.sin() - t * (2.0 * a - theta).sin());
                (f, df)
            }
            CurveFamily::N4Outer => {
                let t = p;
                let c = (theta / 2.0).cos().abs();
                let sr = r.max(0.0).sqrt();
                let f = (1.0 - t * c) * sr - (1.0 - t * t) / 2.0;
                let df = t - sr * c;
                (f, df)
            }
        }
    }

    /// Central finite difference of `F` in the parameter.
    pub fn fd_param_derivative(&self, r: f64, theta: f64, p: f64) -> f64 {
        (self.value(r, theta, p + FD_STEP) - self.value(r, theta, p - FD_STEP)) / (2.0 * FD_STEP)
    }

    /// Radius where member `p` crosses the ray at angle `θ`. Every family is
    /// affine in `r` (or `√r`), so `F = 0` is solved directly. `None` when no
    /// crossing exists.
    pub fn member_radius(&self, theta: f64, p: f64) -> Option<f64> {
        let r = match *self {
            CurveFamily::N3 => p * (1.0 - p * p) / (2.0 * (1.0 - p * theta.cos())),
            CurveFamily::N4Inner { t } => {
                let q = 1.0 - t * t;
                q * q / (4.0 * (1.0 - t * p.cos()) * (1.0 - t * (p - theta).cos()))
            }
            CurveFamily::N4Outer => {
                let s = (1.0 - p * p) / (2.0 * (1.0 - p * (theta / 2.0).cos().abs()));
                if s < 0.0 {
                    return None;
                }
                s * s
            }
        };
        (r.is_finite() && r >= 0.0).then_some(r)
    }

    /// `∂F/∂p` along the family: evaluated at the member's own radius.
    fn stationarity(&self, theta: f64, p: f64) -> Option<(f64, f64)> {
        let r = self.member_radius(theta, p)?;
        Some((self.eval(r, theta, p).1, r))
    }
}

/// Bisection of a sign change of `f` on `[lo, hi]` down to adjacent floats.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A point of a numeric envelope with the generating parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub theta: f64,
    pub r: f64,
    pub param: f64,
}

/// Stationary candidates `(param, r)` of the family at angle `θ`.
pub fn stationary_candidates(family: &CurveFamily, theta: f64) -> Vec<(f64, f64)> {
    let (lo, hi) = family.domain();
    let nodes: Vec<f64> = (0..=SCAN_BRACKETS).map(|k| lo + (hi - lo) * k as f64 / SCAN_BRACKETS as f64).collect();
    let values: Vec<Option<(f64, f64)>> = nodes.iter().map(|&p| family.stationarity(theta, p)).collect();
    let mut out = Vec::new();
    for k in 0..nodes.len() {
        let Some((h, r)) = values[k] else { continue };
        if h == 0.0 {
            out.push((nodes[k], r));
            continue;
        }
        if k + 1 == nodes.len() {
            continue;
        }
        let Some((h_next, _)) = values[k + 1] else { continue };
        if h_next != 0.0 && (h < 0.0) != (h_next < 0.0) {
            let p = bisect(|p| family.stationarity(theta, p).map_or(f64::NAN, |(h, _)| h), nodes[k], nodes[k + 1]);
            if let Some(r) = family.member_radius(theta, p) {
                out.push((p, r));
            }
        }
    }
    out
}

/// Envelope point at a single angle.
pub fn envelope_at(family: &CurveFamily, theta: f64) -> Result<EnvelopePoint> {
    let theta = normalize_angle(theta);
    if theta == 0.0 {
        if let Some((r, param)) = family.limit_at_zero() {
            return Ok(EnvelopePoint { theta, r, param });
        }
    }
    let candidates = stationary_candidates(family, theta);
    if candidates.is_empty() {
        return Err(Error::NoEnvelopePoint { theta, reason: "no sign change of dF/dparam".into() });
    }
    candidates
        .into_iter()
        .filter(|&(_, r)| r > 0.0 && r <= 1.0)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(param, r)| EnvelopePoint { theta, r, param })
        .ok_or_else(|| Error::NoEnvelopePoint { theta, reason: "no candidate radius in (0, 1]".into() })
}

/// Result of [`envelope_numeric`]: the curve through every angle that produced
/// a point, the generating parameters, and the angles that failed.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub curve: PolarCurve,
    pub points: Vec<EnvelopePoint>,
    pub failures: Vec<Error>,
}

/// Envelope of `family` on `grid` (angles in `[0, 2π)`, strictly increasing).
pub fn envelope_numeric(family: &CurveFamily, grid: &[f64]) -> Result<Envelope> {
    let results: Vec<Result<EnvelopePoint>> = grid.par_iter().map(|&t| envelope_at(family, t)).collect();
    let mut points = Vec::with_capacity(grid.len());
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(p) => points.push(p),
            Err(e) => failures.push(e),
        }
    }
    let curve = PolarCurve::new(points.iter().map(|p| (p.theta, p.r)).collect())?;
    Ok(Envelope { curve, points, failures })
}

/// `grid` equally spaced angles in `(0, 2π)`, excluding `0`.
pub fn interior_grid(grid: usize) -> Vec<f64> {
    (1..=grid).map(|k| TAU * k as f64 / (grid + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{boundary_radius, cubic_roots_n3, uniform_grid};
    use crate::geometry::minkowski_square_boundary;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn family_eval_examples() {
        assert_eq!(CurveFamily::N3.eval(1.0, 0.0, 1.0).0, 0.0);
        let (_, dt) = CurveFamily::N3.eval(0.125, PI, 0.5);
        assert_abs_diff_eq!(dt, 0.0, epsilon = 1e-15);
        let (g, dg) = CurveFamily::N4Outer.eval(1.0, 0.0, 1.0);
        assert_eq!(g, 0.0);
        assert_eq!(dg, 0.0);
        assert_abs_diff_eq!(CurveFamily::N4Outer.eval(1.0, 0.0, 0.3).1, 0.3 - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let families = [CurveFamily::N3, CurveFamily::N4Inner { t: 0.4 }, CurveFamily::N4Outer];
        for fam in families {
            let (lo, hi) = fam.domain();
            for i in 1..10 {
                let p = lo + (hi - lo) * i as f64 / 10.0;
                for j in 0..8 {
                    let theta = 0.1 + 0.75 * j as f64;
                    let r = 0.3;
                    let analytic = fam.eval(r, theta, p).1;
                    let numeric = fam.fd_param_derivative(r, theta, p);
                    assert!(
                        (analytic - numeric).abs() <= 1e-6 * analytic.abs().max(1.0),
                        "{} p={p} theta={theta}: {analytic} vs {numeric}",
                        fam.name()
                    );
                }
            }
        }
    }

    #[test]
    fn member_radius_matches_closed_forms() {
        let t: f64 = 0.6;
        let theta: f64 = 2.0;
        let r = CurveFamily::N3.member_radius(theta, t).unwrap();
        assert_abs_diff_eq!(r, t * (1.0 - t * t) / (2.0 * (1.0 - t * theta.cos())), epsilon = 1e-15);
        let r = CurveFamily::N4Outer.member_radius(theta, t).unwrap();
        let symmetric = (1.0 - t * t).powi(2) / (4.0 * (1.0 - t * (theta / 2.0).cos().abs()).powi(2));
        assert_abs_diff_eq!(r, symmetric, epsilon = 1e-15);
        // here |cos(θ/2)| ≥ t, so the symmetric pair is the outer one
        let theta = 1.0;
        let r = CurveFamily::N4Outer.member_radius(theta, t).unwrap();
        assert_abs_diff_eq!(r, minkowski_square_boundary(t, theta).unwrap(), epsilon = 1e-15);
    }

    #[test]
    fn n3_envelope_matches_boundary() {
        let grid = interior_grid(179);
        let env = envelope_numeric(&CurveFamily::N3, &grid).unwrap();
        assert!(env.failures.is_empty());
        for p in &env.points {
            assert_abs_diff_eq!(p.r, boundary_radius(3, p.theta).unwrap(), epsilon = 1e-8);
        }
    }

    #[test]
    fn n3_envelope_at_leftmost_point() {
        let p = envelope_at(&CurveFamily::N3, PI).unwrap();
        assert_abs_diff_eq!(p.r, 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(p.param, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn zero_angle_uses_the_analytic_limit() {
        let p = envelope_at(&CurveFamily::N3, 0.0).unwrap();
        assert_eq!((p.r, p.param), (1.0, 1.0));
        let p = envelope_at(&CurveFamily::N4Inner { t: 0.5 }, 0.0).unwrap();
        assert_abs_diff_eq!(p.r, 0.5625, epsilon = 1e-12);
    }

    #[test]
    fn n4_envelopes_match_closed_forms() {
        let grid = uniform_grid(90);
        let outer = envelope_numeric(&CurveFamily::N4Outer, &grid).unwrap();
        assert!(outer.failures.is_empty());
        for p in &outer.points {
            assert_abs_diff_eq!(p.r, boundary_radius(4, p.theta).unwrap(), epsilon = 1e-8);
        }
        let inner = envelope_numeric(&CurveFamily::N4Inner { t: 0.5 }, &grid).unwrap();
        for p in &inner.points {
            assert_abs_diff_eq!(p.r, minkowski_square_boundary(0.5, p.theta).unwrap(), epsilon = 1e-8);
        }
    }

    #[test]
    fn envelope_points_are_tangent() {
        for fam in [CurveFamily::N3, CurveFamily::N4Outer, CurveFamily::N4Inner { t: 0.7 }] {
            let env = envelope_numeric(&fam, &interior_grid(60)).unwrap();
            for p in &env.points {
                let (f, df) = fam.eval(p.r, p.theta, p.param);
                assert!(f.abs() < 1e-9, "{}: F = {f}", fam.name());
                assert!(df.abs() < 1e-8, "{}: dF = {df}", fam.name());
            }
        }
    }

    #[test]
    fn rejected_cubic_branches_are_never_returned() {
        let grid = interior_grid(359);
        let env = envelope_numeric(&CurveFamily::N3, &grid).unwrap();
        let mut branch_invalid = [false; 2];
        for p in &env.points {
            let roots = cubic_roots_n3(p.theta);
            for (k, s) in roots[1..].iter().enumerate() {
                let r = s.powi(-3);
                if !(0.0..=1.0).contains(&r) {
                    branch_invalid[k] = true;
                }
                assert!((r - p.r).abs() > 1e-6 || (roots[0] - s).abs() < 1e-9);
            }
        }
        assert_eq!(branch_invalid, [true, true]);
    }

    #[test]
    fn parse_families() {
        assert_eq!(CurveFamily::parse("n3", None).unwrap(), CurveFamily::N3);
        assert_eq!(CurveFamily::parse("N4_INNER", Some(0.2)).unwrap(), CurveFamily::N4Inner { t: 0.2 });
        assert!(CurveFamily::parse("N4_INNER", None).is_err());
        assert!(CurveFamily::parse("N5", None).is_err());
    }
}
