//! The order-`n` Bargmann invariant `Δₙ = Tr(ρ₁⋯ρₙ)`, computed three ways:
//! a trace of the matrix product, a cyclic product of overlaps for pure states,
//! and a recursion on Bloch coefficients for pure qubits. Closed forms for the
//! real and imaginary parts are provided for `n ∈ {3, 4, 5}`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{inner, DensityMatrix, PureState, StateTuple};

/// Slack on the bound `|Δₙ| ≤ 1`.
pub const MODULUS_TOL: f64 = 1e-10;
/// Slack on `|r| = 1` for Bloch vectors of pure qubits.
pub const UNIT_BLOCH_TOL: f64 = 1e-12;

/// A value of `Δₙ` tagged with its order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantValue {
    order: usize,
    value: Complex64,
}

impl InvariantValue {
    pub fn new(order: usize, value: Complex64) -> Self {
        debug_assert!(value.norm() <= 1.0 + MODULUS_TOL, "|Δ| = {} exceeds 1", value.norm());
        Self { order, value }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

/// A real 3-vector `r` with `ρ = ½(1 + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = Self([x, y, z]);
        if r.norm().is_nan() || r.norm() > 1.0 + UNIT_BLOCH_TOL {
            return Err(Error::InvalidState(format!("Bloch vector norm {} exceeds 1", r.norm())));
        }
        Ok(r)
    }

    /// Normalizes `(x, y, z)` onto the unit sphere.
    pub fn unit(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidState("cannot normalize a zero Bloch vector".into()));
        }
        Ok(Self([x / n, y / n, z / n]))
    }

    /// Point on the unit sphere at polar angle `theta`, azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    /// Bloch vector of a qubit pure state.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        if state.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: state.dim() });
        }
        let a = state.amplitudes()[0];
        let b = state.amplitudes()[1];
        let c = a.conj() * b;
        Ok(Self([2.0 * c.re, 2.0 * c.im, a.norm_sqr() - b.norm_sqr()]))
    }

    /// A qubit pure state with this (unit) Bloch vector.
    pub fn to_pure(&self) -> Result<PureState> {
        self.check_unit(0)?;
        let [x, y, z] = self.0;
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        let (s, c) = (theta / 2.0).sin_cos();
        PureState::normalized(vec![Complex64::new(c, 0.0), Complex64::from_polar(s, phi)])
    }

    /// `½(1 + r·σ)`.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let [x, y, z] = self.0;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5 * (1.0 + z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (1.0 - z), 0.0),
            ],
        );
        DensityMatrix::new(m)
    }

    pub fn norm(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn cross(&self, other: &BlochVector) -> [f64; 3] {
        cross(&self.0, &other.0)
    }

    fn check_unit(&self, index: usize) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > UNIT_BLOCH_TOL {
            return Err(Error::NonUnitBloch { index, norm });
        }
        Ok(())
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// `det(a, b, c) = (a × b)·c`.
pub(crate) fn triple(a: &BlochVector, b: &BlochVector, c: &BlochVector) -> f64 {
    dot(&cross(&a.0, &b.0), &c.0)
}

/// Coefficients of `ρ₁⋯ρₖ = 2⁻ᵏ(p₀·1 + p·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAccumulator {
    pub p0: Complex64,
    pub p: [Complex64; 3],
}

impl BlochAccumulator {
    /// Accumulator after the first state: `(1, r₁)`.
    pub fn start(r: &BlochVector) -> Self {
        Self { p0: Complex64::new(1.0, 0.0), p: r.0.map(|x| Complex64::new(x, 0.0)) }
    }

    /// One right-multiplication by `ρ(r)`:
    /// `p₀′ = p₀ + p·r`, `p′ = p₀r + p + i·p×r`, with unconjugated products.
    pub fn accumulate(self, r: &BlochVector) -> Self {
        let [r0, r1, r2] = r.0;
        let [a0, a1, a2] = self.p;
        let pr = a0 * r0 + a1 * r1 + a2 * r2;
        let pxr = [a1 * r2 - a2 * r1, a2 * r0 - a0 * r2, a0 * r1 - a1 * r0];
        let i = Complex64::new(0.0, 1.0);
        let p = [0, 1, 2].map(|k| self.p0 * r.0[k] + self.p[k] + i * pxr[k]);
        Self { p0: self.p0 + pr, p }
    }
}

/// `Tr(ρ₁⋯ρₙ)`.
pub fn delta_trace(tuple: &StateTuple<DensityMatrix>) -> InvariantValue {
    let states = tuple.states();
    let mut prod = states[0].matrix().clone();
    for rho in &states[1..states.len() - 1] {
        prod *= rho.matrix();
    }
    // the last factor only contributes through the trace
    let last = states[states.len() - 1].matrix();
    let d = tuple.dim();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            tr += prod[(i, k)] * last[(k, i)];
        }
    }
    InvariantValue::new(tuple.order(), tr)
}

/// `⟨ψ₁|ψ₂⟩⟨ψ₂|ψ₃⟩⋯⟨ψₙ|ψ₁⟩`.
pub fn delta_pure(tuple: &StateTuple<PureState>) -> InvariantValue {
    let states = tuple.states();
    let n = states.len();
    let value = (0..n)
        .fold(Complex64::new(1.0, 0.0), |acc, k| acc * inner(states[k].amplitudes(), states[(k + 1) % n].amplitudes()));
    InvariantValue::new(n, value)
}

/// `Δₙ = 2¹⁻ⁿ·p₀⁽ⁿ⁾` for pure qubits given by unit Bloch vectors.
pub fn delta_qubit_bloch(rs: &[BlochVector]) -> Result<InvariantValue> {
    if rs.len() < 2 {
        return Err(Error::InvalidOrder { n: rs.len(), min: 2 });
    }
    for (k, r) in rs.iter().enumerate() {
        r.check_unit(k)?;
    }
    let acc = rs[1..].iter().fold(BlochAccumulator::start(&rs[0]), |acc, r| acc.accumulate(r));
    let scale = 2f64.powi(1 - rs.len() as i32);
    Ok(InvariantValue::new(rs.len(), acc.p0 * scale))
}

/// Explicit real and imaginary parts of `Δₙ` for `n ∈ {3, 4, 5}` pure qubits.
pub fn closed_form_xy(rs: &[BlochVector]) -> Result<(f64, f64)> {
    let n = rs.len();
    if !(3..=5).contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    for (k, r) in rs.iter().enumerate() {
        r.check_unit(k)?;
    }
    // d(i, j) and t(i, j, k) take 1-based indices
    let d = |i: usize, j: usize| rs[i - 1].dot(&rs[j - 1]);
    let t = |i: usize, j: usize, k: usize| triple(&rs[i - 1], &rs[j - 1], &rs[k - 1]);
    let xy = match n {
        3 => {
            let x = 0.25 * (1.0 + d(1, 2) + d(1, 3) + d(2, 3));
            let y = 0.25 * t(1, 2, 3);
            (x, y)
        }
        4 => {
            let x = ((1.0 + d(1, 2)) * (1.0 + d(3, 4)) - (1.0 - d(1, 3)) * (1.0 - d(2, 4))
                + (1.0 + d(1, 4)) * (1.0 + d(2, 3)))
                / 8.0;
            let s = |a: usize, b: usize| {
                let (u, v) = (rs[a - 1].0, rs[b - 1].0);
                BlochVector([u[0] + v[0], u[1] + v[1], u[2] + v[2]])
            };
            let y = triple(&s(1, 2), &s(2, 3), &s(3, 4)) / 8.0;
            (x, y)
        }
        _ => {
            let mut pair_sum = 0.0;
            for i in 1..=5 {
                for j in i + 1..=5 {
                    pair_sum += d(i, j);
                }
            }
            let x = (1.0 + pair_sum + d(1, 2) * d(3, 4) - d(1, 3) * d(2, 4)
                + d(1, 4) * d(2, 3)
                + (d(2, 3) + d(2, 4) + d(3, 4)) * d(1, 5)
                + (-d(1, 3) - d(1, 4) + d(3, 4)) * d(2, 5)
                + (d(1, 2) - d(1, 4) - d(2, 4)) * d(3, 5)
                + (d(1, 2) + d(1, 3) + d(2, 3)) * d(4, 5))
                / 16.0;
            let mut triple_sum = 0.0;
            for i in 1..=5 {
                for j in i + 1..=5 {
                    for k in j + 1..=5 {
                        triple_sum += t(i, j, k);
                    }
                }
            }
            let y = (triple_sum + d(2, 3) * t(1, 4, 5) - d(1, 3) * t(2, 4, 5)
                + d(1, 2) * t(3, 4, 5)
                + d(4, 5) * t(1, 2, 3))
                / 16.0;
            (x, y)
        }
    };
    Ok(xy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::projector;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn e(k: usize) -> BlochVector {
        let mut v = [0.0; 3];
        v[k] = 1.0;
        BlochVector(v)
    }

    fn qubit_projectors(rs: &[BlochVector]) -> StateTuple<DensityMatrix> {
        StateTuple::new(rs.iter().map(|r| r.to_density().unwrap()).collect()).unwrap()
    }

    #[test]
    fn trace_of_repeated_projector_is_one() {
        let p = projector(&crate::states::haar_random_pure(3, 5).unwrap());
        let tuple = StateTuple::new(vec![p; 4]).unwrap();
        assert_abs_diff_eq!(delta_trace(&tuple).re(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(delta_trace(&tuple).im(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_factor_kills_the_trace() {
        let e1 = PureState::basis(2, 0).unwrap();
        let e2 = PureState::basis(2, 1).unwrap();
        let any = crate::states::ginibre_density(2, 3).unwrap();
        let tuple = StateTuple::new(vec![projector(&e1), projector(&e2), any]).unwrap();
        assert_eq!(delta_trace(&tuple).value(), c(0.0, 0.0));
    }

    #[test]
    fn trace_of_orthonormal_bloch_triple() {
        let v = delta_trace(&qubit_projectors(&[e(0), e(1), e(2)]));
        assert_abs_diff_eq!(v.re(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn overlap_product_examples() {
        let e1 = PureState::basis(2, 0).unwrap();
        let e2 = PureState::basis(2, 1).unwrap();
        let h = PureState::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        let m = PureState::new(vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]).unwrap();
        let v = delta_pure(&StateTuple::new(vec![e1.clone(), h, e2, m]).unwrap());
        assert_abs_diff_eq!(v.re(), -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im(), 0.0, epsilon = 1e-15);

        let same = delta_pure(&StateTuple::new(vec![e1.clone(), e1.clone(), e1]).unwrap());
        assert_eq!(same.value(), c(1.0, 0.0));
    }

    #[test]
    fn accumulate_examples() {
        let acc = BlochAccumulator::start(&e(0));
        let par = acc.accumulate(&e(0));
        assert_eq!(par.p0, c(2.0, 0.0));
        assert_eq!(par.p, [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let perp = acc.accumulate(&e(1));
        assert_eq!(perp.p0, c(1.0, 0.0));
        assert_eq!(perp.p, [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);

        let anti = acc.accumulate(&BlochVector([-1.0, 0.0, 0.0]));
        assert_eq!(anti.p0, c(0.0, 0.0));
        assert!(anti.p.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn accumulate_matches_matrix_product() {
        // oracle: ρ(e₁)ρ(e₂) = ¼(p₀·1 + p·σ), read off from the matrix entries
        let a = e(0).to_density().unwrap();
        let b = e(1).to_density().unwrap();
        let m = a.matrix() * b.matrix() * c(4.0, 0.0);
        let p0 = (m[(0, 0)] + m[(1, 1)]) / 2.0;
        let pz = (m[(0, 0)] - m[(1, 1)]) / 2.0;
        let px = (m[(0, 1)] + m[(1, 0)]) / 2.0;
        let py = (m[(1, 0)] - m[(0, 1)]) / c(0.0, 2.0);
        let acc = BlochAccumulator::start(&e(0)).accumulate(&e(1));
        assert!((acc.p0 - p0).norm() < 1e-15);
        assert!((acc.p[0] - px).norm() < 1e-15);
        assert!((acc.p[1] - py).norm() < 1e-15);
        assert!((acc.p[2] - pz).norm() < 1e-15);
    }

    #[test]
    fn bloch_route_examples() {
        let v = delta_qubit_bloch(&[e(0), e(1)]).unwrap();
        assert_abs_diff_eq!(v.re(), 0.5, epsilon = 1e-15);
        let v = delta_qubit_bloch(&[e(0), e(1), e(2)]).unwrap();
        assert_abs_diff_eq!(v.re(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im(), 0.25, epsilon = 1e-15);
        let r = BlochVector::unit(0.3, -0.4, 0.8).unwrap();
        for n in 2..9 {
            let v = delta_qubit_bloch(&vec![r; n]).unwrap();
            assert_abs_diff_eq!(v.re(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(v.im(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn bloch_route_rejects_mixed_qubits() {
        let half = BlochVector([0.5, 0.0, 0.0]);
        assert!(matches!(delta_qubit_bloch(&[e(0), half]), Err(Error::NonUnitBloch { index: 1, .. })));
        assert!(delta_qubit_bloch(&[e(0)]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let (x, y) = closed_form_xy(&[e(0), e(1), e(2)]).unwrap();
        assert_abs_diff_eq!(x, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(y, 0.25, epsilon = 1e-15);

        let s = 1.0 / 3f64.sqrt();
        let q = 2f64.sqrt();
        let attain = [
            BlochVector([q * s, 0.0, s]),
            BlochVector([0.0, q * s, s]),
            BlochVector([-q * s, 0.0, s]),
            BlochVector([0.0, -q * s, s]),
        ];
        let (x, y) = closed_form_xy(&attain).unwrap();
        assert_abs_diff_eq!(y, 2.0 / (3.0 * 3f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(x, 2.0 / 9.0, epsilon = 1e-12);

        let r = BlochVector::unit(1.0, 2.0, 3.0).unwrap();
        let (x, y) = closed_form_xy(&[r; 5]).unwrap();
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y, 0.0, epsilon = 1e-12);

        assert_eq!(closed_form_xy(&[r; 6]), Err(Error::UnsupportedOrder(6)));
        assert_eq!(closed_form_xy(&[r; 2]), Err(Error::UnsupportedOrder(2)));
    }

    #[test]
    fn bloch_state_round_trip() {
        let r = BlochVector::from_angles(1.1, -2.3);
        let psi = r.to_pure().unwrap();
        let back = BlochVector::from_pure(&psi).unwrap();
        for k in 0..3 {
            assert_abs_diff_eq!(r.0[k], back.0[k], epsilon = 1e-14);
        }
        let rho = r.to_density().unwrap();
        let p = projector(&psi);
        assert!((rho.matrix() - p.matrix()).iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn two_state_invariant_is_real_and_squared_overlap() {
        let a = BlochVector::from_angles(0.7, 0.2);
        let b = BlochVector::from_angles(2.0, 1.3);
        let v = delta_qubit_bloch(&[a, b]).unwrap();
        assert_abs_diff_eq!(v.im(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.re(), 0.5 * (1.0 + a.dot(&b)), epsilon = 1e-15);
    }
}
