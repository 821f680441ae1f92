use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::invariants::{triple, BlochVector};
use crate::seed::Rng;

/// `16/(3√3)`, the extreme value of `det(r₁+r₂, r₂+r₃, r₃+r₄)` over unit vectors.
pub const DET_QUAD_BOUND: f64 = 3.079_201_435_678_004;

const UNIT_TOL: f64 = 1e-10;

/// `det(r₁, r₂, r₃)`.
pub fn det3(r1: &BlochVector, r2: &BlochVector, r3: &BlochVector) -> f64 {
    triple(r1, r2, r3)
}

fn add(a: &BlochVector, b: &BlochVector) -> BlochVector {
    BlochVector([a.0[0] + b.0[0], a.0[1] + b.0[1], a.0[2] + b.0[2]])
}

/// `det(r₁+r₂, r₂+r₃, r₃+r₄)` for unit vectors.
pub fn det_quad(r1: &BlochVector, r2: &BlochVector, r3: &BlochVector, r4: &BlochVector) -> Result<f64> {
    for (index, r) in [r1, r2, r3, r4].into_iter().enumerate() {
        let norm = r.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitBloch { index, norm });
        }
    }
    Ok(triple(&add(r1, r2), &add(r2, r3), &add(r3, r4)))
}

/// The same determinant as the sum of the four 3-subset determinants.
pub fn det_quad_expansion(r1: &BlochVector, r2: &BlochVector, r3: &BlochVector, r4: &BlochVector) -> f64 {
    triple(r1, r2, r3) + triple(r1, r2, r4) + triple(r1, r3, r4) + triple(r2, r3, r4)
}

/// Uniform point on the unit sphere.
pub fn random_unit_vector(rng: &mut Rng) -> BlochVector {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        if let Ok(r) = BlochVector::unit(v[0], v[1], v[2]) {
            return r;
        }
    }
}
