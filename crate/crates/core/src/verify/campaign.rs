use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundary::RegionSpec;
use crate::error::{Error, Result};
use crate::geometry::PlanarSample;
use crate::invariants::{delta_pure, delta_trace};
use crate::seed::rng_for;
use crate::states::{ginibre_density_with, haar_random_pure_with, DensityMatrix, PureState, StateTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudKind {
    /// Haar-random pure states, invariant via the overlap product.
    Pure,
    /// Hilbert–Schmidt random density matrices, invariant via the trace.
    Mixed,
}

impl CloudKind {
    pub fn name(&self) -> &'static str {
        match self {
            CloudKind::Pure => "pure",
            CloudKind::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampledTuple {
    Pure(StateTuple<PureState>),
    Mixed(StateTuple<DensityMatrix>),
}

impl SampledTuple {
    pub fn invariant(&self) -> Complex64 {
        match self {
            SampledTuple::Pure(t) => delta_pure(t).value(),
            SampledTuple::Mixed(t) => delta_trace(t).value(),
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            SampledTuple::Pure(t) => SampledTuple::Pure(t.reversed()),
            SampledTuple::Mixed(t) => SampledTuple::Mixed(t.reversed()),
        }
    }
}

/// Sampled invariants with the parameters that regenerate them.
#[derive(Debug, Clone, PartialEq)]
pub struct Cloud {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub kind: CloudKind,
    pub reversed: bool,
    pub sample: PlanarSample,
}

impl Cloud {
    pub fn points(&self) -> &[Complex64] {
        &self.sample.points
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sample.is_empty()
    }
}

fn check_sizes(n: usize, d: usize, count: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, min: 2 });
    }
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    Ok(())
}

/// Tuple number `index` of the campaign `(n, d, seed, kind)`.
pub fn sample_tuple(n: usize, d: usize, seed: u64, index: u64, kind: CloudKind) -> Result<SampledTuple> {
    let mut rng = rng_for(seed, index);
    Ok(match kind {
        CloudKind::Pure => {
            let states = (0..n).map(|_| haar_random_pure_with(&mut rng, d)).collect::<Result<Vec<_>>>()?;
            SampledTuple::Pure(StateTuple::new(states)?)
        }
        CloudKind::Mixed => {
            let states = (0..n).map(|_| ginibre_density_with(&mut rng, d)).collect::<Result<Vec<_>>>()?;
            SampledTuple::Mixed(StateTuple::new(states)?)
        }
    })
}

fn cloud(n: usize, d: usize, count: usize, seed: u64, kind: CloudKind, reversed: bool) -> Result<Cloud> {
    check_sizes(n, d, count)?;
    let points = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let tuple = sample_tuple(n, d, seed, i, kind)?;
            Ok(if reversed { tuple.reversed().invariant() } else { tuple.invariant() })
        })
        .collect::<Result<Vec<_>>>()?;
    let tag = format!("{} n={n} d={d} seed={seed}{}", kind.name(), if reversed { " reversed" } else { "" });
    Ok(Cloud { n, d, seed, kind, reversed, sample: PlanarSample::new(points, tag) })
}

/// `count` invariants of random `n`-tuples in `Cᵈ`; draw `i` is seeded from `(seed, i)`.
pub fn sample_cloud(n: usize, d: usize, count: usize, seed: u64, kind: CloudKind) -> Result<Cloud> {
    cloud(n, d, count, seed, kind, false)
}

/// Same draws as [`sample_cloud`], each tuple taken in reverse order.
pub fn sample_cloud_reversed(n: usize, d: usize, count: usize, seed: u64, kind: CloudKind) -> Result<Cloud> {
    cloud(n, d, count, seed, kind, true)
}

/// Containment of a cloud in `Rₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudStats {
    pub n: usize,
    pub d: usize,
    pub count: usize,
    pub inside: usize,
    /// `max |z| − rₙ(arg z)` over the cloud; negative when everything is strictly inside.
    pub worst_violation: f64,
    pub seed: u64,
    /// Indices of the samples outside the region.
    pub violations: Vec<usize>,
}

impl CloudStats {
    pub fn passed(&self) -> bool {
        self.inside == self.count
    }
}

pub fn containment_report(cloud: &Cloud, n: usize, tol: f64) -> Result<CloudStats> {
    let region = RegionSpec::new(n)?;
    let mut worst = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for (i, &z) in cloud.points().iter().enumerate() {
        let excess = region.excess(z);
        worst = worst.max(excess);
        if !region.contains(z, tol) {
            violations.push(i);
        }
    }
    Ok(CloudStats {
        n,
        d: cloud.d,
        count: cloud.len(),
        inside: cloud.len() - violations.len(),
        worst_violation: worst,
        seed: cloud.seed,
        violations,
    })
}

/// Full description of sample `index` of `cloud`, amplitudes at 17 significant digits.
pub fn dump_violation(cloud: &Cloud, index: usize) -> Result<String> {
    let mut tuple = sample_tuple(cloud.n, cloud.d, cloud.seed, index as u64, cloud.kind)?;
    if cloud.reversed {
        tuple = tuple.reversed();
    }
    let z = tuple.invariant();
    let region = RegionSpec::new(cloud.n.max(3))?;
    let mut out = String::new();
    let _ = writeln!(out, "# sample {index} of {} (excess {:.16e})", cloud.sample.provenance, region.excess(z));
    let _ = writeln!(out, "delta,{:.16e},{:.16e}", z.re, z.im);
    match &tuple {
        SampledTuple::Pure(t) => {
            for (k, s) in t.states().iter().enumerate() {
                let amps: Vec<String> = s.amplitudes().iter().map(|a| format!("{:.16e},{:.16e}", a.re, a.im)).collect();
                let _ = writeln!(out, "state{k},{}", amps.join(","));
            }
        }
        SampledTuple::Mixed(t) => {
            for (k, rho) in t.states().iter().enumerate() {
                let entries: Vec<String> =
                    rho.matrix().iter().map(|a| format!("{:.16e},{:.16e}", a.re, a.im)).collect();
                let _ = writeln!(out, "rho{k}_colmajor,{}", entries.join(","));
            }
        }
    }
    Ok(out)
}
