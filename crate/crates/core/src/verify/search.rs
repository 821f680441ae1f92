use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng as _;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{delta_pure, BlochAccumulator, BlochVector};
use crate::seed::rng_for;
use crate::states::{PureState, StateTuple};

const INITIAL_STEP: f64 = 0.5;
const MIN_STEP: f64 = 1e-9;
const MAX_SWEEPS: usize = 20_000;

/// Where the search looks for maximizing tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// Pure qubits parameterized by Bloch angles `(θ, φ)` per state.
    Qubit,
    /// Pure states in `Cᵈ` parameterized by unnormalized real and imaginary parts.
    Qudit(usize),
}

impl SearchSpace {
    fn dims_per_state(&self) -> usize {
        match self {
            SearchSpace::Qubit => 2,
            SearchSpace::Qudit(d) => 2 * d,
        }
    }

    fn states(&self, x: &[f64]) -> Result<Vec<PureState>> {
        match self {
            SearchSpace::Qubit => x.chunks(2).map(|a| BlochVector::from_angles(a[0], a[1]).to_pure()).collect(),
            SearchSpace::Qudit(_) => x
                .chunks(self.dims_per_state())
                .map(|c| PureState::normalized(c.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()))
                .collect(),
        }
    }

    fn objective(&self, x: &[f64]) -> f64 {
        match self {
            SearchSpace::Qubit => {
                let rs: Vec<BlochVector> = x.chunks(2).map(|a| BlochVector::from_angles(a[0], a[1])).collect();
                let acc = rs[1..].iter().fold(BlochAccumulator::start(&rs[0]), |acc, r| acc.accumulate(r));
                acc.p0.im * 2f64.powi(1 - rs.len() as i32)
            }
            SearchSpace::Qudit(_) => match self.states(x).and_then(StateTuple::new) {
                Ok(t) => delta_pure(&t).im(),
                Err(_) => f64::NEG_INFINITY,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub n: usize,
    pub space: SearchSpace,
    /// Largest `Im Δₙ` found.
    pub best: f64,
    pub states: Vec<PureState>,
    pub seed: u64,
    pub restarts: usize,
    pub evaluations: usize,
}

fn local_search(space: SearchSpace, mut x: Vec<f64>) -> (f64, Vec<f64>, usize) {
    let mut f = space.objective(&x);
    let mut evals = 1;
    let mut step = INITIAL_STEP;
    let mut sweeps = 0;
    while step > MIN_STEP && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * step;
                let g = space.objective(&x);
                evals += 1;
                if g > f {
                    f = g;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (f, x, evals)
}

fn initial_point(space: SearchSpace, n: usize, seed: u64, restart: usize) -> Vec<f64> {
    let mut rng = rng_for(seed, restart as u64);
    match space {
        SearchSpace::Qubit => (0..n).flat_map(|_| [rng.random::<f64>() * PI, rng.random::<f64>() * TAU]).collect(),
        SearchSpace::Qudit(d) => (0..n * 2 * d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect(),
    }
}

/// Multi-restart coordinate search with a shrinking step, maximizing `Im Δₙ`
/// over `n`-tuples in `space`. Deterministic in `seed`.
pub fn max_im_search_in(space: SearchSpace, n: usize, restarts: usize, seed: u64) -> Result<SearchResult> {
    if n < 3 {
        return Err(Error::InvalidOrder { n, min: 3 });
    }
    if restarts == 0 {
        return Err(Error::InvalidParameter("at least one restart is needed".into()));
    }
    if let SearchSpace::Qudit(d) = space {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
    }
    let runs: Vec<(f64, Vec<f64>, usize)> =
        (0..restarts).into_par_iter().map(|k| local_search(space, initial_point(space, n, seed, k))).collect();
    let evaluations = runs.iter().map(|r| r.2).sum();
    // first maximum wins so the result does not depend on scheduling
    let (best, x, _) = runs.into_iter().reduce(|a, b| if b.0 > a.0 { b } else { a }).expect("restarts >= 1");
    Ok(SearchResult { n, space, best, states: space.states(&x)?, seed, restarts, evaluations })
}

/// [`max_im_search_in`] over pure qubits.
pub fn max_im_search(n: usize, restarts: usize, seed: u64) -> Result<SearchResult> {
    max_im_search_in(SearchSpace::Qubit, n, restarts, seed)
}
