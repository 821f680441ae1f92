//! Bargmann invariants of tuples of quantum states.
//!
//! The crate computes order-`n` invariants `Tr(ρ₁⋯ρₙ)` by several independent
//! routes, describes the closed region `Rₙ` bounded by
//! `rₙ(θ) = cosⁿ(π/n)·secⁿ((θ−π)/n)`, re-derives that boundary numerically as an
//! envelope of curve families, and runs Monte Carlo and search campaigns that
//! check sampled invariants against it.
//!
//! Modules, bottom-up:
//!
//! * [`states`]: pure states, density matrices, Haar / Hilbert–Schmidt sampling.
//! * [`invariants`]: the invariant itself (trace, overlap product, Bloch recursion,
//!   closed forms for `n ∈ {3,4,5}`).
//! * [`geometry`]: elliptical disks with a focus at the origin and Minkowski products.
//! * [`boundary`]: the boundary curve, `τₙ`, membership and the extremal qubit tuples.
//! * [`envelope`]: a numeric envelope solver for one-parameter curve families.
//! * [`verify`]: sampling campaigns, convex hulls, determinant bounds, optimization.
//! * [`cli`]: the command-line front end.

pub mod boundary;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod seed;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
