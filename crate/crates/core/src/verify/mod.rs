//! Sampling campaigns and numeric checks against the boundary of `Rₙ`.
//!
//! Checks for `n ∈ {3, 4}` are backed by a proof; checks for `n ≥ 5` only
//! gather evidence for the conjectured identity and are reported as such.

mod bounds;
mod campaign;
mod convexity;
mod hull;
mod search;
pub mod suites;

pub use bounds::{det3, det_quad, det_quad_expansion, random_unit_vector, DET_QUAD_BOUND};
pub use campaign::{
    containment_report, dump_violation, sample_cloud, sample_cloud_reversed, sample_tuple, Cloud, CloudKind,
    CloudStats, SampledTuple,
};
pub use convexity::{
    analytic_second_derivative, concavity_check, midpoint_check, region_area, tau_numeric, ConcavityReport,
    MidpointReport,
};
pub use hull::{convex_hull, hull_compare, Hull};
pub use search::{max_im_search, max_im_search_in, SearchResult, SearchSpace};

/// Whether a check rests on a theorem (`n ∈ {3, 4}`) or only on the conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Theorem,
    Conjecture,
}

impl Evidence {
    pub fn for_order(n: usize) -> Self {
        if n <= 4 {
            Evidence::Theorem
        } else {
            Evidence::Conjecture
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Evidence::Theorem => "theorem check",
            Evidence::Conjecture => "conjecture evidence",
        }
    }
}
