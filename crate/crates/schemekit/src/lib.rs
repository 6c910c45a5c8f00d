//! Exact computation with commutative association schemes.
//!
//! The crate builds association schemes on explicit finite ground sets,
//! computes their intersection numbers, eigenmatrices and Krein parameters,
//! and decides multivariate P- and Q-polynomial structure with respect to a
//! monomial order, including recovery of the defining polynomials and the
//! Gröbner staircase of the Bose-Mesner algebra.

pub mod constructors;
pub mod exact;
pub mod orders;
pub mod poly;
pub mod polycheck;
pub mod polystruct;
pub mod scheme;
pub mod spectrum;

pub use orders::{AbOrder, MonomialOrder, OrderKind};
pub use polycheck::{CheckReport, Labeling};
pub use scheme::{IntersectionTensor, RelationScheme};
pub use spectrum::Spectrum;

/// Default cap on the ground-set size; override with `SCHEMEKIT_MAX_GROUND_SET`.
pub const DEFAULT_MAX_GROUND_SET: usize = 5000;

/// Default relative tolerance for all numerical (Krein-side) decisions.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Resolved size cap, honoring the environment override.
pub fn max_ground_set() -> usize {
    std::env::var("SCHEMEKIT_MAX_GROUND_SET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_GROUND_SET)
}
