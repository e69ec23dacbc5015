//! Exact enumeration, bound evaluation, and verification for cross-L-intersecting
//! families of k-subsets of \[n\]: closed-form maxima with regime classification,
//! independent brute-force oracles, extremal-configuration enumeration up to
//! isomorphism, bipartite fragment machinery, and shadow bounds.

pub mod binom;
pub mod bounds;
pub mod canonical;
pub mod construct;
pub mod error;
pub mod family;
pub mod fragments;
pub mod graph;
pub mod group;
pub mod lspec;
pub mod matching;
pub mod search;
pub mod subset;
pub mod util;

pub use binom::{binom_exact, binom_real, solve_binom_inverse, BigCount};
pub use bounds::{BoundResult, Regime};
pub use canonical::{canonical_form, CanonicalKey};
pub use error::{Error, Result};
pub use family::{FamilyTuple, SetFamily};
pub use fragments::{FragmentRecord, Side};
pub use graph::IntersectionGraph;
pub use lspec::LSpec;
pub use search::{SearchMode, SearchOptions, SearchResult};
pub use subset::KSubset;
