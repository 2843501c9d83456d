//! Exact counting of induced rainbow patterns in edge-colored complete graphs,
//! blow-up constructions, copy decompositions with bound audits, extremal
//! search, and an exact-arithmetic inequality battery.

pub mod bits;
pub mod canon;
pub mod constructions;
pub mod counting;
pub mod decomposition;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod optimizer;
pub mod rng;
pub mod verifier;

pub use bits::BitSet;
pub use canon::{are_isomorphic, automorphism_count, canonical_form, CanonError, CanonicalCode};
pub use counting::{count_induced, global_stats, pair_degree, role_stats, GlobalStats, RoleStats};
pub use graph::{Color, ColoredGraph, GraphError, Pattern};
