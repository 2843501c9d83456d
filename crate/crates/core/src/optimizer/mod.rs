//! Search for colorings with many induced copies.

mod climb;
mod exhaustive;
mod zykov;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::canon::CanonError;
use crate::counting::binomial;
use crate::exact::ser_rat;
use crate::graph::ColoredGraph;

pub use climb::{
    beat_blowup, blowup_comparator, hillclimb, ClimbConfig, Move, RestartSummary, SearchState,
    StartKind, Strategy,
};
pub use exhaustive::{exact_search, ExactPartial, ExactResult, LevelStats};
pub use zykov::{best_pair, symmetrize, zykov_step, zykov_step_planned, ZykovOutcome, ZykovStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OptimizerError {
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("budget of {} colorings exhausted after level {}", .0.budget, .0.level)]
    BudgetExceeded(Box<ExactPartial>),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BlowupVerdict {
    Beaten,
    NotBeatenWithinBudget,
}

/// A host serialized as its non-∅ pairs, 1-indexed like the graph file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList(pub ColoredGraph);

impl Serialize for EdgeList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = &self.0;
        let edges: Vec<[usize; 3]> = g
            .pairs()
            .filter(|&(u, v)| !g.color(u, v).is_empty())
            .map(|(u, v)| [u + 1, v + 1, g.color(u, v).id()])
            .collect();
        let mut st = s.serialize_struct("Graph", 3)?;
        st.serialize_field("n", &g.n())?;
        st.serialize_field("palette", &g.palette())?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// `count / C(n, k)`, zero when `n < k`.
pub fn rho(count: u64, n: usize, k: usize) -> BigRational {
    let total = binomial(n as u64, k as u64);
    if total == 0 {
        BigRational::zero()
    } else {
        BigRational::new(count.into(), total.into())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub mode: &'static str,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ClimbConfig>,
    pub best_count: u64,
    #[serde(serialize_with = "ser_rat")]
    pub best_rho: BigRational,
    /// Count of the iterated blow-up of the pattern at the same `n`.
    pub comparator: u64,
    #[serde(serialize_with = "ser_rat")]
    pub comparator_rho: BigRational,
    /// Move evaluations over all restarts.
    pub iterations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_restart: Option<usize>,
    pub restarts: Vec<RestartSummary>,
    pub move_log: Vec<Move>,
    pub best_graph: EdgeList,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recount: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<BlowupVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}
