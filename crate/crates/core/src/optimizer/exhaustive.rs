//! Exhaustive search over all colorings of a tiny host, one vertex at a time,
//! keeping one representative per isomorphism class.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::climb::blowup_comparator;
use super::{rho, EdgeList, OptimizerError};
use crate::canon::{canonical_form, CanonError, CanonicalCode, CANON_LIMIT};
use crate::counting::{binomial, count_copies_indexed, HostIndex, PatternPlan};
use crate::exact::ser_rat;
use crate::graph::{Color, ColoredGraph, Pattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelStats {
    pub vertices: usize,
    /// Colorings generated, before deduplication.
    pub generated: u64,
    pub classes: usize,
    pub pruned: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactResult {
    pub k: usize,
    pub n: usize,
    pub optimum: u64,
    #[serde(serialize_with = "ser_rat")]
    pub rho: BigRational,
    /// Blow-up count used as the starting lower bound.
    pub comparator: u64,
    pub witness_count: usize,
    /// One canonical representative per extremal class.
    pub witnesses: Vec<EdgeList>,
    pub levels: Vec<LevelStats>,
    pub nodes: u64,
}

/// What was known when the node budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactPartial {
    pub k: usize,
    pub n: usize,
    pub budget: u64,
    pub nodes: u64,
    /// Vertices in the last completed level.
    pub level: usize,
    pub lower_bound: u64,
    /// Largest completion bound over the surviving frontier.
    pub upper_bound: u64,
    pub levels: Vec<LevelStats>,
}

/// Canonical codes of every induced subgraph of the pattern, by size.
fn pattern_pieces(p: &Pattern) -> Result<Vec<HashSet<CanonicalCode>>, CanonError> {
    (0..p.k())
        .map(|s| (0..p.k()).combinations(s).map(|t| canonical_form(&p.as_graph().induced(&t))).collect())
        .collect()
}

/// Copies inside `g` plus, for every `j ≥ 1`, `C(n − m, j)` times the number
/// of `(k − j)`-subsets of `g` that look like part of the pattern: every such
/// subset is assumed to complete with every choice of `j` new vertices.
fn completion_bound(
    plan: &PatternPlan,
    pieces: &[HashSet<CanonicalCode>],
    g: &ColoredGraph,
    n: usize,
) -> Result<u64, CanonError> {
    let (m, k) = (g.n(), plan.pattern().k());
    let mut bound = count_copies_indexed(plan, &HostIndex::new(g, plan.pattern().palette()));
    for j in 1..=k.min(n - m) {
        let s = k - j;
        if s > m {
            continue;
        }
        let mut consistent = 0u64;
        for sub in (0..m).combinations(s) {
            if pieces[s].contains(&canonical_form(&g.induced(&sub))?) {
                consistent += 1;
            }
        }
        bound += binomial((n - m) as u64, j as u64) * consistent;
    }
    Ok(bound)
}

/// Children of `g`: a new last vertex joined in every possible way.
fn extend(g: &ColoredGraph, palette: usize) -> Result<Vec<CanonicalCode>, CanonError> {
    let m = g.n();
    let mut child = ColoredGraph::empty(m + 1, palette);
    for (u, v) in g.pairs() {
        child.set(u, v, g.color(u, v));
    }
    let total = (palette as u64).pow(m as u32);
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut rest = code;
        for u in 0..m {
            child.set(u, m, Color((rest % palette as u64) as u16));
            rest /= palette as u64;
        }
        out.push(canonical_form(&child)?);
    }
    Ok(out)
}

/// Exact `I(P, n)` with every extremal coloring up to isomorphism. Colors
/// range over the pattern palette. A frontier class is cut when its
/// completion bound falls below the best known count, so ties survive and
/// the witness list is complete. `budget` caps the number of colorings
/// generated.
pub fn exact_search(p: &Pattern, n: usize, budget: u64) -> Result<ExactResult, OptimizerError> {
    if n > CANON_LIMIT {
        return Err(CanonError::LimitExceeded { n, limit: CANON_LIMIT }.into());
    }
    let plan = PatternPlan::new(p);
    let palette = p.palette();
    let pieces = pattern_pieces(p)?;
    let comparator = if n >= 1 { blowup_comparator(p, n) } else { 0 };
    let mut frontier: Vec<CanonicalCode> = vec![canonical_form(&ColoredGraph::empty(n.min(1), palette))?];
    let mut levels = Vec::new();
    let mut nodes = 0u64;
    for m in 1..n {
        let generated = frontier.len() as u64 * (palette as u64).pow(m as u32);
        if nodes + generated > budget {
            let upper = frontier
                .par_iter()
                .map(|c| completion_bound(&plan, &pieces, &c.to_graph(palette), n))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            return Err(OptimizerError::BudgetExceeded(Box::new(ExactPartial {
                k: p.k(),
                n,
                budget,
                nodes,
                level: m,
                lower_bound: comparator,
                upper_bound: upper.max(comparator),
                levels,
            })));
        }
        nodes += generated;
        let children: BTreeSet<CanonicalCode> = frontier
            .par_iter()
            .map(|c| extend(&c.to_graph(palette), palette))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        let classes = children.len();
        let kept: Vec<CanonicalCode> = children
            .into_par_iter()
            .map(|c| completion_bound(&plan, &pieces, &c.to_graph(palette), n).map(|b| (c, b)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|(_, b)| *b >= comparator)
            .map(|(c, _)| c)
            .collect();
        levels.push(LevelStats { vertices: m + 1, generated, classes, pruned: classes - kept.len() });
        frontier = kept;
    }
    let counted: Vec<(CanonicalCode, u64)> = frontier
        .into_par_iter()
        .map(|c| {
            let g = c.to_graph(palette);
            let count = count_copies_indexed(&plan, &HostIndex::new(&g, palette));
            (c, count)
        })
        .collect();
    let optimum = counted.iter().map(|(_, c)| *c).max().unwrap_or(0);
    let witnesses: Vec<EdgeList> = counted
        .iter()
        .filter(|(_, c)| *c == optimum)
        .map(|(code, _)| EdgeList(code.to_graph(palette)))
        .collect();
    Ok(ExactResult {
        k: p.k(),
        n,
        optimum,
        rho: rho(optimum, n, p.k()),
        comparator,
        witness_count: witnesses.len(),
        witnesses,
        levels,
        nodes,
    })
}
