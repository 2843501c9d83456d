//! Symmetrization: delete a low-degree vertex and duplicate a high-degree one.

use serde::Serialize;

use crate::counting::{count_copies_indexed, HostIndex, PatternPlan, RoleStats};
use crate::graph::{Color, ColoredGraph, Pattern};

/// One replacement of `y` by a twin of `x`, with the exact counts around it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZykovStep {
    pub x: usize,
    pub y: usize,
    pub d_x: u64,
    pub d_y: u64,
    pub d_xy: u64,
    /// `d(x) − d(y) − d(x, y)`.
    pub bound: i64,
    pub before: u64,
    pub after: u64,
}

impl ZykovStep {
    pub fn gain(&self) -> i64 {
        self.after as i64 - self.before as i64
    }

    /// Whether the recount reached the promised gain.
    pub fn is_sound(&self) -> bool {
        self.gain() >= self.bound
    }
}

#[derive(Clone, Debug)]
pub enum ZykovOutcome {
    Improved { step: ZykovStep, graph: ColoredGraph },
    NoImprovingPair,
}

/// Ordered pair maximizing `d(x) − d(y) − d(x, y)` in copies; ties go to the
/// lexicographically first pair.
pub fn best_pair(stats: &RoleStats) -> Option<(usize, usize, i64)> {
    let n = stats.n();
    let d: Vec<i64> = (0..n).map(|x| stats.copies_at(x) as i64).collect();
    let mut best: Option<(usize, usize, i64)> = None;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let g = d[x] - d[y] - stats.copies_at_pair(x, y) as i64;
            if best.is_none_or(|(_, _, b)| g > b) {
                best = Some((x, y, g));
            }
        }
    }
    best
}

/// Replaces `y` by a twin of `x` (the pair between them becomes ∅) and
/// recounts exactly.
pub fn symmetrize(plan: &PatternPlan, stats: &RoleStats, h: &ColoredGraph, x: usize, y: usize) -> (ZykovStep, ColoredGraph) {
    let (d_x, d_y, d_xy) = (stats.copies_at(x), stats.copies_at(y), stats.copies_at_pair(x, y));
    let g = h.replace_with_twin(x, y, Color::EMPTY);
    let after = count_copies_indexed(plan, &HostIndex::new(&g, plan.pattern().palette()));
    let step = ZykovStep {
        x,
        y,
        d_x,
        d_y,
        d_xy,
        bound: d_x as i64 - d_y as i64 - d_xy as i64,
        before: stats.copies(),
        after,
    };
    (step, g)
}

pub fn zykov_step_planned(plan: &PatternPlan, h: &ColoredGraph) -> ZykovOutcome {
    if h.n() < 2 {
        return ZykovOutcome::NoImprovingPair;
    }
    let stats = RoleStats::compute(plan, &HostIndex::new(h, plan.pattern().palette()));
    match best_pair(&stats) {
        Some((x, y, bound)) if bound > 0 => {
            let (step, graph) = symmetrize(plan, &stats, h, x, y);
            debug_assert!(step.is_sound(), "symmetrization lost copies: {step:?}");
            ZykovOutcome::Improved { step, graph }
        }
        _ => ZykovOutcome::NoImprovingPair,
    }
}

pub fn zykov_step(p: &Pattern, h: &ColoredGraph) -> ZykovOutcome {
    zykov_step_planned(&PatternPlan::new(p), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{plan_blowup, realize};
    use crate::counting::count_induced;

    #[test]
    fn balanced_blowup_has_no_improving_pair() {
        let k3 = Pattern::rainbow_clique(3);
        let h = realize(&plan_blowup(&k3, 6));
        assert!(matches!(zykov_step(&k3, &h), ZykovOutcome::NoImprovingPair));
    }

    #[test]
    fn starved_part_is_refilled() {
        let k3 = Pattern::rainbow_clique(3);
        // parts {0,1,2,3}, {4}, {5}
        let part = |v: usize| if v < 4 { 0 } else { v - 3 };
        let mut h = ColoredGraph::empty(6, 4);
        for u in 0..6 {
            for v in u + 1..6 {
                if part(u) != part(v) {
                    h.set(u, v, k3.color(part(u), part(v)));
                }
            }
        }
        assert_eq!(count_induced(&k3, &h), 4);
        let ZykovOutcome::Improved { step, graph } = zykov_step(&k3, &h) else {
            panic!("expected an improving pair");
        };
        assert!(step.bound > 0 && step.is_sound());
        assert_eq!(step.after, count_induced(&k3, &graph));
        assert!(step.after > 4);
    }

    #[test]
    fn tiny_hosts() {
        let k2 = Pattern::rainbow_clique(2);
        assert!(matches!(zykov_step(&k2, &ColoredGraph::empty(1, 2)), ZykovOutcome::NoImprovingPair));
    }
}
