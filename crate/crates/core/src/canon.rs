//! Canonical forms and isomorphism for small colored complete graphs.
//!
//! The canonical code is the lexicographically smallest color sequence over
//! all labellings reachable by individualization-refinement. Pairs are listed
//! column by column (`(0,1), (0,2), (1,2), (0,3), ...`) so that fixing the
//! first `m` vertices fixes a prefix of the code, which is what the search
//! bounds against.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, ColoredGraph, Pattern};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("canonicalization limit exceeded: n={n} > {limit}")]
    LimitExceeded { n: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode {
    n: usize,
    colors: Vec<u16>,
}

impl CanonicalCode {
    /// `n` as one byte followed by each color as little-endian `u16`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 2 * self.colors.len());
        out.push(self.n as u8);
        for c in &self.colors {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self, palette: usize) -> ColoredGraph {
        let mut g = ColoredGraph::empty(self.n, palette);
        let mut it = self.colors.iter();
        for v in 1..self.n {
            for u in 0..v {
                g.set(u, v, Color(*it.next().unwrap()));
            }
        }
        g
    }
}

type Cells = Vec<Vec<usize>>;

/// Refines an ordered partition until every cell is equitable. Subcells are
/// ordered by their signature, so the result depends only on the isomorphism
/// type of `(g, cells)`.
fn refine(g: &ColoredGraph, mut cells: Cells) -> Cells {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u16)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<(usize, u16)> = (0..n)
                        .filter(|&u| u != v)
                        .map(|u| (cell_of[u], g.color(u, v).0))
                        .collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    best: Option<(Vec<u16>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Code of the first `m` vertices of `order`.
    fn prefix_code(&self, order: &[usize], m: usize) -> Vec<u16> {
        let mut code = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for v in 1..m {
            for u in 0..v {
                code.push(self.g.color(order[u], order[v]).0);
            }
        }
        code
    }

    fn visit(&mut self, cells: Cells, path: &mut Vec<usize>) {
        let fixed = cells.iter().take_while(|c| c.len() == 1).count();
        let leading: Vec<usize> = cells[..fixed].iter().map(|c| c[0]).collect();
        if let Some((best, _)) = &self.best {
            let prefix = self.prefix_code(&leading, fixed);
            if prefix.as_slice() > &best[..prefix.len()] {
                return;
            }
        }
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = self.prefix_code(&order, order.len());
            match &self.best {
                Some((best, best_order)) if code == *best => {
                    let mut gamma = vec![0; order.len()];
                    for p in 0..order.len() {
                        gamma[best_order[p]] = order[p];
                    }
                    self.automorphisms.push(gamma);
                }
                Some((best, _)) if code > *best => {}
                _ => self.best = Some((code, order)),
            }
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = cells[..target].to_vec();
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            let refined = refine(self.g, child);
            self.visit(refined, path);
            path.pop();
        }
    }

    /// Orbit test under the automorphisms found so far that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if path.iter().all(|&p| gamma[p] == p) {
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// Canonical code: equal codes exactly when the graphs are isomorphic.
pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalCode, CanonError> {
    let n = g.n();
    if n > CANON_LIMIT {
        return Err(CanonError::LimitExceeded { n, limit: CANON_LIMIT });
    }
    if n == 0 {
        return Ok(CanonicalCode { n, colors: Vec::new() });
    }
    let mut search = Search { g, best: None, automorphisms: Vec::new() };
    let start = refine(g, vec![(0..n).collect()]);
    search.visit(start, &mut Vec::new());
    let (colors, _) = search.best.expect("search reaches a leaf");
    Ok(CanonicalCode { n, colors })
}

/// Iterated neighborhood hashing; equal multisets are necessary for isomorphism.
fn vertex_invariants(g: &ColoredGraph) -> Vec<u64> {
    let n = g.n();
    let hash = |x: &dyn Fn(&mut DefaultHasher)| {
        let mut h = DefaultHasher::new();
        x(&mut h);
        h.finish()
    };
    let mut labels: Vec<u64> = (0..n)
        .map(|v| {
            let mut cd: Vec<u16> = (0..n).filter(|&u| u != v).map(|u| g.color(u, v).0).collect();
            cd.sort_unstable();
            hash(&|h| cd.hash(h))
        })
        .collect();
    for _ in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut sig: Vec<(u16, u64)> =
                    (0..n).filter(|&u| u != v).map(|u| (g.color(u, v).0, labels[u])).collect();
                sig.sort_unstable();
                hash(&|h| (labels[v], &sig).hash(h))
            })
            .collect();
        let classes = |l: &[u64]| {
            let mut s = l.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        let stable = classes(&next) == classes(&labels);
        labels = next;
        if stable {
            break;
        }
    }
    labels
}

fn backtrack_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    let n = g.n();
    let (lg, lh) = (vertex_invariants(g), vertex_invariants(h));
    let mut sg = lg.clone();
    let mut sh = lh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        g: &ColoredGraph,
        h: &ColoredGraph,
        lg: &[u64],
        lh: &[u64],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used[w] || lg[v] != lh[w] {
                continue;
            }
            if (0..v).all(|u| g.color(u, v) == h.color(map[u], w)) {
                map[v] = w;
                used[w] = true;
                if go(g, h, lg, lh, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    go(g, h, &lg, &lh, 0, &mut map, &mut used)
}

/// Color-preserving isomorphism test. Different sizes are simply not isomorphic.
pub fn are_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    if g.n() != h.n() {
        return false;
    }
    let mut cg: HashMap<u16, usize> = HashMap::new();
    let mut ch: HashMap<u16, usize> = HashMap::new();
    for (u, v) in g.pairs() {
        *cg.entry(g.color(u, v).0).or_default() += 1;
        *ch.entry(h.color(u, v).0).or_default() += 1;
    }
    if cg != ch {
        return false;
    }
    match (canonical_form(g), canonical_form(h)) {
        (Ok(a), Ok(b)) => a == b,
        _ => backtrack_isomorphic(g, h),
    }
}

/// Number of color-preserving permutations of the pattern's vertices.
pub fn automorphism_count(p: &Pattern) -> u64 {
    let k = p.k();
    let mut map = vec![0usize; k];
    let mut used = vec![false; k];
    fn go(p: &Pattern, i: usize, map: &mut [usize], used: &mut [bool]) -> u64 {
        if i == p.k() {
            return 1;
        }
        let mut total = 0;
        for j in 0..p.k() {
            if !used[j] && (0..i).all(|a| p.color(a, i) == p.color(map[a], j)) {
                used[j] = true;
                map[i] = j;
                total += go(p, i + 1, map, used);
                used[j] = false;
            }
        }
        total
    }
    go(p, 0, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_code_is_constant() {
        let code = canonical_form(&ColoredGraph::empty(3, 4)).unwrap();
        assert_eq!(code.to_bytes(), vec![3, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn relabelled_triangle_same_code() {
        let g = Pattern::rainbow_clique(3).as_graph().clone();
        let h = g.permuted(&[2, 0, 1]);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn shared_color_triangle_not_isomorphic_to_rainbow() {
        let g = Pattern::rainbow_clique(3).as_graph().clone();
        let h = ColoredGraph::from_pairs(3, 4, [(0, 1, Color(1)), (0, 2, Color(1)), (1, 2, Color(3))])
            .unwrap();
        assert!(!are_isomorphic(&g, &h));
    }

    #[test]
    fn limit_error() {
        let g = ColoredGraph::empty(17, 2);
        assert_eq!(
            canonical_form(&g),
            Err(CanonError::LimitExceeded { n: 17, limit: CANON_LIMIT })
        );
        assert!(are_isomorphic(&g, &g.permuted(&(0..17).rev().collect::<Vec<_>>())));
    }

    #[test]
    fn large_graphs_fall_back_to_backtracking() {
        let n = 18;
        let mut g = ColoredGraph::empty(n, 3);
        for (u, v) in g.clone().pairs() {
            g.set(u, v, Color(((u * 7 + v * 3) % 3) as u16));
        }
        let perm: Vec<usize> = (0..n).map(|v| (v * 5 + 1) % n).collect();
        assert!(are_isomorphic(&g, &g.permuted(&perm)));
        let mut h = g.permuted(&perm);
        let c = h.color(0, 1);
        h.set(0, 1, Color((c.0 + 1) % 3));
        assert!(!are_isomorphic(&g, &h));
    }

    #[test]
    fn automorphisms_of_small_patterns() {
        assert_eq!(automorphism_count(&Pattern::rainbow_clique(2)), 2);
        assert_eq!(automorphism_count(&Pattern::rainbow_path(3)), 1);
        assert_eq!(automorphism_count(&Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap()), 4);
    }
}
