//! Edge-colored complete graphs and rainbow patterns.
//!
//! Every pair of distinct vertices carries a [`Color`]; color `0` is the empty
//! color (a non-edge). Patterns are stored in the same complete-graph view:
//! edge `e` (in insertion order) gets color `e + 1`, all other pairs get `0`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A color id. `Color::EMPTY` (id 0) marks a non-edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Color(pub u16);

impl Color {
    pub const EMPTY: Color = Color(0);

    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "c{}", self.0)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("pattern needs at least 2 vertices, got k={0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range for {size} vertices")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate pair {{{0}, {1}}}")]
    DuplicatePair(usize, usize),
    #[error("color {0} used on more than one edge; pattern is not rainbow")]
    DuplicateColor(u16),
    #[error("color {color} does not fit palette of size {palette}")]
    ColorOutOfPalette { color: u16, palette: usize },
    #[error("edge colors must be 1..=|E| and nonzero, got {0}")]
    BadEdgeColor(u16),
    #[error("palette must contain the empty color")]
    EmptyPalette,
}

/// A `palette`-colored complete graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredGraph {
    n: usize,
    palette: usize,
    colors: Vec<Color>,
}

impl ColoredGraph {
    /// All pairs colored ∅.
    pub fn empty(n: usize, palette: usize) -> Self {
        ColoredGraph {
            n,
            palette: palette.max(1),
            colors: vec![Color::EMPTY; n * n],
        }
    }

    /// Builds a graph from `(u, v, color)` triples; omitted pairs are ∅.
    pub fn from_pairs(
        n: usize,
        palette: usize,
        pairs: impl IntoIterator<Item = (usize, usize, Color)>,
    ) -> Result<Self, GraphError> {
        if palette == 0 {
            return Err(GraphError::EmptyPalette);
        }
        let mut g = ColoredGraph::empty(n, palette);
        let mut seen = HashSet::new();
        for (u, v, c) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, size: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if c.id() >= palette {
                return Err(GraphError::ColorOutOfPalette { color: c.0, palette });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicatePair(u.min(v), u.max(v)));
            }
            g.set(u, v, c);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v, "diagonal is never queried");
        self.colors[u * self.n + v]
    }

    /// Sets the color of `{u, v}`. Panics if the color does not fit the palette.
    pub fn set(&mut self, u: usize, v: usize, c: Color) {
        assert!(u != v && u < self.n && v < self.n);
        assert!(c.id() < self.palette, "color {} outside palette {}", c.0, self.palette);
        self.colors[u * self.n + v] = c;
        self.colors[v * self.n + u] = c;
    }

    /// Unordered pairs `u < v` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Number of pairs at `x` carrying color `c`.
    pub fn color_degree(&self, x: usize, c: Color) -> usize {
        (0..self.n).filter(|&y| y != x && self.color(x, y) == c).count()
    }

    /// Colored graph with vertices relabelled: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = ColoredGraph::empty(self.n, self.palette);
        for (u, v) in self.pairs() {
            g.set(perm[u], perm[v], self.color(u, v));
        }
        g
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> ColoredGraph {
        let mut g = ColoredGraph::empty(vertices.len(), self.palette);
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                g.set(a, b, self.color(vertices[a], vertices[b]));
            }
        }
        g
    }

    /// Removes vertex `y` and adds a twin of `x`. The twin takes `y`'s index,
    /// copies every color of `x`, and the pair `{x, twin}` gets `twin_color`.
    pub fn replace_with_twin(&self, x: usize, y: usize, twin_color: Color) -> ColoredGraph {
        assert!(x != y);
        let mut g = self.clone();
        for z in 0..self.n {
            if z != x && z != y {
                g.set(y, z, self.color(x, z));
            }
        }
        g.set(x, y, twin_color);
        g
    }

    /// Number of pairs with a non-∅ color.
    pub fn edge_count(&self) -> usize {
        self.pairs().filter(|&(u, v)| !self.color(u, v).is_empty()).count()
    }
}

/// A rainbow pattern: `k` vertices and an edge list; edge `e` has color `e + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    k: usize,
    edges: Vec<(usize, usize)>,
    view: ColoredGraph,
}

impl Pattern {
    /// Colors are assigned `1..=|E|` in the order given.
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let colored: Vec<_> = edges
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| (u, v, Color(e as u16 + 1)))
            .collect();
        Self::with_colors(k, &colored)
    }

    /// Explicit edge colors. They must be a permutation of `1..=|E|`.
    pub fn with_colors(k: usize, edges: &[(usize, usize, Color)]) -> Result<Self, GraphError> {
        if k < 2 {
            return Err(GraphError::TooFewVertices(k));
        }
        let m = edges.len();
        let mut used = vec![false; m + 1];
        for &(_, _, c) in edges {
            if c.is_empty() || c.id() > m {
                return Err(GraphError::BadEdgeColor(c.0));
            }
            if std::mem::replace(&mut used[c.id()], true) {
                return Err(GraphError::DuplicateColor(c.0));
            }
        }
        let view = ColoredGraph::from_pairs(k, m + 1, edges.iter().copied())?;
        let mut ordered = vec![(0, 0); m];
        for &(u, v, c) in edges {
            ordered[c.id() - 1] = (u.min(v), u.max(v));
        }
        Ok(Pattern { k, edges: ordered, view })
    }

    /// Rainbow clique `K_k` with edges in lexicographic order.
    pub fn rainbow_clique(k: usize) -> Self {
        let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        Self::from_edges(k, &edges).expect("clique is well-formed")
    }

    pub fn rainbow_path(k: usize) -> Self {
        let edges: Vec<_> = (0..k.saturating_sub(1)).map(|u| (u, u + 1)).collect();
        Self::from_edges(k, &edges).expect("path is well-formed")
    }

    pub fn rainbow_cycle(k: usize) -> Self {
        let mut edges: Vec<_> = (0..k - 1).map(|u| (u, u + 1)).collect();
        edges.push((0, k - 1));
        Self::from_edges(k, &edges).expect("cycle is well-formed")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges in color order: `edges()[e]` has color `e + 1`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `|E| + 1`.
    pub fn palette(&self) -> usize {
        self.edges.len() + 1
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        self.view.color(i, j)
    }

    /// The complete-graph view with ∅ on non-edges.
    pub fn as_graph(&self) -> &ColoredGraph {
        &self.view
    }

    /// Endpoints of the edge colored `c`, or `None` for ∅ and foreign colors.
    pub fn endpoints(&self, c: Color) -> Option<(usize, usize)> {
        if c.is_empty() {
            None
        } else {
            self.edges.get(c.id() - 1).copied()
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == i || v == i).count()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.k).filter(|&j| j != i && !self.color(i, j).is_empty()).collect()
    }

    pub fn is_clique(&self) -> bool {
        self.edges.len() == self.k * (self.k - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components over edges only, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k];
        let mut out = Vec::new();
        for s in 0..self.k {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Pattern induced on `vertices`, keeping edge order but renumbering colors.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Pattern, GraphError> {
        let pos = |v: usize| vertices.iter().position(|&w| w == v);
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((pos(u)?, pos(v)?)))
            .collect();
        Pattern::from_edges(vertices.len(), &edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub k: usize,
    pub rainbow: bool,
    pub connected: bool,
    pub min_degree: usize,
    pub edges: usize,
}

/// Re-checks the structural facts of a pattern without mutating it.
pub fn validate_pattern(p: &Pattern) -> ValidationReport {
    let mut colors = HashSet::new();
    let rainbow = p
        .edges()
        .iter()
        .all(|&(u, v)| colors.insert(p.color(u, v)) && !p.color(u, v).is_empty());
    ValidationReport {
        k: p.k(),
        rainbow,
        connected: p.is_connected(),
        min_degree: (0..p.k()).map(|i| p.degree(i)).min().unwrap_or(0),
        edges: p.edges().len(),
    }
}

/// BFS layers of a pattern vertex. Paths never use ∅ pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub source: usize,
    /// `None` for vertices in another component.
    pub dist: Vec<Option<usize>>,
    /// `layers[r - 1]` is the number of vertices at distance `r`.
    pub layers: Vec<usize>,
    pub eccentricity: usize,
}

impl DistanceProfile {
    /// Vertices at distance `r >= 1`.
    pub fn layer(&self, r: usize) -> usize {
        if r == 0 {
            1
        } else {
            self.layers.get(r - 1).copied().unwrap_or(0)
        }
    }
}

pub fn distance_profile(p: &Pattern, source: usize) -> DistanceProfile {
    assert!(source < p.k(), "source vertex out of range");
    let mut dist = vec![None; p.k()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in p.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    let eccentricity = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut layers = vec![0; eccentricity];
    for d in dist.iter().flatten().filter(|&&d| d > 0) {
        layers[d - 1] += 1;
    }
    DistanceProfile { source, dist, layers, eccentricity }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let k3 = validate_pattern(&Pattern::rainbow_clique(3));
        assert!(k3.rainbow && k3.connected);
        assert_eq!(k3.min_degree, 2);

        let two_k2 = validate_pattern(&Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        assert!(!two_k2.connected);
        assert_eq!(two_k2.min_degree, 1);

        let p3 = validate_pattern(&Pattern::rainbow_path(3));
        assert!(p3.connected);
        assert_eq!(p3.min_degree, 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Pattern::from_edges(1, &[]), Err(GraphError::TooFewVertices(1)));
        assert_eq!(
            Pattern::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicatePair(0, 1))
        );
        assert_eq!(
            Pattern::with_colors(3, &[(0, 1, Color(1)), (1, 2, Color(1))]),
            Err(GraphError::DuplicateColor(1))
        );
        assert!(matches!(
            Pattern::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(Pattern::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn palette_includes_empty_even_for_cliques() {
        assert_eq!(Pattern::rainbow_clique(4).palette(), 7);
        assert_eq!(Pattern::rainbow_clique(2).palette(), 2);
    }

    #[test]
    fn distance_examples() {
        let d = distance_profile(&Pattern::rainbow_clique(4), 0);
        assert_eq!((d.layers.clone(), d.eccentricity), (vec![3], 1));

        let d = distance_profile(&Pattern::rainbow_path(3), 0);
        assert_eq!((d.layers.clone(), d.eccentricity), (vec![1, 1], 2));

        let d = distance_profile(&Pattern::rainbow_cycle(5), 0);
        assert_eq!((d.layers.clone(), d.eccentricity), (vec![2, 2], 2));
        assert_eq!(d.layer(1), 2);
    }

    #[test]
    fn disconnected_profile_marks_unreachable() {
        let p = Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = distance_profile(&p, 0);
        assert_eq!(d.dist, vec![Some(0), Some(1), None, None]);
        assert_eq!(d.layers, vec![1]);
    }

    #[test]
    fn twin_replacement_copies_colors() {
        let p = Pattern::rainbow_path(4);
        let g = p.as_graph().replace_with_twin(1, 3, Color::EMPTY);
        assert_eq!(g.color(3, 0), p.color(1, 0));
        assert_eq!(g.color(3, 2), p.color(1, 2));
        assert_eq!(g.color(1, 3), Color::EMPTY);
    }

    #[test]
    fn graph_rejects_bad_pairs() {
        assert!(matches!(
            ColoredGraph::from_pairs(3, 2, [(0, 1, Color(2))]),
            Err(GraphError::ColorOutOfPalette { .. })
        ));
        assert!(matches!(
            ColoredGraph::from_pairs(3, 2, [(0, 1, Color(1)), (1, 0, Color(1))]),
            Err(GraphError::DuplicatePair(0, 1))
        ));
    }
}
