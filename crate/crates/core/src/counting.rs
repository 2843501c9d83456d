//! Exact induced-copy counting and the per-vertex statistics built on it.
//!
//! Embeddings are found by backtracking over pattern roles. The candidates for
//! a role are the intersection of one color row per already placed role (∅
//! included, so injectivity and induced-ness come for free) with a prefilter on
//! color degrees. Copies are embeddings divided by the automorphism count.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{iter_words, popcount, words_for, BitSet};
use crate::canon::{automorphism_count, canonical_form};
use crate::graph::{Color, ColoredGraph, Pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("identical vertices {0} and {0}")]
    IdenticalVertices(usize),
    #[error("vertex {vertex} out of range for host on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Static role order and the color constraints each role sees.
#[derive(Clone, Debug)]
struct RoleOrder {
    roles: Vec<usize>,
    /// For position `p`: `(earlier position, required color)`.
    constraints: Vec<Vec<(usize, Color)>>,
}

impl RoleOrder {
    /// `prefix` first, then greedily the role with most non-∅ links to placed
    /// roles, ties by pattern degree and then index.
    fn new(p: &Pattern, prefix: &[usize]) -> Self {
        let k = p.k();
        let mut roles: Vec<usize> = prefix.to_vec();
        if roles.is_empty() {
            let first = (0..k).max_by_key(|&i| (p.degree(i), std::cmp::Reverse(i))).unwrap();
            roles.push(first);
        }
        while roles.len() < k {
            let next = (0..k)
                .filter(|i| !roles.contains(i))
                .max_by_key(|&i| {
                    let links = roles.iter().filter(|&&r| !p.color(r, i).is_empty()).count();
                    (links, p.degree(i), std::cmp::Reverse(i))
                })
                .unwrap();
            roles.push(next);
        }
        let constraints = (0..k)
            .map(|pos| (0..pos).map(|q| (q, p.color(roles[q], roles[pos]))).collect())
            .collect();
        RoleOrder { roles, constraints }
    }
}

/// Pattern-side precomputation, reusable across hosts.
#[derive(Clone, Debug)]
pub struct PatternPlan {
    pattern: Pattern,
    automorphisms: u64,
    order: RoleOrder,
    /// Per role: how many pattern pairs at that role carry each color.
    requirements: Vec<Vec<(Color, u32)>>,
    single: Vec<RoleOrder>,
    pairs: HashMap<(usize, usize), RoleOrder>,
}

impl PatternPlan {
    pub fn new(p: &Pattern) -> Self {
        let k = p.k();
        let requirements = (0..k)
            .map(|i| {
                let mut req: HashMap<Color, u32> = HashMap::new();
                for j in (0..k).filter(|&j| j != i) {
                    *req.entry(p.color(i, j)).or_default() += 1;
                }
                let mut req: Vec<_> = req.into_iter().collect();
                req.sort();
                req
            })
            .collect();
        let single = (0..k).map(|i| RoleOrder::new(p, &[i])).collect();
        let pairs = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), RoleOrder::new(p, &[i, j])))
            .collect();
        PatternPlan {
            pattern: p.clone(),
            automorphisms: automorphism_count(p),
            order: RoleOrder::new(p, &[]),
            requirements,
            single,
            pairs,
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }
}

/// Host-side index: one bit row per (color, vertex), updated in place on recolor.
#[derive(Clone, Debug)]
pub struct HostIndex {
    n: usize,
    words: usize,
    palette: usize,
    rows: Vec<u64>,
    degree: Vec<u32>,
    graph: ColoredGraph,
}

impl HostIndex {
    /// Only colors below `palette` are indexed; other colors never match.
    pub fn new(h: &ColoredGraph, palette: usize) -> Self {
        let n = h.n();
        let words = words_for(n);
        let mut idx = HostIndex {
            n,
            words,
            palette,
            rows: vec![0; palette * n * words],
            degree: vec![0; n * palette],
            graph: h.clone(),
        };
        for (u, v) in h.pairs() {
            idx.link(u, v, h.color(u, v), true);
        }
        idx
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, c: Color, v: usize) -> &[u64] {
        let start = (c.id() * self.n + v) * self.words;
        &self.rows[start..start + self.words]
    }

    fn link(&mut self, u: usize, v: usize, c: Color, on: bool) {
        if c.id() >= self.palette {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.rows[(c.id() * self.n + a) * self.words + (b >> 6)];
            let bit = 1u64 << (b & 63);
            if on {
                *w |= bit;
                self.degree[a * self.palette + c.id()] += 1;
            } else {
                *w &= !bit;
                self.degree[a * self.palette + c.id()] -= 1;
            }
        }
    }

    /// Recolors `{u, v}` and keeps rows, degrees and the graph in sync.
    pub fn recolor(&mut self, u: usize, v: usize, c: Color) {
        let old = self.graph.color(u, v);
        if old == c {
            return;
        }
        self.link(u, v, old, false);
        self.link(u, v, c, true);
        self.graph.set(u, v, c);
    }

    fn feasible(&self, plan: &PatternPlan, role: usize, x: usize) -> bool {
        plan.requirements[role]
            .iter()
            .all(|&(c, need)| c.id() < self.palette && self.degree[x * self.palette + c.id()] >= need)
    }
}

struct Kernel<'a> {
    idx: &'a HostIndex,
    order: &'a RoleOrder,
    feasible: Vec<Vec<u64>>,
    scratch: Vec<Vec<u64>>,
    assign: Vec<usize>,
}

impl<'a> Kernel<'a> {
    fn new(plan: &'a PatternPlan, idx: &'a HostIndex, order: &'a RoleOrder) -> Self {
        let k = plan.pattern.k();
        let feasible = order
            .roles
            .iter()
            .map(|&role| {
                let mut w = vec![0u64; idx.words];
                for x in 0..idx.n {
                    if idx.feasible(plan, role, x) {
                        w[x >> 6] |= 1 << (x & 63);
                    }
                }
                w
            })
            .collect();
        Kernel {
            idx,
            order,
            feasible,
            scratch: vec![vec![0; idx.words]; k],
            assign: vec![usize::MAX; k],
        }
    }

    fn is_feasible(&self, pos: usize, x: usize) -> bool {
        self.feasible[pos][x >> 6] >> (x & 63) & 1 == 1
    }

    /// Candidate set for position `pos` given the placements before it.
    fn fill(&mut self, pos: usize) {
        let (head, tail) = self.scratch.split_at_mut(pos);
        let _ = head;
        let out = &mut tail[0];
        out.copy_from_slice(&self.feasible[pos]);
        for &(q, c) in &self.order.constraints[pos] {
            let x = self.assign[self.order.roles[q]];
            if c.id() >= self.idx.palette {
                out.iter_mut().for_each(|w| *w = 0);
                return;
            }
            for (o, r) in out.iter_mut().zip(self.idx.row(c, x)) {
                *o &= r;
            }
        }
    }

    fn place(&mut self, pos: usize, x: usize) {
        self.assign[self.order.roles[pos]] = x;
    }

    /// Whether the placements at positions `< upto` are mutually consistent.
    fn consistent(&self, upto: usize) -> bool {
        let g = &self.idx.graph;
        (0..upto).all(|p| {
            self.is_feasible(p, self.assign[self.order.roles[p]])
                && self.order.constraints[p].iter().all(|&(q, c)| {
                    let (x, y) = (self.assign[self.order.roles[p]], self.assign[self.order.roles[q]]);
                    x != y && g.color(x, y) == c
                })
        })
    }

    fn count_from(&mut self, pos: usize) -> u64 {
        let k = self.order.roles.len();
        if pos == k {
            return 1;
        }
        self.fill(pos);
        if pos + 1 == k {
            return popcount(&self.scratch[pos]);
        }
        let cand = self.scratch[pos].clone();
        let mut total = 0;
        for x in iter_words(&cand) {
            self.place(pos, x);
            total += self.count_from(pos + 1);
        }
        total
    }

    fn visit_from<F: FnMut(&[usize])>(&mut self, pos: usize, f: &mut F) {
        let k = self.order.roles.len();
        if pos == k {
            f(&self.assign);
            return;
        }
        self.fill(pos);
        let cand = self.scratch[pos].clone();
        for x in iter_words(&cand) {
            self.place(pos, x);
            self.visit_from(pos + 1, f);
        }
    }
}

/// Embeddings `φ: [k] → V(H)` counted with the given prefix roles pinned.
fn count_pinned(plan: &PatternPlan, idx: &HostIndex, order: &RoleOrder, pinned: &[usize]) -> u64 {
    let k = plan.pattern.k();
    if k > idx.n {
        return 0;
    }
    let mut kernel = Kernel::new(plan, idx, order);
    for (pos, &x) in pinned.iter().enumerate() {
        kernel.place(pos, x);
    }
    if !kernel.consistent(pinned.len()) {
        return 0;
    }
    kernel.count_from(pinned.len())
}

/// Number of embeddings of the pattern into the host.
pub fn count_embeddings_indexed(plan: &PatternPlan, idx: &HostIndex) -> u64 {
    let k = plan.pattern.k();
    if k > idx.n {
        return 0;
    }
    let probe = Kernel::new(plan, idx, &plan.order);
    let starts: Vec<usize> = iter_words(&probe.feasible[0]).collect();
    starts
        .into_par_iter()
        .map(|x| {
            let mut kernel = Kernel::new(plan, idx, &plan.order);
            kernel.place(0, x);
            kernel.count_from(1)
        })
        .sum()
}

/// Induced copies, i.e. `k`-subsets inducing the pattern.
pub fn count_copies_indexed(plan: &PatternPlan, idx: &HostIndex) -> u64 {
    count_embeddings_indexed(plan, idx) / plan.automorphisms
}

/// `I(P, H)`; zero when `k > n`.
pub fn count_induced(p: &Pattern, h: &ColoredGraph) -> u64 {
    let plan = PatternPlan::new(p);
    count_copies_indexed(&plan, &HostIndex::new(h, p.palette()))
}

/// Copies containing both `u` and `v` in the current host.
pub fn copies_through_pair(plan: &PatternPlan, idx: &HostIndex, u: usize, v: usize) -> u64 {
    let c = idx.graph.color(u, v);
    let embeddings: u64 = plan
        .pairs
        .iter()
        .filter(|(&(i, j), _)| plan.pattern.color(i, j) == c)
        .map(|(_, order)| count_pinned(plan, idx, order, &[u, v]))
        .sum();
    embeddings / plan.automorphisms
}

/// Embeddings with `φ(role) = x`, i.e. `d_role(x)`.
pub fn role_degree(plan: &PatternPlan, idx: &HostIndex, role: usize, x: usize) -> u64 {
    count_pinned(plan, idx, &plan.single[role], &[x])
}

/// Calls `f` once per embedding with the assignment indexed by role.
pub fn for_each_embedding<F: FnMut(&[usize])>(plan: &PatternPlan, idx: &HostIndex, mut f: F) {
    if plan.pattern.k() > idx.n {
        return;
    }
    let mut kernel = Kernel::new(plan, idx, &plan.order);
    kernel.visit_from(0, &mut f);
}

/// An embedding of the pattern into the host; `phi[i]` is the image of role `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Embedding {
    pub phi: Vec<usize>,
}

/// Lazily enumerates all embeddings, each exactly once.
pub struct Embeddings<'a> {
    kernel: Kernel<'a>,
    cursors: Vec<Vec<usize>>,
    depth: usize,
    done: bool,
}

impl<'a> Embeddings<'a> {
    pub fn new(plan: &'a PatternPlan, idx: &'a HostIndex) -> Self {
        let done = plan.pattern.k() > idx.n;
        let mut kernel = Kernel::new(plan, idx, &plan.order);
        let mut cursors = Vec::new();
        if !done {
            kernel.fill(0);
            let mut first: Vec<usize> = iter_words(&kernel.scratch[0]).collect();
            first.reverse();
            cursors.push(first);
        }
        Embeddings { kernel, cursors, depth: 0, done }
    }
}

impl Iterator for Embeddings<'_> {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let k = self.kernel.order.roles.len();
        loop {
            let Some(x) = self.cursors[self.depth].pop() else {
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.cursors.pop();
                self.depth -= 1;
                continue;
            };
            self.kernel.place(self.depth, x);
            if self.depth + 1 == k {
                return Some(Embedding { phi: self.kernel.assign.clone() });
            }
            self.depth += 1;
            self.kernel.fill(self.depth);
            let mut next: Vec<usize> = iter_words(&self.kernel.scratch[self.depth]).collect();
            next.reverse();
            self.cursors.push(next);
        }
    }
}

/// Streams every embedding; the count is `I(P, H) · |Aut(P)|`.
pub fn enumerate_embeddings(p: &Pattern, h: &ColoredGraph) -> Vec<Embedding> {
    let plan = PatternPlan::new(p);
    let idx = HostIndex::new(h, p.palette());
    Embeddings::new(&plan, &idx).collect()
}

/// Distinct copies as sorted vertex sets, in lexicographic order.
pub fn enumerate_copies(plan: &PatternPlan, idx: &HostIndex) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_embedding(plan, idx, |phi| {
        let mut s = phi.to_vec();
        s.sort_unstable();
        out.push(s);
    });
    out.sort_unstable();
    out.dedup();
    out
}

/// Subset-enumeration oracle: tests every `k`-subset for isomorphism with the pattern.
pub fn count_induced_by_subsets(p: &Pattern, h: &ColoredGraph) -> u64 {
    let k = p.k();
    if k > h.n() {
        return 0;
    }
    let mut want: Vec<u16> = p.as_graph().pairs().map(|(u, v)| p.color(u, v).0).collect();
    want.sort_unstable();
    let target = canonical_form(p.as_graph()).ok();
    (0..h.n())
        .combinations(k)
        .filter(|s| {
            let mut have: Vec<u16> =
                s.iter().tuple_combinations().map(|(&a, &b)| h.color(a, b).0).collect();
            have.sort_unstable();
            if have != want {
                return false;
            }
            let sub = h.induced(s);
            match &target {
                Some(t) => canonical_form(&sub).ok().as_ref() == Some(t),
                None => crate::canon::are_isomorphic(&sub, p.as_graph()),
            }
        })
        .count() as u64
}

/// Role statistics of every host vertex, from one enumeration pass.
#[derive(Clone, Debug)]
pub struct RoleStats {
    n: usize,
    k: usize,
    palette: usize,
    automorphisms: u64,
    embeddings: u64,
    role_degree: Vec<u64>,
    co_role: Vec<BitSet>,
    role_nbhd: Vec<BitSet>,
    pair_role: Vec<u64>,
    color_degree: Vec<usize>,
    neighbors: Vec<BitSet>,
}

impl RoleStats {
    pub fn compute(plan: &PatternPlan, idx: &HostIndex) -> Self {
        let (n, k) = (idx.n, plan.pattern.k());
        let h = &idx.graph;
        let palette = h.palette().max(plan.pattern.palette());
        let mut stats = RoleStats {
            n,
            k,
            palette,
            automorphisms: plan.automorphisms,
            embeddings: 0,
            role_degree: vec![0; n * k],
            co_role: vec![BitSet::new(n); n * k * k],
            role_nbhd: vec![BitSet::new(n); n * k],
            pair_role: vec![0; n * k * n],
            color_degree: vec![0; n * palette],
            neighbors: vec![BitSet::new(n); n],
        };
        for (u, v) in h.pairs() {
            let c = h.color(u, v);
            stats.color_degree[u * palette + c.id()] += 1;
            stats.color_degree[v * palette + c.id()] += 1;
            if !c.is_empty() {
                stats.neighbors[u].insert(v);
                stats.neighbors[v].insert(u);
            }
        }
        for_each_embedding(plan, idx, |phi| {
            stats.embeddings += 1;
            for (i, &x) in phi.iter().enumerate() {
                stats.role_degree[x * k + i] += 1;
                for (j, &y) in phi.iter().enumerate() {
                    if i != j {
                        stats.co_role[(x * k + i) * k + j].insert(y);
                        stats.role_nbhd[x * k + i].insert(y);
                        stats.pair_role[(x * k + i) * n + y] += 1;
                    }
                }
            }
        });
        stats
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn embeddings(&self) -> u64 {
        self.embeddings
    }

    pub fn copies(&self) -> u64 {
        self.embeddings / self.automorphisms
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }

    /// `d_i(x)`: embeddings with `φ(i) = x`.
    pub fn d_role(&self, x: usize, i: usize) -> u64 {
        self.role_degree[x * self.k + i]
    }

    /// `Σ_i d_i(x)` in embedding units.
    pub fn d(&self, x: usize) -> u64 {
        (0..self.k).map(|i| self.d_role(x, i)).sum()
    }

    /// Copies containing `x`.
    pub fn copies_at(&self, x: usize) -> u64 {
        self.d(x) / self.automorphisms
    }

    /// Copies containing both `x` and `y`.
    pub fn copies_at_pair(&self, x: usize, y: usize) -> u64 {
        (0..self.k).map(|i| self.pair_role[(x * self.k + i) * self.n + y]).sum::<u64>()
            / self.automorphisms
    }

    /// Embeddings with `φ(i) = x` whose image contains `y`.
    pub fn role_pair(&self, x: usize, i: usize, y: usize) -> u64 {
        self.pair_role[(x * self.k + i) * self.n + y]
    }

    /// `N_i(x)`.
    pub fn nbhd(&self, x: usize, i: usize) -> &BitSet {
        &self.role_nbhd[x * self.k + i]
    }

    /// `N_i^j(x)`.
    pub fn co_nbhd(&self, x: usize, i: usize, j: usize) -> &BitSet {
        &self.co_role[(x * self.k + i) * self.k + j]
    }

    /// `d_c(x)`; `Color::EMPTY` gives the non-edge degree.
    pub fn color_degree(&self, x: usize, c: Color) -> usize {
        if c.id() >= self.palette {
            0
        } else {
            self.color_degree[x * self.palette + c.id()]
        }
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    /// `B(x)`: neighbors through non-∅ pairs.
    pub fn neighbors(&self, x: usize) -> &BitSet {
        &self.neighbors[x]
    }

    /// Roles sorted by `|N_i(x)|` descending, ties by index.
    pub fn roles_by_nbhd(&self, x: usize) -> Vec<usize> {
        let mut roles: Vec<usize> = (0..self.k).collect();
        roles.sort_by_key(|&i| (std::cmp::Reverse(self.nbhd(x, i).len()), i));
        roles
    }

    /// `|Z(x)|`, the size of the second largest `N_i(x)`.
    pub fn second_largest(&self, x: usize) -> usize {
        let roles = self.roles_by_nbhd(x);
        roles.get(1).map_or(0, |&i| self.nbhd(x, i).len())
    }

    pub fn max_second_largest(&self) -> usize {
        (0..self.n).map(|x| self.second_largest(x)).max().unwrap_or(0)
    }
}

pub fn role_stats(p: &Pattern, h: &ColoredGraph) -> RoleStats {
    RoleStats::compute(&PatternPlan::new(p), &HostIndex::new(h, p.palette()))
}

fn ratio(a: u64, b: u64) -> BigRational {
    if b == 0 {
        BigRational::from_integer(BigInt::from(0))
    } else {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Host-wide densities.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalStats {
    pub copies: u64,
    pub rho: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub z: BigRational,
}

impl GlobalStats {
    pub fn from_stats(stats: &RoleStats) -> Self {
        let n = stats.n as u64;
        let copies = stats.copies();
        let alpha = (0..stats.n)
            .flat_map(|x| (1..stats.palette).map(move |c| (x, c)))
            .map(|(x, c)| stats.color_degree(x, Color(c as u16)))
            .max()
            .unwrap_or(0);
        let beta = (0..stats.n).map(|x| stats.color_degree(x, Color::EMPTY)).max().unwrap_or(0);
        GlobalStats {
            copies,
            rho: ratio(copies, binomial(n, stats.k as u64)),
            alpha: ratio(alpha as u64, n),
            beta: ratio(beta as u64, n),
            z: ratio(stats.max_second_largest() as u64, n),
        }
    }
}

pub fn global_stats(p: &Pattern, h: &ColoredGraph) -> GlobalStats {
    GlobalStats::from_stats(&role_stats(p, h))
}

/// `d(x, y)`: copies containing both vertices.
pub fn pair_degree(p: &Pattern, h: &ColoredGraph, x: usize, y: usize) -> Result<u64, CountError> {
    for v in [x, y] {
        if v >= h.n() {
            return Err(CountError::VertexOutOfRange { vertex: v, n: h.n() });
        }
    }
    if x == y {
        return Err(CountError::IdenticalVertices(x));
    }
    let plan = PatternPlan::new(p);
    Ok(copies_through_pair(&plan, &HostIndex::new(h, p.palette()), x, y))
}
