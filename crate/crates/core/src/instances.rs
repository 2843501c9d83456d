//! Seeded random patterns and hosts for property checks and audit corpora.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{plan_blowup, realize};
use crate::graph::{Color, ColoredGraph, Pattern};

/// Each pair is an edge with probability `density`; at least one edge.
pub fn random_pattern(rng: &mut ChaCha8Rng, k: usize, density: f64) -> Pattern {
    let mut edges: Vec<(usize, usize)> =
        (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).filter(|_| rng.gen_bool(density)).collect();
    if edges.is_empty() {
        let u = rng.gen_range(0..k);
        let v = (u + rng.gen_range(1..k)) % k;
        edges.push((u.min(v), u.max(v)));
    }
    edges.shuffle(rng);
    Pattern::from_edges(k, &edges).expect("random edges are distinct")
}

/// A random spanning tree plus each remaining pair with probability `extra`.
pub fn random_connected_pattern(rng: &mut ChaCha8Rng, k: usize, extra: f64) -> Pattern {
    let mut edges: Vec<(usize, usize)> = (1..k).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..k {
        for v in u + 1..k {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(rng);
    Pattern::from_edges(k, &edges).expect("random edges are distinct")
}

/// Uniform colors from `0..palette` on every pair.
pub fn random_host(rng: &mut ChaCha8Rng, n: usize, palette: usize) -> ColoredGraph {
    let mut g = ColoredGraph::empty(n, palette);
    for u in 0..n {
        for v in u + 1..n {
            g.set(u, v, Color(rng.gen_range(0..palette as u16)));
        }
    }
    g
}

/// Shuffled vertex labels.
pub fn shuffled(rng: &mut ChaCha8Rng, g: &ColoredGraph) -> ColoredGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

/// The iterated blow-up of `p` with `flips` random pairs recolored, then
/// relabelled at random.
pub fn perturbed_blowup(rng: &mut ChaCha8Rng, p: &Pattern, n: usize, flips: usize) -> ColoredGraph {
    let mut g = realize(&plan_blowup(p, n));
    if n >= 2 {
        for _ in 0..flips {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            g.set(u, v, Color(rng.gen_range(0..p.palette() as u16)));
        }
    }
    shuffled(rng, &g)
}
