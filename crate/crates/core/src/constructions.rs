//! Iterated balanced blow-ups, the separate blow-up family for disconnected
//! patterns, and the limit densities of both.

use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{int, ser_rat, ser_rats};
use crate::graph::{ColoredGraph, Pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("component {0:?} is a single isolated vertex; no blow-up density is defined")]
    IsolatedVertex(Vec<usize>),
    #[error("pattern is connected; the separate family needs at least two components")]
    Connected,
    #[error("tree was not planned as a blow-up of this pattern")]
    TreeMismatch,
}

/// Part-size plan of a recursive blow-up. A node splits its vertices into
/// parts colored across by `frame`; a leaf is an all-∅ block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlowupTree {
    size: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    parts: Vec<BlowupTree>,
    #[serde(skip)]
    frame: Option<ColoredGraph>,
    #[serde(skip)]
    palette: usize,
}

impl BlowupTree {
    fn leaf(size: usize, palette: usize) -> Self {
        BlowupTree { size, parts: Vec::new(), frame: None, palette }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parts(&self) -> &[BlowupTree] {
        &self.parts
    }

    pub fn is_leaf(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|t| t.size).collect()
    }

    /// Top-level part of every realized vertex; a leaf maps everything to part 0.
    pub fn top_level_parts(&self) -> Vec<usize> {
        if self.is_leaf() {
            return vec![0; self.size];
        }
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, t)| std::iter::repeat_n(i, t.size))
            .collect()
    }
}

/// Sizes differing by at most one; the remainder goes to the lowest indices.
pub fn balanced_split(n: usize, parts: usize) -> Vec<usize> {
    (0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect()
}

/// Iterated balanced blow-up of an arbitrary colored base graph.
pub fn plan_frame_blowup(frame: &ColoredGraph, n: usize) -> BlowupTree {
    let k = frame.n();
    if n < k || k < 2 {
        return BlowupTree::leaf(n, frame.palette());
    }
    let parts = balanced_split(n, k).into_iter().map(|m| plan_frame_blowup(frame, m)).collect();
    BlowupTree { size: n, parts, frame: Some(frame.clone()), palette: frame.palette() }
}

/// Iterated balanced blow-up `G_P(n)`.
pub fn plan_blowup(p: &Pattern, n: usize) -> BlowupTree {
    plan_frame_blowup(p.as_graph(), n)
}

fn fill(tree: &BlowupTree, offset: usize, g: &mut ColoredGraph) {
    let Some(frame) = &tree.frame else { return };
    let mut starts = Vec::with_capacity(tree.parts.len());
    let mut at = offset;
    for t in &tree.parts {
        starts.push(at);
        at += t.size;
    }
    for (a, ta) in tree.parts.iter().enumerate() {
        for (b, tb) in tree.parts.iter().enumerate().skip(a + 1) {
            let c = frame.color(a, b);
            if c.is_empty() {
                continue;
            }
            for u in starts[a]..starts[a] + ta.size {
                for v in starts[b]..starts[b] + tb.size {
                    g.set(u, v, c);
                }
            }
        }
    }
    for (t, &s) in tree.parts.iter().zip(&starts) {
        fill(t, s, g);
    }
}

/// Colored graph of a plan; parts are numbered consecutively, depth first.
pub fn realize(tree: &BlowupTree) -> ColoredGraph {
    let mut g = ColoredGraph::empty(tree.size, tree.palette.max(1));
    fill(tree, 0, &mut g);
    g
}

/// `Σ_i LB(child_i) + ∏_i |V_i|` evaluated over a blow-up of `p`; leaves give 0.
pub fn recursive_lower_bound(p: &Pattern, tree: &BlowupTree) -> Result<u128, ConstructionError> {
    match &tree.frame {
        None => Ok(0),
        Some(f) if f == p.as_graph() => {
            let inner = tree
                .parts
                .iter()
                .map(|t| recursive_lower_bound(p, t))
                .sum::<Result<u128, _>>()?;
            Ok(inner + tree.parts.iter().map(|t| t.size as u128).product::<u128>())
        }
        Some(_) => Err(ConstructionError::TreeMismatch),
    }
}

/// Exact coefficients of the two blow-up families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityFormula {
    pub k: usize,
    pub component_sizes: Vec<usize>,
    /// `k! / (k^k − k)`.
    #[serde(serialize_with = "ser_rat")]
    pub a: BigRational,
    /// `k^{c_i} − k` per component.
    #[serde(serialize_with = "ser_rats")]
    pub one_blowup_denoms: Vec<BigRational>,
    /// `k^{c_i} − k (k / c_i)^{c_i − 1}` per component.
    #[serde(serialize_with = "ser_rats")]
    pub separate_denoms: Vec<BigRational>,
    #[serde(serialize_with = "ser_rat")]
    pub one_blowup_coeff: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub separate_coeff: BigRational,
}

pub fn limit_density(p: &Pattern) -> Result<DensityFormula, ConstructionError> {
    let k = p.k();
    let comps = p.components();
    if let Some(c) = comps.iter().find(|c| c.len() == 1) {
        return Err(ConstructionError::IsolatedVertex(c.iter().map(|v| v + 1).collect()));
    }
    let kk = int(k as u64);
    let factorial = (1..=k).fold(BigRational::one(), |acc, i| acc * int(i as u64));
    let a = factorial / (Pow::pow(&kk, k as u32) - &kk);
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let one: Vec<BigRational> = sizes.iter().map(|&c| Pow::pow(&kk, c as u32) - &kk).collect();
    let sep: Vec<BigRational> = sizes
        .iter()
        .map(|&c| Pow::pow(&kk, c as u32) - &kk * Pow::pow(&(&kk / int(c as u64)), (c - 1) as u32))
        .collect();
    let coeff = |ds: &[BigRational]| {
        ds.iter().fold(BigRational::one(), |acc, d| {
            if d.is_zero() {
                acc
            } else {
                acc / d
            }
        })
    };
    Ok(DensityFormula {
        k,
        component_sizes: sizes,
        a,
        one_blowup_coeff: coeff(&one),
        separate_coeff: coeff(&sep),
        one_blowup_denoms: one,
        separate_denoms: sep,
    })
}

/// Part sizes `c_i n / k` rounded by largest remainder, ties to lower index.
pub fn proportional_sizes(weights: &[usize], n: usize) -> Vec<usize> {
    let total: usize = weights.iter().sum();
    let mut sizes: Vec<usize> = weights.iter().map(|&c| c * n / total).collect();
    let mut left = n - sizes.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weights[i] * n % total), i));
    for i in order {
        if left == 0 {
            break;
        }
        sizes[i] += 1;
        left -= 1;
    }
    sizes
}

/// One part per component, sized proportionally, ∅ across parts; each part is
/// the iterated blow-up of its component with the original edge colors.
pub fn plan_separate(p: &Pattern, n: usize) -> Result<BlowupTree, ConstructionError> {
    let comps = p.components();
    if let Some(c) = comps.iter().find(|c| c.len() == 1) {
        return Err(ConstructionError::IsolatedVertex(c.iter().map(|v| v + 1).collect()));
    }
    if comps.len() < 2 {
        return Err(ConstructionError::Connected);
    }
    let sizes = proportional_sizes(&comps.iter().map(Vec::len).collect::<Vec<_>>(), n);
    let parts = comps
        .iter()
        .zip(&sizes)
        .map(|(c, &m)| plan_frame_blowup(&p.as_graph().induced(c), m))
        .collect();
    Ok(BlowupTree {
        size: n,
        parts,
        frame: Some(ColoredGraph::empty(comps.len(), p.palette())),
        palette: p.palette(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn split_examples() {
        let k3 = Pattern::rainbow_clique(3);
        assert_eq!(plan_blowup(&k3, 6).part_sizes(), vec![2, 2, 2]);
        let t = plan_blowup(&k3, 8);
        assert_eq!(t.part_sizes(), vec![3, 3, 2]);
        assert_eq!(t.parts()[0].part_sizes(), vec![1, 1, 1]);
        assert!(t.parts()[2].is_leaf());
        assert_eq!(plan_blowup(&Pattern::rainbow_clique(4), 4).part_sizes(), vec![1; 4]);
        assert!(plan_blowup(&k3, 2).is_leaf());
    }

    #[test]
    fn realize_examples() {
        let k3 = Pattern::rainbow_clique(3);
        let g = realize(&plan_blowup(&k3, 6));
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.pairs().count() - g.edge_count(), 3);
        let c5 = Pattern::rainbow_cycle(5);
        assert!(are_isomorphic(&realize(&plan_blowup(&c5, 5)), c5.as_graph()));
    }

    #[test]
    fn lower_bounds() {
        let k3 = Pattern::rainbow_clique(3);
        assert_eq!(recursive_lower_bound(&k3, &plan_blowup(&k3, 6)), Ok(8));
        assert_eq!(recursive_lower_bound(&k3, &plan_blowup(&k3, 9)), Ok(30));
        let k4 = Pattern::rainbow_clique(4);
        assert_eq!(recursive_lower_bound(&k4, &plan_blowup(&k4, 4)), Ok(1));
        assert_eq!(
            recursive_lower_bound(&k4, &plan_blowup(&k3, 9)),
            Err(ConstructionError::TreeMismatch)
        );
    }

    #[test]
    fn densities() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(limit_density(&Pattern::rainbow_clique(3)).unwrap().a, r(1, 4));
        assert_eq!(
            limit_density(&Pattern::rainbow_clique(11)).unwrap().a,
            r(39916800, 285311670600)
        );
        let two = Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = limit_density(&two).unwrap();
        assert_eq!(d.one_blowup_coeff, r(1, 144));
        assert_eq!(d.separate_coeff, r(1, 64));
        let iso = Pattern::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(limit_density(&iso), Err(ConstructionError::IsolatedVertex(vec![3])));
    }

    #[test]
    fn separate_sizes() {
        assert_eq!(proportional_sizes(&[2, 2], 16), vec![8, 8]);
        assert_eq!(proportional_sizes(&[2, 3], 7), vec![3, 4]);
        assert_eq!(proportional_sizes(&[2, 2, 2], 7), vec![3, 2, 2]);
        let two = Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(plan_separate(&two, 16).unwrap().part_sizes(), vec![8, 8]);
        assert!(are_isomorphic(&realize(&plan_separate(&two, 4).unwrap()), two.as_graph()));
        assert_eq!(
            plan_separate(&Pattern::rainbow_clique(3), 6),
            Err(ConstructionError::Connected)
        );
    }
}
