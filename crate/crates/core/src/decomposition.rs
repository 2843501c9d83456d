//! Role partition of a host, the split of copies into inside / good / bad,
//! misaligned cross pairs, sided tuple weights, and pointwise degree-bound
//! audits. Every bound is compared in exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::counting::{binomial, enumerate_copies, HostIndex, PatternPlan, RoleStats};
use crate::exact::{amgm, format_rat, int, ser_rat};
use crate::graph::{Color, ColoredGraph, Pattern};
use crate::verifier::partition_product::p_exact;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("clique mode needs a complete pattern on at least 3 vertices")]
    NotClique,
    #[error("connected mode needs a connected pattern")]
    NotConnected,
    #[error("partition has {got} entries for a host on {n} vertices")]
    PartitionSize { got: usize, n: usize },
    #[error("part index {part} out of range for k={k}")]
    PartOutOfRange { part: usize, k: usize },
    #[error("bound {check} violated at {witness}: {lhs} > {rhs}")]
    BoundViolated { check: String, witness: String, lhs: String, rhs: String },
}

/// `V_1, …, V_k`: each vertex goes to a role with the largest `|N_i(x)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RolePartition {
    pub assignment: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl RolePartition {
    pub fn from_assignment(k: usize, assignment: Vec<usize>) -> Result<Self, AuditError> {
        let mut sizes = vec![0; k];
        for &p in &assignment {
            if p >= k {
                return Err(AuditError::PartOutOfRange { part: p, k });
            }
            sizes[p] += 1;
        }
        Ok(RolePartition { assignment, sizes })
    }

    pub fn part(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn members(&self, i: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&x| self.assignment[x] == i).collect()
    }
}

/// Ties go to the lowest role index.
pub fn partition_roles(stats: &RoleStats) -> RolePartition {
    let assignment = (0..stats.n()).map(|x| stats.roles_by_nbhd(x)[0]).collect();
    RolePartition::from_assignment(stats.k(), assignment).expect("roles are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyClass {
    /// Inside a single part.
    M,
    /// Transversal, and part `i` plays role `i`.
    G,
    /// Everything else.
    B,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CopySplit {
    pub h_m: u64,
    pub h_g: u64,
    pub h_b: u64,
    #[serde(skip)]
    pub copies: Vec<(Vec<usize>, CopyClass)>,
}

impl CopySplit {
    pub fn total(&self) -> u64 {
        self.h_m + self.h_g + self.h_b
    }

    pub fn bad(&self) -> impl Iterator<Item = &[usize]> {
        self.copies.iter().filter(|(_, c)| *c == CopyClass::B).map(|(f, _)| f.as_slice())
    }
}

fn check_partition(h: &ColoredGraph, rp: &RolePartition) -> Result<(), AuditError> {
    if rp.assignment.len() != h.n() {
        return Err(AuditError::PartitionSize { got: rp.assignment.len(), n: h.n() });
    }
    Ok(())
}

pub fn classify_copy(p: &Pattern, h: &ColoredGraph, rp: &RolePartition, f: &[usize]) -> CopyClass {
    let parts: Vec<usize> = f.iter().map(|&x| rp.part(x)).collect();
    if parts.iter().all(|&i| i == parts[0]) {
        return CopyClass::M;
    }
    let mut seen = vec![false; p.k()];
    for &i in &parts {
        if std::mem::replace(&mut seen[i], true) {
            return CopyClass::B;
        }
    }
    let aligned = (0..f.len()).all(|a| {
        (a + 1..f.len()).all(|b| h.color(f[a], f[b]) == p.color(parts[a], parts[b]))
    });
    if aligned {
        CopyClass::G
    } else {
        CopyClass::B
    }
}

pub fn split_copies(
    plan: &PatternPlan,
    idx: &HostIndex,
    rp: &RolePartition,
) -> Result<CopySplit, AuditError> {
    let (p, h) = (plan.pattern(), idx.graph());
    check_partition(h, rp)?;
    let mut split = CopySplit { h_m: 0, h_g: 0, h_b: 0, copies: Vec::new() };
    for f in enumerate_copies(plan, idx) {
        let class = classify_copy(p, h, rp, &f);
        match class {
            CopyClass::M => split.h_m += 1,
            CopyClass::G => split.h_g += 1,
            CopyClass::B => split.h_b += 1,
        }
        split.copies.push((f, class));
    }
    Ok(split)
}

/// A cross pair whose host color differs from the pattern color of its parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MisalignedPair {
    pub v: usize,
    pub w: usize,
    pub parts: (usize, usize),
    pub color: Color,
    /// Endpoints whose part role does not occur in the pair's color.
    pub wrong: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MisalignedPairs {
    pub pairs: Vec<MisalignedPair>,
    pub d1: usize,
    pub d2: usize,
    #[serde(serialize_with = "ser_rat")]
    pub delta: BigRational,
    /// `1 − Σ C(n_i, 2) / C(n, 2)`, the largest value `delta` can take.
    #[serde(serialize_with = "ser_rat")]
    pub delta_max: BigRational,
}

impl MisalignedPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `|D_ij|` for parts `i < j`.
    pub fn between(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().filter(|m| m.parts == key).count()
    }

    pub fn contains(&self, v: usize, w: usize) -> bool {
        let key = (v.min(w), v.max(w));
        self.pairs.binary_search_by(|m| (m.v, m.w).cmp(&key)).is_ok()
    }
}

/// Whether `v` in part `i` is wrong in a pair colored `c`.
fn is_wrong(p: &Pattern, i: usize, c: Color) -> bool {
    match p.endpoints(c) {
        Some((a, b)) => a != i && b != i,
        None => true,
    }
}

pub fn misaligned(p: &Pattern, h: &ColoredGraph, rp: &RolePartition) -> Result<MisalignedPairs, AuditError> {
    check_partition(h, rp)?;
    let mut pairs = Vec::new();
    for (v, w) in h.pairs() {
        let (i, j) = (rp.part(v), rp.part(w));
        if i == j {
            continue;
        }
        let c = h.color(v, w);
        if c != p.color(i, j) {
            let wrong = usize::from(is_wrong(p, i, c)) + usize::from(is_wrong(p, j, c));
            pairs.push(MisalignedPair { v, w, parts: (i.min(j), i.max(j)), color: c, wrong });
        }
    }
    let n2 = binomial(h.n() as u64, 2);
    let inside: u64 = rp.sizes.iter().map(|&m| binomial(m as u64, 2)).sum();
    let frac = |a: u64| if n2 == 0 { BigRational::zero() } else { int(a) / int(n2) };
    Ok(MisalignedPairs {
        d1: pairs.iter().filter(|m| m.wrong == 1).count(),
        d2: pairs.iter().filter(|m| m.wrong == 2).count(),
        delta: frac(pairs.len() as u64),
        delta_max: BigRational::one() - frac(inside),
        pairs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditMode {
    /// Complete patterns: sided tuples and the `k − 2` pairs per bad copy.
    Clique,
    /// Connected patterns: at least one misaligned pair per bad copy.
    Connected,
}

impl AuditMode {
    pub fn for_pattern(p: &Pattern) -> Option<AuditMode> {
        if p.is_clique() && p.k() >= 3 {
            Some(AuditMode::Clique)
        } else if p.is_connected() {
            Some(AuditMode::Connected)
        } else {
            None
        }
    }
}

/// A bad copy with fewer misaligned pairs than the mode requires.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CopyViolation {
    pub copy: Vec<usize>,
    pub misaligned_pairs: usize,
    pub required: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SidedWeight {
    pub mode: AuditMode,
    /// `(e, f)` incidences with `e` misaligned and `f` bad.
    pub j: u64,
    pub j1: u64,
    pub j2: u64,
    pub s: u64,
    pub min_pairs_per_bad_copy: Option<usize>,
    pub violations: Vec<CopyViolation>,
}

pub fn sided_audit(
    p: &Pattern,
    h: &ColoredGraph,
    rp: &RolePartition,
    mp: &MisalignedPairs,
    split: &CopySplit,
    mode: AuditMode,
) -> Result<SidedWeight, AuditError> {
    check_partition(h, rp)?;
    let k = p.k();
    let required = match mode {
        AuditMode::Clique if p.is_clique() && k >= 3 => k - 2,
        AuditMode::Clique => return Err(AuditError::NotClique),
        AuditMode::Connected if p.is_connected() => 1,
        AuditMode::Connected => return Err(AuditError::NotConnected),
    };
    let wrong_of = |v: usize, w: usize| -> usize {
        let c = h.color(v, w);
        usize::from(is_wrong(p, rp.part(v), c)) + usize::from(is_wrong(p, rp.part(w), c))
    };
    let mut out = SidedWeight {
        mode,
        j: 0,
        j1: 0,
        j2: 0,
        s: 0,
        min_pairs_per_bad_copy: None,
        violations: Vec::new(),
    };
    for f in split.bad() {
        let mut inside = 0;
        for a in 0..f.len() {
            for b in a + 1..f.len() {
                if mp.contains(f[a], f[b]) {
                    inside += 1;
                    match wrong_of(f[a], f[b]) {
                        1 => out.j1 += 1,
                        _ => out.j2 += 2,
                    }
                }
            }
        }
        out.j += inside as u64;
        out.min_pairs_per_bad_copy = Some(out.min_pairs_per_bad_copy.map_or(inside, |m| m.min(inside)));
        if inside < required {
            out.violations.push(CopyViolation { copy: f.to_vec(), misaligned_pairs: inside, required });
        }
    }
    if mode == AuditMode::Clique {
        out.s = 2 * out.j1 + out.j2;
    }
    Ok(out)
}

/// Aggregate of one family of bound checks.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundMargin {
    pub check: String,
    pub evaluated: usize,
    pub tight: usize,
    /// Smallest `rhs − lhs` seen, exact.
    pub min_margin: Option<String>,
    pub min_margin_witness: Option<String>,
    #[serde(skip)]
    min: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundViolation {
    pub check: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub margins: Vec<BoundMargin>,
    pub violations: Vec<BoundViolation>,
}

impl BoundReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn ensure_clean(&self) -> Result<(), AuditError> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(AuditError::BoundViolated {
                check: v.check.clone(),
                witness: v.witness.clone(),
                lhs: v.lhs.clone(),
                rhs: v.rhs.clone(),
            }),
        }
    }

    fn margin(&mut self, check: &str) -> usize {
        match self.margins.iter().position(|m| m.check == check) {
            Some(i) => i,
            None => {
                self.margins.push(BoundMargin {
                    check: check.to_string(),
                    evaluated: 0,
                    tight: 0,
                    min_margin: None,
                    min_margin_witness: None,
                    min: None,
                });
                self.margins.len() - 1
            }
        }
    }

    /// Records `lhs ≤ rhs`.
    fn check(&mut self, check: &str, witness: impl Fn() -> String, lhs: BigRational, rhs: BigRational) {
        let i = self.margin(check);
        let gap = &rhs - &lhs;
        let entry = &mut self.margins[i];
        entry.evaluated += 1;
        if gap.is_zero() {
            entry.tight += 1;
        }
        if entry.min.as_ref().is_none_or(|m| gap < *m) {
            entry.min_margin = Some(format_rat(&gap));
            entry.min_margin_witness = Some(witness());
            entry.min = Some(gap.clone());
        }
        if gap < BigRational::zero() {
            self.violations.push(BoundViolation {
                check: check.to_string(),
                witness: witness(),
                lhs: format_rat(&lhs),
                rhs: format_rat(&rhs),
            });
        }
    }
}

/// Pointwise degree bounds for every `(x, i)`, the two-vertex bound, and the
/// counting bounds on good and bad copies. Needs a connected pattern.
pub fn bound_audit(
    p: &Pattern,
    h: &ColoredGraph,
    stats: &RoleStats,
    rp: &RolePartition,
    mp: &MisalignedPairs,
    split: &CopySplit,
    sided: &SidedWeight,
) -> Result<BoundReport, AuditError> {
    if !p.is_connected() {
        return Err(AuditError::NotConnected);
    }
    check_partition(h, rp)?;
    let (n, k) = (h.n(), p.k());
    let mut report = BoundReport::default();
    let q = |v: usize| int(v as u64);

    for x in 0..n {
        let b = stats.neighbors(x).len();
        for i in 0..k {
            let d = q(stats.d_role(x, i) as usize);
            let k1 = p.degree(i);
            let w = || format!("x={} i={}", x + 1, i + 1);
            let rhs_a = amgm(&q(b), k1) * amgm(&q(n - b), k - k1 - 1);
            report.check("degree(a)", w, d.clone(), rhs_a);
            let ni = stats.nbhd(x, i).len();
            report.check("degree(b)", w, d.clone(), amgm(&q(ni), k - 1));
            report.check(
                "degree(b) balanced product",
                w,
                d.clone(),
                int(p_exact(ni as u64, (k - 1) as u64).expect("k ≥ 2")),
            );
            for j in p.neighbors(i) {
                let dij = stats.color_degree(x, p.color(i, j));
                let rhs = q(dij) * amgm(&q(n - dij), k - 2);
                report.check("degree(c)", || format!("x={} i={} j={}", x + 1, i + 1, j + 1), d.clone(), rhs);
            }
            let worst = (0..n).filter(|&y| y != x).map(|y| (stats.role_pair(x, i, y), y)).max();
            if let Some((cnt, y)) = worst {
                report.check(
                    "two-vertex",
                    || format!("x={} i={} y={}", x + 1, i + 1, y + 1),
                    q(cnt as usize),
                    amgm(&q(ni), k - 2),
                );
            }
        }
        let psum: BigRational = (0..k)
            .map(|i| int(p_exact(stats.nbhd(x, i).len() as u64, (k - 1) as u64).expect("k ≥ 2")))
            .sum();
        report.check("degree sum", || format!("x={}", x + 1), q(stats.d(x) as usize), psum);
    }

    let n2 = binomial(n as u64, 2);
    let cross = n2 - rp.sizes.iter().map(|&m| binomial(m as u64, 2)).sum::<u64>();
    let prod: BigRational = rp.sizes.iter().map(|&m| q(m)).product();
    let hg_rhs = if cross == 0 {
        prod.clone()
    } else {
        &prod * (BigRational::one() - q(mp.len()) / int(cross))
    };
    report.check("good copies", || "global".into(), q(split.h_g as usize), hg_rhs);

    let zmax = stats.max_second_largest();
    let dn = q(mp.len());
    match sided.mode {
        AuditMode::Clique => {
            let s = q(sided.s as usize);
            report.check("sided weight lower", || "global".into(), q(2 * (k - 2)) * q(split.h_b as usize), s.clone());
            let fine = sided_fine_bound(p, h, stats, rp, mp);
            report.check("sided weight upper (per pair)", || "global".into(), s.clone(), fine.clone());
            let pz = int(p_exact(zmax as u64, (k - 2) as u64).expect("k ≥ 3"));
            report.check("sided weight upper", || "global".into(), fine, q(4) * &dn * pz);
            let bad = q(2) * &dn * amgm(&q(zmax), k - 2) / q(k - 2);
            report.check("bad copies", || "global".into(), q(split.h_b as usize), bad);
        }
        AuditMode::Connected => {
            report.check("bad copies by incidences", || "global".into(), q(split.h_b as usize), q(sided.j as usize));
            let mut per_pair = BigRational::zero();
            for m in &mp.pairs {
                for (v, own) in [(m.v, rp.part(m.v)), (m.w, rp.part(m.w))] {
                    for l in (0..k).filter(|&l| l != own) {
                        per_pair += amgm(&q(stats.nbhd(v, l).len()), k - 2);
                    }
                }
            }
            report.check("incidences (per pair)", || "global".into(), q(sided.j as usize), per_pair.clone());
            let total = q(2) * &dn * q(k - 1) * amgm(&q(zmax), k - 2);
            report.check("incidences", || "global".into(), per_pair, total);
        }
    }
    Ok(report)
}

/// `Σ_{vw ∈ D}` of the balanced-product bounds on sided tuples through `vw`.
fn sided_fine_bound(
    p: &Pattern,
    h: &ColoredGraph,
    stats: &RoleStats,
    rp: &RolePartition,
    mp: &MisalignedPairs,
) -> BigRational {
    let k = p.k() as u64;
    let pb = |v: usize, role: usize| -> BigRational {
        let s = stats.nbhd(v, role).len() as u64;
        int(p_exact(s.saturating_sub(1), k - 2).expect("k ≥ 3"))
    };
    let mut total = BigRational::zero();
    for m in &mp.pairs {
        let c = h.color(m.v, m.w);
        let roles: Vec<usize> = match p.endpoints(c) {
            Some((a, b)) => vec![a, b],
            None => Vec::new(),
        };
        for v in [m.v, m.w] {
            if !is_wrong(p, rp.part(v), c) {
                continue;
            }
            let weight = if m.wrong == 1 { int(2u64) } else { BigRational::one() };
            // in a copy through vw, v plays one of the two roles named by the color
            let options: BigRational = roles.iter().map(|&r| pb(v, r)).sum();
            total += weight * options;
        }
    }
    total
}

/// Every piece of the decomposition for one host.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub copies: u64,
    pub partition_sizes: Vec<usize>,
    pub hm: u64,
    pub hg: u64,
    pub hb: u64,
    pub misaligned: usize,
    pub d1: usize,
    pub d2: usize,
    #[serde(serialize_with = "ser_rat")]
    pub delta: BigRational,
    pub sided: SidedWeight,
    pub bounds: BoundReport,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.bounds.is_clean() && self.sided.violations.is_empty()
    }
}

/// Runs the full pipeline with the partition induced by role statistics,
/// or with `partition` when given.
pub fn audit(p: &Pattern, h: &ColoredGraph, partition: Option<Vec<usize>>) -> Result<AuditReport, AuditError> {
    let mode = AuditMode::for_pattern(p).ok_or(AuditError::NotConnected)?;
    let plan = PatternPlan::new(p);
    let idx = HostIndex::new(h, p.palette());
    let stats = RoleStats::compute(&plan, &idx);
    let rp = match partition {
        Some(a) => RolePartition::from_assignment(p.k(), a)?,
        None => partition_roles(&stats),
    };
    let split = split_copies(&plan, &idx, &rp)?;
    let mp = misaligned(p, h, &rp)?;
    let sided = sided_audit(p, h, &rp, &mp, &split, mode)?;
    let bounds = bound_audit(p, h, &stats, &rp, &mp, &split, &sided)?;
    Ok(AuditReport {
        copies: split.total(),
        partition_sizes: rp.sizes.clone(),
        hm: split.h_m,
        hg: split.h_g,
        hb: split.h_b,
        misaligned: mp.len(),
        d1: mp.d1,
        d2: mp.d2,
        delta: mp.delta.clone(),
        sided,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{plan_blowup, realize};
    use crate::counting::count_induced;
    use crate::exact::rat;

    fn setup(p: &Pattern, h: &ColoredGraph) -> (PatternPlan, HostIndex, RoleStats) {
        let plan = PatternPlan::new(p);
        let idx = HostIndex::new(h, p.palette());
        let stats = RoleStats::compute(&plan, &idx);
        (plan, idx, stats)
    }

    #[test]
    fn partition_recovers_blowup_parts() {
        let k3 = Pattern::rainbow_clique(3);
        let tree = plan_blowup(&k3, 6);
        let (_, _, stats) = setup(&k3, &realize(&tree));
        assert_eq!(partition_roles(&stats).assignment, tree.top_level_parts());
    }

    #[test]
    fn empty_host_goes_to_first_role() {
        let k3 = Pattern::rainbow_clique(3);
        let (_, _, stats) = setup(&k3, &ColoredGraph::empty(5, 4));
        let rp = partition_roles(&stats);
        assert_eq!(rp.sizes, vec![5, 0, 0]);
    }

    #[test]
    fn nine_vertex_split() {
        let k3 = Pattern::rainbow_clique(3);
        let tree = plan_blowup(&k3, 9);
        let h = realize(&tree);
        let (plan, idx, _) = setup(&k3, &h);
        let rp = RolePartition::from_assignment(3, tree.top_level_parts()).unwrap();
        let split = split_copies(&plan, &idx, &rp).unwrap();
        assert_eq!((split.h_m, split.h_g, split.h_b), (3, 27, 0));
        let mp = misaligned(&k3, &h, &rp).unwrap();
        assert!(mp.is_empty());
        assert_eq!(mp.delta, rat(0, 1));
    }

    #[test]
    fn pattern_itself_is_one_good_copy() {
        let p = Pattern::rainbow_cycle(5);
        let (plan, idx, _) = setup(&p, p.as_graph());
        let rp = RolePartition::from_assignment(5, (0..5).collect()).unwrap();
        let split = split_copies(&plan, &idx, &rp).unwrap();
        assert_eq!((split.h_m, split.h_g, split.h_b), (0, 1, 0));
    }

    #[test]
    fn one_recolored_cross_pair() {
        let k3 = Pattern::rainbow_clique(3);
        let tree = plan_blowup(&k3, 6);
        let mut h = realize(&tree);
        // parts {0,1}, {2,3}, {4,5}; pair 0–2 should carry the color of roles 1–2
        h.set(0, 2, k3.color(1, 2));
        let rp = RolePartition::from_assignment(3, tree.top_level_parts()).unwrap();
        let mp = misaligned(&k3, &h, &rp).unwrap();
        assert_eq!(mp.len(), 1);
        assert_eq!((mp.d1, mp.d2), (1, 0));
        assert_eq!(mp.between(0, 1), 1);
        h.set(0, 2, Color::EMPTY);
        let mp = misaligned(&k3, &h, &rp).unwrap();
        assert_eq!((mp.d1, mp.d2), (0, 1));
        let (plan, idx, _) = setup(&k3, &h);
        let split = split_copies(&plan, &idx, &rp).unwrap();
        assert_eq!(split.total(), count_induced(&k3, &h));
    }

    #[test]
    fn all_empty_cross_pairs_are_doubly_wrong() {
        let k3 = Pattern::rainbow_clique(3);
        let h = ColoredGraph::empty(6, 4);
        let rp = RolePartition::from_assignment(3, vec![0, 0, 1, 1, 2, 2]).unwrap();
        let mp = misaligned(&k3, &h, &rp).unwrap();
        assert_eq!(mp.len(), 12);
        assert_eq!(mp.d2, 12);
        assert_eq!(mp.delta, mp.delta_max);
    }

    #[test]
    fn blowup_bounds_hold_and_degree_b_is_tight() {
        let k3 = Pattern::rainbow_clique(3);
        let report = audit(&k3, &realize(&plan_blowup(&k3, 6)), None).unwrap();
        assert!(report.is_clean(), "{:?}", report.bounds.violations);
        let b = report.bounds.margins.iter().find(|m| m.check == "degree(b)").unwrap();
        // 6 own-role pairs plus 12 foreign-role pairs where both sides are 0
        assert_eq!(b.tight, 18);
        assert_eq!(report.sided.s, 0);
        let good = report.bounds.margins.iter().find(|m| m.check == "good copies").unwrap();
        assert_eq!(good.min_margin.as_deref(), Some("0"));
    }

    #[test]
    fn mode_checks() {
        let path = Pattern::rainbow_path(4);
        let h = realize(&plan_blowup(&path, 8));
        let (plan, idx, stats) = setup(&path, &h);
        let rp = partition_roles(&stats);
        let split = split_copies(&plan, &idx, &rp).unwrap();
        let mp = misaligned(&path, &h, &rp).unwrap();
        assert_eq!(
            sided_audit(&path, &h, &rp, &mp, &split, AuditMode::Clique).unwrap_err(),
            AuditError::NotClique
        );
        let two = Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(audit(&two, &h, None).unwrap_err(), AuditError::NotConnected);
    }
}
