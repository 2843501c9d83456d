//! The inequality battery. Each entry is evaluated per `k` where it depends on
//! `k`, in exact arithmetic when both sides are rational and with interval
//! enclosures of `e` and `ln` otherwise.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::interval::{exp_enclosure, ln2, Interval};
use super::{sci, InequalityCheck, Method, Relation, Verdict, VerifierError};
use crate::exact::{format_rat, int, rat};
use crate::rng::stream;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BatteryConfig {
    pub kmin: usize,
    pub kmax: usize,
    /// Dyadic precision of interval endpoints.
    pub bits: u32,
    /// Cells covering `z ∈ [1/2, 7/10]` before adaptive bisection.
    pub cover_cells: usize,
    /// Points per axis for the sampled monotonicity claims.
    pub samples: usize,
    /// Total mass of the integer simplex grid for small `k`.
    pub simplex_total: u64,
    /// Largest `k` whose simplex grid is enumerated in full.
    pub simplex_kmax: usize,
    /// Random interior points per `k` for the product bound.
    pub random_points: usize,
    pub seed: u64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            kmin: 11,
            kmax: 200,
            bits: 128,
            cover_cells: 200,
            samples: 32,
            simplex_total: 60,
            simplex_kmax: 8,
            random_points: 16,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BatteryReport {
    pub config: BatteryConfig,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub indeterminate: usize,
    /// Largest threshold on `C` per parameterized claim over the `k` range.
    pub minimal_c_by_claim: BTreeMap<String, String>,
    /// Smallest `C` on a `1/1000` grid strictly above every threshold.
    pub minimal_c: String,
    /// `lhs / rhs` of the maximum-degree bound at `k = 11`, if in range.
    pub max_degree_ratio_k11: Option<String>,
    pub checks: Vec<InequalityCheck>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.indeterminate == 0
    }
}

fn pt(x: BigRational) -> Interval {
    Interval::point(x)
}

fn q(a: i64, b: i64) -> BigRational {
    rat(a, b)
}

fn n(v: usize) -> BigRational {
    int(v as u64)
}

fn kp(k: usize) -> Vec<(&'static str, String)> {
    vec![("k", k.to_string())]
}

struct Ctx {
    bits: u32,
    e: Interval,
    e_inv: Interval,
    e2: Interval,
    e2_inv: Interval,
    ln2: Interval,
}

impl Ctx {
    fn new(bits: u32) -> Self {
        let e = exp_enclosure(&int(1u64), bits);
        let e2 = exp_enclosure(&int(2u64), bits);
        Ctx {
            e_inv: exp_enclosure(&int(-1i64), bits),
            e2_inv: exp_enclosure(&int(-2i64), bits),
            ln2: ln2(bits),
            e,
            e2,
            bits,
        }
    }

    fn check(
        &self,
        item: &'static str,
        name: &str,
        params: Vec<(&'static str, String)>,
        rel: Relation,
        lhs: &Interval,
        rhs: &Interval,
    ) -> InequalityCheck {
        let method = if lhs.is_point() && rhs.is_point() { Method::Exact } else { Method::Interval };
        InequalityCheck::decide(item, name, &params, rel, method, lhs, rhs, self.bits)
    }

    fn ln(&self, x: &Interval) -> Interval {
        x.ln(self.bits)
    }
}

/// Thresholds on `C` from the four parameterized claims at one `k`.
fn c_thresholds(ctx: &Ctx, k: usize) -> Vec<(&'static str, Interval)> {
    let b = ctx.bits;
    let l = ctx.ln(&pt(n(k)));
    let one = pt(BigRational::one());
    let two_plus = &pt(n(2)) + &(&pt(n(2)) * &l);
    let claim_alpha = (&pt(q(40, 9)) * &two_plus.div(&l)).round(b);
    let denom = &(&ctx.ln2 - &pt(q(1, 2))) * &l;
    let claim_beta = (&one + &l).div(&denom).round(b);
    let c = &(&pt(q(100, 101)) * &ctx.e_inv) - &pt(q(1, 3));
    let claim_z = (&pt(n(8)) * &(&one - &ctx.ln(&c).div(&l))).round(b);
    let big = &ctx.ln(&pt(q(101, 25))) + &pt(n(2));
    let claim_final = (&pt(q(80, 9)) * &(&pt(n(3)) + &big.div(&l))).round(b);
    vec![
        ("alpha", claim_alpha),
        ("beta", claim_beta),
        ("second-neighbourhood", claim_z),
        ("absurd-case", claim_final),
    ]
}

/// `max f(z)` over a rigorous cover of `[1/2, 7/10]`, where
/// `f(z) = (7/5 − z)^{k−1} + z^{k−1} + (3/5) z^{k−2}`. On a cell `[a, c]` the
/// first term is bounded at `a` and the others at `c`, all exactly; cells whose
/// bound reaches `target` are bisected up to 12 times.
fn cover_bound(k: usize, cells: usize, target: &BigRational) -> BigRational {
    // points are m / den with den a multiple of 5
    let upper = |a: &BigInt, c: &BigInt, den: &BigInt| -> BigRational {
        let e = (k - 1) as u32;
        let base: BigInt = den * 7 / 5 - a;
        let left = base.pow(e);
        let right: BigInt = c.pow(e);
        let tail: BigInt = c.pow(e - 1) * den * 3 / 5;
        BigRational::new(left + right + tail, den.pow(e))
    };
    let den0 = BigInt::from(10 * cells);
    let mut worst = BigRational::zero();
    let mut stack: Vec<(BigInt, BigInt, BigInt, u32)> = (0..cells)
        .rev()
        .map(|i| (BigInt::from(5 * cells + 2 * i), BigInt::from(5 * cells + 2 * i + 2), den0.clone(), 0))
        .collect();
    while let Some((a, c, den, depth)) = stack.pop() {
        let u = upper(&a, &c, &den);
        if &u >= target && depth < 12 {
            let (a, c, den): (BigInt, BigInt, BigInt) = (a << 1u32, c << 1u32, den << 1u32);
            let m: BigInt = (&a + &c) >> 1u32;
            stack.push((m.clone(), c, den.clone(), depth + 1));
            stack.push((a, m, den, depth + 1));
            continue;
        }
        if u > worst {
            worst = u;
        }
    }
    worst
}

/// `max (Σ m_i^k + (k^k − k) ∏ m_i) / M^k` over the sampled points.
fn product_bound_ratio(points: &[Vec<u64>], k: usize) -> BigRational {
    let kk = Pow::pow(&BigUint::from(k), k as u32) - BigUint::from(k);
    points
        .iter()
        .map(|m| {
            let total: u64 = m.iter().sum();
            let powers: BigUint = m.iter().map(|&x| Pow::pow(&BigUint::from(x), k as u32)).sum();
            let prod: BigUint = m.iter().map(|&x| BigUint::from(x)).product();
            let lhs = powers + &kk * prod;
            BigRational::new(BigInt::from(lhs), BigInt::from(Pow::pow(&BigUint::from(total), k as u32)))
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Partitions of `total` into at most `parts` parts, zero-padded.
fn partitions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(left: u64, cap: u64, slots: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left > cap * slots as u64 {
            return;
        }
        for x in (0..=cap.min(left)).rev() {
            cur.push(x);
            rec(left - x, x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, parts, &mut Vec::new(), &mut out);
    out
}

/// Exact integer form of the product bound: `Σ m_i^k + (k^k − k) ∏ m_i ≤ M^k`.
fn simplex_grid_holds(total: u64, k: usize) -> (usize, bool, BigRational) {
    let kk = (k as u128).pow(k as u32) - k as u128;
    let bound = (total as u128).pow(k as u32);
    let mut worst = BigRational::zero();
    let mut count = 0;
    let mut ok = true;
    for m in partitions(total, k) {
        count += 1;
        let lhs: u128 = m.iter().map(|&x| (x as u128).pow(k as u32)).sum::<u128>()
            + kk * m.iter().map(|&x| x as u128).product::<u128>();
        ok &= lhs <= bound;
        let r = BigRational::new(BigInt::from(lhs), BigInt::from(bound));
        if r > worst {
            worst = r;
        }
    }
    (count, ok, worst)
}

fn per_k(ctx: &Ctx, cfg: &BatteryConfig, k: usize) -> (Vec<InequalityCheck>, Vec<(&'static str, Interval)>) {
    let b = ctx.bits;
    let mut out = Vec::new();
    let kr = n(k);
    let kpow = |e: usize| -> BigRational { num_traits::pow(kr.clone(), e) };

    // (i)
    let base = num_traits::pow(BigRational::one() - kr.recip(), k - 1);
    out.push(ctx.check("i", "e-inverse", kp(k), Relation::Lt, &ctx.e_inv, &pt(base)));

    // (ii)
    let small = q(7, 5) * num_traits::pow(q(3, 5) / n(k - 2), k - 2);
    let big = (kpow(k - 1) - BigRational::one()).recip();
    out.push(ctx.check("ii", "max-degree", kp(k), Relation::Lt, &pt(small.clone()), &pt(big)));
    if k >= 12 {
        let rhs = (&ctx.e * &pt(num_traits::pow(n(k - 1), k - 1))).recip().round(b + 64 * k as u32);
        out.push(ctx.check("ii", "max-degree induction", kp(k), Relation::Lt, &pt(small), &rhs));
    }
    let f = num_traits::pow(n(k - 2), 2 * k - 4)
        / (num_traits::pow(n(k - 1), k - 1) * num_traits::pow(n(k - 3), k - 3));
    out.push(ctx.check("ii", "max-degree step ratio", kp(k), Relation::Lt, &pt(q(3, 5)), &pt(f)));

    // (iii)
    let half = num_traits::pow(q(1, 2), k - 1);
    let third = (n(3) * &kr).recip();
    let lhs = q(100, 101) * num_traits::pow(n(k - 1), k - 1) / (kpow(k) - &kr) - &third;
    out.push(ctx.check("iii", "large-part", kp(k), Relation::Le, &pt(half.clone()), &pt(lhs)));
    if k >= 12 {
        let rhs = &(&pt(q(100, 101) / &kr) * &ctx.e_inv) - &pt(third.clone());
        out.push(ctx.check("iii", "large-part induction", kp(k), Relation::Le, &pt(half), &rhs));
    }

    // (iv)
    let target = ctx.e_inv.lo.clone();
    let worst = cover_bound(k, cfg.cover_cells, &target);
    out.push(ctx.check(
        "iv",
        "second-neighbourhood cover",
        vec![("k", k.to_string()), ("z", "[1/2, 7/10]".into())],
        Relation::Lt,
        &Interval::new(BigRational::zero(), worst),
        &ctx.e_inv,
    ));

    // (v)
    let psum = num_traits::pow(BigRational::one() - &third, k) + num_traits::pow(third.clone(), k);
    let cap = &exp_enclosure(&q(-1, 3), b) + &pt(num_traits::pow(q(1, 33), 11));
    out.push(ctx.check("v", "power-sum", kp(k), Relation::Le, &pt(psum), &cap));

    // (vi)
    let ratio = (kpow(k) - &kr) / num_traits::pow(n(k - 2), k - 1);
    out.push(ctx.check("vi", "absurd-case ratio", kp(k), Relation::Le, &pt(ratio), &pt(q(15, 2) * &kr)));
    let decay = |k: usize| n(k - 1) * num_traits::pow(q(1, 2), k - 2);
    out.push(ctx.check("vi", "absurd-case decay", kp(k), Relation::Lt, &pt(decay(k + 1)), &pt(decay(k))));
    let term = q(15, 2) * q(101, 100) * decay(k);
    out.push(ctx.check("vi", "absurd-case term", kp(k), Relation::Lt, &pt(term), &pt(q(1, 4))));
    let limit_ratio = |k: usize| {
        (num_traits::pow(n(k), k - 1) - BigRational::one()) / num_traits::pow(n(k - 2), k - 1)
    };
    out.push(ctx.check("vi", "ratio limit", kp(k), Relation::Lt, &ctx.e2, &pt(limit_ratio(k))));
    out.push(ctx.check("vi", "ratio decreasing", kp(k), Relation::Lt, &pt(limit_ratio(k + 1)), &pt(limit_ratio(k))));

    // (vii)
    let uniform = product_bound_ratio(&[vec![1; k]], k);
    out.push(ctx.check("vii", "product bound uniform", kp(k), Relation::Eq, &pt(uniform), &pt(BigRational::one())));
    let mut rng = stream(cfg.seed, "product-bound", k as u64);
    let points: Vec<Vec<u64>> = (0..cfg.random_points)
        .map(|_| {
            let mut m = vec![1u64; k];
            for _ in 0..2 * k {
                m[rng.gen_range(0..k)] += 1;
            }
            m
        })
        .collect();
    let worst = product_bound_ratio(&points, k);
    out.push(ctx.check(
        "vii",
        "product bound random interior",
        vec![("k", k.to_string()), ("points", cfg.random_points.to_string())],
        Relation::Le,
        &pt(worst),
        &pt(BigRational::one()),
    ));

    // (viii)
    let alpha_base = num_traits::pow(BigRational::one() - n(2) / &kr, k - 2);
    out.push(ctx.check("viii", "alpha base", kp(k), Relation::Lt, &ctx.e2_inv, &pt(alpha_base)));
    out.push(ctx.check(
        "viii",
        "degree factor",
        kp(k),
        Relation::Le,
        &pt(q(9, 10)),
        &pt(BigRational::one() - n(k - 1).recip()),
    ));

    (out, c_thresholds(ctx, k))
}

fn sampled_max(diffs: impl Iterator<Item = Interval>) -> Interval {
    diffs.reduce(|a, b| Interval { lo: a.lo.max(b.lo), hi: a.hi.max(b.hi) }).unwrap_or(pt(BigRational::zero()))
}

fn sampling_checks(ctx: &Ctx, samples: usize) -> Vec<InequalityCheck> {
    let b = ctx.bits;
    let s = samples.max(2);
    let one = BigRational::one();
    let ln = |x: BigRational| pt(x).ln(b);
    let zero = pt(BigRational::zero());
    let params = |extra: &str| vec![("samples", s.to_string()), ("grid", extra.to_string())];
    let mut out = Vec::new();

    // (1 − η) ln(1 + η / (2(1 − η))) − η/2 ≤ 0
    let d = sampled_max((1..s).map(|j| {
        let eta = n(j) / n(s);
        let inner = &one + &eta / (n(2) * (&one - &eta));
        &(&pt(&one - &eta) * &ln(inner)) - &pt(eta / n(2))
    }));
    let mut c = InequalityCheck::decide(
        "viii", "log-one-plus bound", &params("eta = j/samples"), Relation::Le, Method::Sampling, &d, &zero, b,
    );
    c.method = Method::Sampling;
    out.push(c);

    // β ↦ q ln(1 − β) + (1 − q) ln β decreases on (1 − q, 1)
    let d = sampled_max((1..8).flat_map(|j| {
        let one = BigRational::one();
        let qv = q(j, 8);
        let g = {
            let qv = qv.clone();
            move |beta: &BigRational| -> Interval {
                &(&pt(qv.clone()) * &ln(BigRational::one() - beta)) + &(&pt(BigRational::one() - &qv) * &ln(beta.clone()))
            }
        };
        let pts: Vec<BigRational> =
            (1..=s).map(|i| &one - &qv + &qv * n(i) / n(s + 1)).collect();
        pts.windows(2).map(|w| &g(&w[1]) - &g(&w[0])).collect::<Vec<_>>()
    }));
    out.push(InequalityCheck::decide(
        "viii", "beta monotone", &params("q = j/8"), Relation::Lt, Method::Sampling, &d, &zero, b,
    ));

    // q ↦ q ln(η/2) + (1 − q) ln(1 − η/2) − q ln q − (1 − q) ln(1 − q) decreases on (η/2, 1)
    let d = sampled_max((1..10).flat_map(|j| {
        let one = BigRational::one();
        let eta = q(j, 10);
        let a = ln(&eta / n(2));
        let c = ln(&one - &eta / n(2));
        let h = move |qv: &BigRational| -> Interval {
            let t1 = &pt(qv.clone()) * &a;
            let rest = BigRational::one() - qv;
            let t2 = &pt(rest.clone()) * &c;
            let t3 = &pt(qv.clone()) * &ln(qv.clone());
            let t4 = &pt(rest.clone()) * &ln(rest);
            &(&(&t1 + &t2) - &t3) - &t4
        };
        let lo = &eta / n(2);
        let pts: Vec<BigRational> =
            (1..=s).map(|i| &lo + (&one - &lo) * n(i) / n(s + 1)).collect();
        pts.windows(2).map(|w| &h(&w[1]) - &h(&w[0])).collect::<Vec<_>>()
    }));
    out.push(InequalityCheck::decide(
        "viii", "q monotone", &params("eta = j/10"), Relation::Lt, Method::Sampling, &d, &zero, b,
    ));
    out
}

fn global_checks(ctx: &Ctx) -> Vec<InequalityCheck> {
    let b = ctx.bits;
    let none = Vec::new;
    let mut out = Vec::new();
    let cap = &exp_enclosure(&q(-1, 3), b) + &pt(num_traits::pow(q(1, 33), 11));
    out.push(ctx.check("v", "power-sum constant", none(), Relation::Lt, &cap, &pt(q(18, 25))));
    out.push(ctx.check("vi", "decay constant", none(), Relation::Lt, &pt(n(10) * q(1, 512)), &pt(q(1, 50))));
    out.push(ctx.check("viii", "alpha threshold limit", none(), Relation::Lt, &pt(q(80, 9)), &pt(n(10))));
    let beta_limit = (&ctx.ln2 - &pt(q(1, 2))).recip();
    out.push(ctx.check("viii", "beta threshold limit", none(), Relation::Lt, &beta_limit, &pt(q(518, 100))));
    out.push(ctx.check("viii", "second-neighbourhood threshold limit", none(), Relation::Le, &pt(n(8)), &pt(n(8))));
    out.push(ctx.check("viii", "absurd-case threshold limit", none(), Relation::Lt, &pt(q(80, 3)), &pt(q(2667, 100))));
    out
}

/// Runs every check for `k ∈ [kmin, kmax]`, then fixes the smallest grid
/// value of `C` above all claim thresholds and re-checks each threshold
/// against it.
pub fn inequality_battery(cfg: &BatteryConfig) -> Result<BatteryReport, VerifierError> {
    if cfg.kmin < 11 || cfg.kmin > cfg.kmax {
        return Err(VerifierError::BadRange { kmin: cfg.kmin, kmax: cfg.kmax });
    }
    let ctx = Ctx::new(cfg.bits);
    let mut checks = global_checks(&ctx);
    checks.extend(sampling_checks(&ctx, cfg.samples));

    for k in 2..=cfg.simplex_kmax {
        let (count, ok, worst) = simplex_grid_holds(cfg.simplex_total, k);
        let mut c = ctx.check(
            "vii",
            "product bound grid",
            vec![("k", k.to_string()), ("total", cfg.simplex_total.to_string()), ("points", count.to_string())],
            Relation::Le,
            &pt(worst),
            &pt(BigRational::one()),
        );
        if !ok {
            c.verdict = Verdict::Fail;
        }
        checks.push(c);
    }

    let per: Vec<_> = (cfg.kmin..=cfg.kmax).into_par_iter().map(|k| (k, per_k(&ctx, cfg, k))).collect();
    let mut by_claim: BTreeMap<&'static str, BigRational> = BTreeMap::new();
    for (_, (cs, ts)) in &per {
        checks.extend(cs.iter().cloned());
        for (claim, t) in ts {
            let e = by_claim.entry(claim).or_insert_with(BigRational::zero);
            if t.hi > *e {
                *e = t.hi.clone();
            }
        }
    }
    let top = by_claim.values().max().cloned().unwrap_or_else(BigRational::zero);
    let grid = int(1000u64);
    let mut c_star = (&top * &grid).ceil() / &grid;
    if c_star <= top {
        c_star += grid.recip();
    }
    for (k, (_, ts)) in &per {
        for (claim, t) in ts {
            checks.push(ctx.check(
                "viii",
                &format!("{claim} threshold"),
                vec![("k", k.to_string()), ("C", format_rat(&c_star))],
                Relation::Lt,
                t,
                &pt(c_star.clone()),
            ));
        }
    }

    let max_degree_ratio_k11 = (cfg.kmin..=cfg.kmax).contains(&11).then(|| {
        let lhs = (num_traits::pow(n(11), 10) - BigRational::one()).recip();
        let rhs = q(7, 5) * num_traits::pow(q(3, 5) / n(9), 9);
        sci(&(lhs / rhs), 6)
    });
    let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
    Ok(BatteryReport {
        config: cfg.clone(),
        total: checks.len(),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        indeterminate: count(Verdict::Indeterminate),
        minimal_c_by_claim: by_claim.into_iter().map(|(c, v)| (c.to_string(), sci(&v, 6))).collect(),
        minimal_c: format_rat(&c_star),
        max_degree_ratio_k11,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_complete() {
        assert_eq!(partitions(5, 2).len(), 3);
        assert_eq!(partitions(6, 3).len(), 7);
        assert!(partitions(4, 4).iter().all(|p| p.len() == 4 && p.iter().sum::<u64>() == 4));
    }

    #[test]
    fn uniform_point_is_tight() {
        assert_eq!(product_bound_ratio(&[vec![1; 5]], 5), BigRational::one());
        assert_eq!(product_bound_ratio(&[vec![3; 4]], 4), BigRational::one());
    }

    #[test]
    fn small_range_passes() {
        let cfg = BatteryConfig { kmin: 11, kmax: 13, cover_cells: 50, samples: 8, ..Default::default() };
        let r = inequality_battery(&cfg).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| c.verdict != Verdict::Pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!(r.max_degree_ratio_k11.as_deref(), Some("1.05868"));
    }

    #[test]
    fn rejects_bad_range() {
        let cfg = BatteryConfig { kmin: 5, ..Default::default() };
        assert!(inequality_battery(&cfg).is_err());
    }
}
