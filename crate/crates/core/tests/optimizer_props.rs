use indlab::constructions::{plan_blowup, plan_frame_blowup, realize};
use indlab::counting::{HostIndex, PatternPlan, RoleStats};
use indlab::instances::{perturbed_blowup, random_host, random_pattern};
use indlab::optimizer::{exact_search, hillclimb, symmetrize, zykov_step, ClimbConfig, Strategy, ZykovOutcome};
use indlab::rng::stream;
use indlab::{count_induced, Color, ColoredGraph, Pattern};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_symmetrization_meets_its_bound(seed in any::<u64>(), k in 2usize..=4, n in 2usize..=9) {
        let mut rng = stream(seed, "zykov", 0);
        let p = random_pattern(&mut rng, k, 0.6);
        let h = if rng.gen_bool(0.5) && n >= k {
            perturbed_blowup(&mut rng, &p, n, 3)
        } else {
            random_host(&mut rng, n, p.palette())
        };
        let plan = PatternPlan::new(&p);
        let stats = RoleStats::compute(&plan, &HostIndex::new(&h, p.palette()));
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    let (step, g) = symmetrize(&plan, &stats, &h, x, y);
                    prop_assert!(step.is_sound(), "{:?}", step);
                    prop_assert_eq!(step.after, count_induced(&p, &g));
                }
            }
        }
        if let ZykovOutcome::Improved { step, .. } = zykov_step(&p, &h) {
            prop_assert!(step.bound > 0 && step.after > step.before);
        }
    }
}

#[test]
fn exact_dominates_constructions_and_matches_climbing() {
    let cases = [
        (Pattern::rainbow_clique(3), 4),
        (Pattern::rainbow_clique(3), 5),
        (Pattern::rainbow_path(3), 5),
        (Pattern::rainbow_clique(2), 3),
        (Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 4),
    ];
    for (p, n) in cases {
        let exact = exact_search(&p, n, 10_000_000).unwrap();
        assert!(exact.optimum >= count_induced(&p, &realize(&plan_blowup(&p, n))));
        for w in &exact.witnesses {
            assert_eq!(count_induced(&p, &w.0), exact.optimum);
        }
        for strategy in [Strategy::First, Strategy::Steepest] {
            let cfg = ClimbConfig { budget: 20_000, strategy, seed: 9, ..ClimbConfig::default() };
            let climbed = hillclimb(&p, n, &cfg).unwrap();
            assert!(climbed.best_count <= exact.optimum);
            assert_eq!(climbed.best_count, exact.optimum, "k={} n={n} {strategy:?}", p.k());
        }
    }
}

#[test]
fn proper_k4_coloring_blowup_has_32_triangles() {
    let k3 = Pattern::rainbow_clique(3);
    let mut k4 = ColoredGraph::empty(4, 4);
    for (u, v, c) in [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)] {
        k4.set(u, v, Color(c));
    }
    assert_eq!(count_induced(&k3, &realize(&plan_frame_blowup(&k4, 8))), 32);
}

#[test]
fn triangle_density_decreases_with_n() {
    let k3 = Pattern::rainbow_clique(3);
    let r4 = exact_search(&k3, 4, 1 << 20).unwrap();
    let r5 = exact_search(&k3, 5, 1 << 24).unwrap();
    assert_eq!(r4.optimum, 4);
    assert!(r5.rho <= r4.rho);
}
