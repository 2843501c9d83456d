use indlab::canon::{are_isomorphic, automorphism_count, canonical_form};
use indlab::counting::{
    count_copies_indexed, count_induced_by_subsets, copies_through_pair, HostIndex, PatternPlan, RoleStats,
};
use indlab::instances::{random_host, random_pattern, shuffled};
use indlab::rng::stream;
use indlab::{count_induced, Color, Pattern};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backtracking_matches_subset_enumeration(seed in any::<u64>(), k in 2usize..=5, n in 0usize..=9) {
        let mut rng = stream(seed, "oracle", 0);
        let p = random_pattern(&mut rng, k, 0.5);
        let extra = rng.gen_range(0..2);
        let h = random_host(&mut rng, n, p.palette() + extra);
        prop_assert_eq!(count_induced(&p, &h), count_induced_by_subsets(&p, &h));
    }

    #[test]
    fn role_degrees_sum_to_k_times_embeddings(seed in any::<u64>(), k in 2usize..=4, n in 2usize..=8) {
        let mut rng = stream(seed, "degrees", 0);
        let p = random_pattern(&mut rng, k, 0.6);
        let h = random_host(&mut rng, n, p.palette());
        let plan = PatternPlan::new(&p);
        let stats = RoleStats::compute(&plan, &HostIndex::new(&h, p.palette()));
        let total: u64 = (0..n).map(|x| stats.d(x)).sum();
        prop_assert_eq!(total, k as u64 * stats.embeddings());
        prop_assert_eq!(stats.embeddings(), stats.copies() * automorphism_count(&p));
        let pair_total: u64 = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y)
            .map(|(x, y)| stats.copies_at_pair(x, y)).sum();
        prop_assert_eq!(pair_total, (k * (k - 1)) as u64 * stats.copies());
    }

    #[test]
    fn relabelling_preserves_counts_and_canonical_form(seed in any::<u64>(), n in 1usize..=9) {
        let mut rng = stream(seed, "relabel", 0);
        let p = random_pattern(&mut rng, 3, 0.7);
        let h = random_host(&mut rng, n, 4);
        let g = shuffled(&mut rng, &h);
        prop_assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
        prop_assert!(are_isomorphic(&h, &g));
        prop_assert_eq!(count_induced(&p, &h), count_induced(&p, &g));
    }

    #[test]
    fn incremental_recolor_tracks_fresh_index(seed in any::<u64>(), n in 3usize..=8, steps in 1usize..20) {
        let mut rng = stream(seed, "recolor", 0);
        let p = random_pattern(&mut rng, 3, 0.8);
        let plan = PatternPlan::new(&p);
        let mut idx = HostIndex::new(&random_host(&mut rng, n, p.palette()), p.palette());
        let mut count = count_copies_indexed(&plan, &idx);
        for _ in 0..steps {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let before = copies_through_pair(&plan, &idx, u, v);
            idx.recolor(u, v, Color(rng.gen_range(0..p.palette() as u16)));
            count = count - before + copies_through_pair(&plan, &idx, u, v);
            let fresh = HostIndex::new(idx.graph(), p.palette());
            prop_assert_eq!(count, count_copies_indexed(&plan, &fresh));
        }
    }
}

#[test]
fn rainbow_cliques_are_rigid() {
    // swapping the ends of a single edge keeps its color
    assert_eq!(automorphism_count(&Pattern::rainbow_clique(2)), 2);
    for k in 3..=6 {
        assert_eq!(automorphism_count(&Pattern::rainbow_clique(k)), 1);
    }
    // reversing a rainbow path changes its colors, so it is not an automorphism
    assert_eq!(automorphism_count(&Pattern::rainbow_path(4)), 1);
}

#[test]
fn non_rainbow_hosts_count_nothing() {
    let k3 = Pattern::rainbow_clique(3);
    let mut h = indlab::ColoredGraph::empty(5, 4);
    for u in 0..5 {
        for v in u + 1..5 {
            h.set(u, v, Color(1));
        }
    }
    assert_eq!(count_induced(&k3, &h), 0);
}
