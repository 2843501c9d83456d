use indlab::constructions::{limit_density, plan_blowup, plan_separate, realize, recursive_lower_bound};
use indlab::instances::random_connected_pattern;
use indlab::rng::stream;
use indlab::{count_induced, Pattern};
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blowup_count_dominates_lower_bound(seed in any::<u64>(), k in 2usize..=4, n in 0usize..=14) {
        let mut rng = stream(seed, "blowup", 0);
        let p = random_connected_pattern(&mut rng, k, 0.4);
        let tree = plan_blowup(&p, n);
        prop_assert_eq!(tree.size(), n);
        let g = realize(&tree);
        prop_assert_eq!(g.n(), n);
        prop_assert!(count_induced(&p, &g) as u128 >= recursive_lower_bound(&p, &tree).unwrap());
        let sizes = tree.part_sizes();
        if !sizes.is_empty() {
            prop_assert_eq!(sizes.iter().sum::<usize>(), n);
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }
}

#[test]
fn rainbow_clique_blowups_match_their_lower_bound() {
    for k in 3..=4 {
        let p = Pattern::rainbow_clique(k);
        for n in 0..=13 {
            let tree = plan_blowup(&p, n);
            assert_eq!(count_induced(&p, &realize(&tree)) as u128, recursive_lower_bound(&p, &tree).unwrap(), "k={k} n={n}");
        }
    }
}

#[test]
fn separate_family_wins_for_two_disjoint_edges() {
    let two = Pattern::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    let separate = count_induced(&two, &realize(&plan_separate(&two, 16).unwrap()));
    let single = count_induced(&two, &realize(&plan_blowup(&two, 16)));
    assert_eq!(separate, 784);
    assert!(separate > single, "{separate} vs {single}");
    let d = limit_density(&two).unwrap();
    assert!(d.separate_coeff > d.one_blowup_coeff);
    assert_eq!(d.separate_coeff, BigRational::new(1.into(), 64.into()));
}
