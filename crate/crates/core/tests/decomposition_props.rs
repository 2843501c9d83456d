use indlab::constructions::{plan_blowup, realize};
use indlab::decomposition::{audit, AuditMode};
use indlab::instances::{perturbed_blowup, random_connected_pattern, random_host};
use indlab::rng::stream;
use indlab::{count_induced, Pattern};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn corpus_pattern(seed: u64, k: usize) -> Pattern {
    let mut rng = stream(seed, "pattern", 0);
    match seed % 4 {
        0 => Pattern::rainbow_clique(k),
        1 => Pattern::rainbow_path(k),
        2 if k >= 3 => Pattern::rainbow_cycle(k),
        _ => random_connected_pattern(&mut rng, k, 0.3),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn split_and_sided_counts(seed in any::<u64>(), k in 3usize..=5, extra in 0usize..=6, flips in 0usize..12) {
        let p = corpus_pattern(seed, k);
        let mut rng = stream(seed, "host", 0);
        let n = k + extra;
        let h = if rng.gen_bool(0.7) {
            perturbed_blowup(&mut rng, &p, n, flips)
        } else {
            random_host(&mut rng, n, p.palette())
        };
        let r = audit(&p, &h, None).unwrap();
        prop_assert_eq!(r.hm + r.hg + r.hb, count_induced(&p, &h));
        prop_assert_eq!(r.partition_sizes.iter().sum::<usize>(), n);
        prop_assert!(r.sided.violations.is_empty(), "{:?}", r.sided.violations);
        if r.hb > 0 {
            let min = r.sided.min_pairs_per_bad_copy.unwrap();
            match r.sided.mode {
                AuditMode::Clique => {
                    prop_assert!(min >= k - 2);
                    prop_assert!(r.sided.s >= 2 * (k as u64 - 2) * r.hb);
                }
                AuditMode::Connected => {
                    prop_assert!(min >= 1);
                    prop_assert!(r.sided.j >= r.hb);
                }
            }
        }
        prop_assert!(r.bounds.is_clean(), "{:?}", r.bounds.violations);
    }
}

#[test]
fn natural_blowups_are_aligned() {
    for p in [Pattern::rainbow_clique(3), Pattern::rainbow_clique(4), Pattern::rainbow_path(4), Pattern::rainbow_cycle(5)] {
        for n in [p.k(), 2 * p.k(), 11] {
            let r = audit(&p, &realize(&plan_blowup(&p, n)), None).unwrap();
            assert!(r.delta.is_zero(), "k={} n={n}", p.k());
            assert_eq!(r.hb, 0);
            assert_eq!(r.misaligned, 0);
            assert!(r.is_clean());
        }
    }
}
