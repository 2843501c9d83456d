use indlab::exact::{rat, to_f64};
use indlab::verifier::interval::{exp_enclosure, ln_enclosure};
use indlab::verifier::{p_dp, p_exact, p_properties, VerifierError};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn closed_form_matches_dp_on_the_full_grid() {
    for q in 0..=60u64 {
        for t in 1..=60u64 {
            assert_eq!(p_exact(q, t).unwrap(), BigUint::from(p_dp(q, t).unwrap()), "p({q},{t})");
        }
    }
    assert_eq!(p_exact(4, 0), Err(VerifierError::ZeroParts));
}

#[test]
fn grid_properties_hold() {
    let r = p_properties(60, 60).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.oracle_checked > 3000);
    assert!(p_properties(61, 10).is_err());
}

proptest! {
    #[test]
    fn enclosures_contain_float_values(num in 1i64..10_000, den in 1i64..1_000) {
        let x = rat(num, den);
        let f = num as f64 / den as f64;
        let l = ln_enclosure(&x, 80);
        prop_assert!(to_f64(&l.lo) <= f.ln() + 1e-12 && f.ln() - 1e-12 <= to_f64(&l.hi));
        prop_assert!(l.lo <= l.hi);
        let small = rat(num % 40 - 20, den % 7 + 1);
        let e = exp_enclosure(&small, 80);
        let ef = to_f64(&small).exp();
        prop_assert!(to_f64(&e.lo) <= ef * (1.0 + 1e-12) && ef * (1.0 - 1e-12) <= to_f64(&e.hi));
    }
}
