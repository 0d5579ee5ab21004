mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poly_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn derivatives_obey_leibniz(a in arb_poly(), b in arb_poly(), v in arb_var()) {
        leibniz(&a, &b, &v)?;
    }

    #[test]
    fn substitution_respects_ring_ops(a in arb_poly(), b in arb_poly(), image in arb_poly()) {
        subst_is_homomorphism(&a, &b, &image)?;
    }

    #[test]
    fn text_and_json_round_trip(a in arb_poly()) {
        json_round_trip(&a)?;
    }

    #[test]
    fn gamma_expansion_round_trip((n, cs) in arb_univariate_coeffs(9)) {
        gamma_round_trip(n, &cs)?;
    }

    #[test]
    fn frobenius_expansion_round_trip((n, cs) in arb_univariate_coeffs(9)) {
        frobenius_round_trip(n, &cs)?;
    }

    #[test]
    fn partial_gamma_expansion_round_trip((n, cs) in arb_partial_gamma()) {
        partial_gamma_round_trip(n, &cs)?;
    }

    #[test]
    fn esym_expansion_round_trip(cs in arb_esym()) {
        esym_round_trip(&cs)?;
    }

    #[test]
    fn permutation_statistics(p in arb_perm()) {
        perm_identities(&p)?;
    }

    #[test]
    fn stirling_statistics((k, w) in arb_stirling()) {
        stirling_identities(k, &w)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_field_laws(a in arb_series(5), b in arb_series(5)) {
        series_laws(&a, &b)?;
    }
}

#[test]
fn tree_families_are_duplicate_free() {
    tree_families_deduplicate(6).unwrap();
}

#[test]
fn statistics_exhaustive_small() {
    use eulab_core::permstats::for_each_perm;
    use eulab_core::stirlingperm::for_each_stirling;
    for n in 1..=7 {
        for_each_perm(n, |p| perm_identities(p).unwrap()).unwrap();
    }
    for k in 1..=3 {
        for n in 1..=5 {
            for_each_stirling(n, k, |w| stirling_identities(k, w).unwrap()).unwrap();
        }
    }
}
