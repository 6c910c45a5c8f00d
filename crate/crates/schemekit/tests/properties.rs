//! Randomized invariants: orders on random tuples, schemes under relabeling.

use proptest::prelude::*;

use schemekit::constructors;
use schemekit::orders::{ab_implies_grlex, AbOrder};
use schemekit::polycheck::{check_p, Labeling};
use schemekit::MonomialOrder;
use schemekit::scheme::RelationScheme;

fn tuples(arity: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..6, arity)
}

proptest! {
    #[test]
    fn grlex_is_total_and_translation_invariant(
        a in tuples(3), b in tuples(3), c in tuples(3)
    ) {
        let order = MonomialOrder::grlex(3);
        prop_assert!(order.le(&a, &b) || order.le(&b, &a));
        if order.le(&a, &b) {
            let ac: Vec<usize> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<usize> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert!(order.le(&ac, &bc));
        }
    }

    #[test]
    fn lex_agrees_with_slice_comparison(a in tuples(4), b in tuples(4)) {
        let order = MonomialOrder::lex(4);
        prop_assert_eq!(order.cmp(&a, &b), a.cmp(&b));
    }

    #[test]
    fn ab_order_refines_into_grlex(
        m in tuples(2), n in tuples(2), a in 0u8..=10, b in 0u8..10
    ) {
        // Whenever the (a,b) relation holds between degrees, the swapped
        // grlex relation holds too.
        let ab = AbOrder::new(f64::from(a) / 10.0, f64::from(b) / 10.0).unwrap();
        prop_assert!(ab_implies_grlex((m[0], m[1]), (n[0], n[1]), &ab));
    }

    #[test]
    fn check_p_is_invariant_under_axis_swap(n in 3usize..6) {
        // Swapping the two axes of the composition labeling together with the
        // lex significance must not change the verdict.
        let outer = constructors::complete(n).unwrap().scheme;
        let fiber = constructors::cycle(5).unwrap().scheme;
        let built = constructors::composition(&outer, &fiber).unwrap();
        let tensor = built.scheme.intersection_tensor().unwrap();
        let lab = built.labeling.as_ref().unwrap();
        let verdict = check_p(&tensor, lab, &MonomialOrder::lex(2)).unwrap().verdict;
        prop_assert!(verdict);
        let swapped = Labeling::from_pairs(
            2,
            lab.pairs().map(|(alpha, idx)| (vec![alpha[1], alpha[0]], idx)),
        ).unwrap();
        let swapped_order = MonomialOrder::weights(vec![vec![0, 1], vec![1, 0]], 2).unwrap();
        let same = check_p(&tensor, &swapped, &swapped_order).unwrap().verdict;
        prop_assert_eq!(verdict, same);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cycle_schemes_survive_json_round_trip(n in 3usize..12) {
        let built = constructors::cycle(n).unwrap();
        let json = built.scheme.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: schemekit::scheme::SchemeJson = serde_json::from_str(&text).unwrap();
        let restored = RelationScheme::from_json(&back).unwrap();
        prop_assert_eq!(restored.relation_matrix(), built.scheme.relation_matrix());
    }

    #[test]
    fn direct_product_valencies_multiply(n in 2usize..5, m in 2usize..5) {
        let a = constructors::complete(n).unwrap().scheme;
        let b = constructors::cycle(2 * m + 1).unwrap().scheme;
        let built = constructors::direct_product(&[a.clone(), b.clone()]).unwrap();
        let t = built.scheme.intersection_tensor().unwrap();
        let ta = a.intersection_tensor().unwrap();
        let tb = b.intersection_tensor().unwrap();
        let lab = built.labeling.as_ref().unwrap();
        for (alpha, idx) in lab.pairs() {
            let expected = ta.valencies()[alpha[0]] * tb.valencies()[alpha[1]];
            prop_assert_eq!(t.valencies()[idx], expected);
        }
    }
}
