use proptest::prelude::*;
use rand::Rng;
use rgphom::rgp::{label_class, structural_predicates, verify_unbalanced_witness, Balance, LabelClass};
use rgphom::testkit::{random_rgp, seeded};
use rgphom::{Alphabet, Rgp};

fn class(i: u8) -> LabelClass {
    [LabelClass::AllSingleA, LabelClass::UnaryAAPlus, LabelClass::General][i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn json_round_trips(seed in any::<u64>(), c in any::<u8>()) {
        let mut rng = seeded(seed);
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(0..=8));
        let p = random_rgp(&mut rng, n, m, class(c), &Alphabet::from_chars("ab"), 5);
        prop_assert_eq!(Rgp::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn single_symbol_patterns_are_graph_databases(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(0..=8));
        let p = random_rgp(&mut rng, n, m, LabelClass::AllSingleA, &Alphabet::from_chars("a"), 1);
        prop_assert_eq!(label_class(&p), LabelClass::AllSingleA);
        prop_assert!(p.is_graph_database());
    }

    #[test]
    fn level_reports_are_checkable(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(0..=7));
        let p = random_rgp(&mut rng, n, m, LabelClass::AllSingleA, &Alphabet::from_chars("a"), 1);
        match structural_predicates(&p).balance {
            Balance::Balanced(levels) => prop_assert!(levels.holds_for(&p)),
            Balance::Unbalanced(steps) => prop_assert!(verify_unbalanced_witness(&p, &steps)),
        }
    }
}
