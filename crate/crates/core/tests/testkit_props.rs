use proptest::prelude::*;
use rand::Rng;
use rgphom::nhom::is_n_core;
use rgphom::regex::{language_inclusion, universality};
use rgphom::rgp::LabelClass;
use rgphom::testkit::{
    gadget_inclusion, gadget_ncore, gadget_universality, oracle_n_hom, random_regex, random_rgp, seeded, OracleBudget,
};
use rgphom::{n_hom, Alphabet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gadgets_encode_their_facts(s1 in 1usize..=6, s2 in 1usize..=6, seed in any::<u64>()) {
        let ab = Alphabet::from_chars("ab");
        let mut rng = seeded(seed);
        let (e1, e2) = (random_regex(&mut rng, s1, &ab), random_regex(&mut rng, s2, &ab));
        let included = language_inclusion(&e1, &e2).holds();
        let g = gadget_inclusion(&e1, &e2);
        prop_assert_eq!(n_hom(&g.right, &g.left).unwrap().is_some(), included);
        prop_assert_eq!(!is_n_core(&gadget_ncore(&e1, &e2).unwrap()).unwrap().is_core(), included);
        let u = gadget_universality(&e1, &ab).unwrap();
        prop_assert_eq!(n_hom(&u.left, &u.right).unwrap().is_some(), universality(&e1, &ab).unwrap().holds());
    }

    #[test]
    fn larger_oracle_budgets_never_flip_answers(seed in any::<u64>()) {
        let ab = Alphabet::from_chars("ab");
        let mut rng = seeded(seed);
        let (pn, qn, pa, qa) = (rng.gen_range(1..=3), rng.gen_range(1..=4), rng.gen_range(0..=3), rng.gen_range(0..=5));
        let p = random_rgp(&mut rng, pn, pa, LabelClass::General, &ab, 4);
        let q = random_rgp(&mut rng, qn, qa, LabelClass::General, &ab, 4);
        let tight = OracleBudget { max_walk_len: 2, max_word_len: 2, max_mappings: 64 };
        let mut answers = Vec::new();
        for budget in [tight, OracleBudget { max_walk_len: 8, max_word_len: 8, ..tight }, OracleBudget::default()] {
            if let Ok(a) = oracle_n_hom(&p, &q, &budget) {
                answers.push(a.is_some());
            }
        }
        prop_assert!(answers.windows(2).all(|w| w[0] == w[1]), "{:?}", answers);
    }
}
