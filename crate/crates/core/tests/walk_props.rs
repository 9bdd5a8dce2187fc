use proptest::prelude::*;
use rand::Rng;
use rgphom::regex::concat_inclusion;
use rgphom::rgp::LabelClass;
use rgphom::testkit::{oracle_walks, random_regex, random_rgp, seeded, OracleBudget};
use rgphom::walk::WalkSearch;
use rgphom::Alphabet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Soundness of every returned walk and completeness against the
    /// derivative-based walk oracle.
    #[test]
    fn walks_match_the_oracle(seed in any::<u64>()) {
        let ab = Alphabet::from_chars("ab");
        let mut rng = seeded(seed);
        let (n, m) = (rng.gen_range(1..=5), rng.gen_range(0..=6));
        let q = random_rgp(&mut rng, n, m, LabelClass::General, &ab, 4);
        let size = rng.gen_range(1..=4);
        let e = random_regex(&mut rng, size, &ab);
        let oracle = oracle_walks(&q, &e, &OracleBudget::default()).unwrap();
        let search = WalkSearch::new(&q, &e);
        for u in q.vertices() {
            for (v, w) in search.from_source(u).into_iter().enumerate() {
                prop_assert_eq!(w.is_some(), oracle.contains_key(&(u, v)), "pair ({}, {})", u, v);
                if let Some(w) = w {
                    prop_assert!(!w.is_empty() && w.len() <= search.bound());
                    prop_assert!(concat_inclusion(&w.labels(&q), &e).holds());
                }
            }
        }
    }
}
