use proptest::prelude::*;
use rand::Rng;
use rgphom::nhom::{compose, is_n_core, NCoreVerdict};
use rgphom::rgp::LabelClass;
use rgphom::testkit::{oracle_n_hom, random_rgp, random_unary_pattern, seeded, OracleBudget};
use rgphom::{n_hom, verify_n_hom, Alphabet, Rgp};

fn small(rng: &mut impl Rng, max_arcs: usize) -> Rgp {
    let sigma = if rng.gen_bool(0.3) { Alphabet::from_chars("a") } else { Alphabet::from_chars("ab") };
    let (n, m) = (rng.gen_range(1..=4), rng.gen_range(0..=max_arcs));
    random_rgp(rng, n, m, LabelClass::General, &sigma, 4)
}

/// Every sub-pattern obtained by keeping a vertex subset and a subset of
/// the arcs between kept vertices, except `p` itself.
fn proper_subpatterns(p: &Rgp) -> Vec<Rgp> {
    let n = p.vertex_count();
    let mut out = Vec::new();
    for vmask in 1u32..1 << n {
        let keep: Vec<usize> = (0..n).filter(|&v| vmask >> v & 1 == 1).collect();
        let inner: Vec<usize> = (0..p.arc_count())
            .filter(|&a| keep.contains(&p.arc(a).from) && keep.contains(&p.arc(a).to))
            .collect();
        for amask in 0u32..1 << inner.len() {
            if keep.len() == n && amask == (1 << inner.len()) - 1 && inner.len() == p.arc_count() {
                continue;
            }
            let chosen: Vec<usize> = (0..inner.len()).filter(|&i| amask >> i & 1 == 1).map(|i| inner[i]).collect();
            out.push(p.sub_rgp(&keep, |a| chosen.contains(&a)).0);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn agrees_with_oracle_and_certifies(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (p, q) = (small(&mut rng, 4), small(&mut rng, 5));
        let oracle = oracle_n_hom(&p, &q, &OracleBudget::default()).unwrap();
        let found = n_hom(&p, &q).unwrap();
        prop_assert_eq!(oracle.is_some(), found.is_some());
        if let Some(h) = found {
            prop_assert!(verify_n_hom(&p, &q, &h));
        }
    }

    #[test]
    fn composition_is_an_n_homomorphism(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (p, q, r) = (small(&mut rng, 4), small(&mut rng, 5), small(&mut rng, 5));
        if let (Some(h1), Some(h2)) = (n_hom(&p, &q).unwrap(), n_hom(&q, &r).unwrap()) {
            prop_assert!(verify_n_hom(&p, &r, &compose(&h1, &h2)));
        }
    }

    #[test]
    fn retract_equivalence(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
        let p = random_unary_pattern(&mut rng, n, m);
        if let NCoreVerdict::NotCore { sub, retraction, .. } = is_n_core(&p).unwrap() {
            prop_assert!(verify_n_hom(&p, &sub, &retraction));
            for _ in 0..5 {
                let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
                let q = random_unary_pattern(&mut rng, n, m);
                prop_assert_eq!(n_hom(&p, &q).unwrap().is_some(), n_hom(&sub, &q).unwrap().is_some());
            }
        }
    }

    #[test]
    fn core_test_matches_all_subpatterns(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = small(&mut rng, 4);
        let exhaustive = proper_subpatterns(&p).iter().all(|s| n_hom(&p, s).unwrap().is_none());
        prop_assert_eq!(is_n_core(&p).unwrap().is_core(), exhaustive);
    }
}
