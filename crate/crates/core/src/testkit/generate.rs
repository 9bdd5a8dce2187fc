//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regex::{Alphabet, Regex};
use crate::rgp::{LabelClass, Rgp};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A regex with exactly `size` syntax nodes over `alphabet`.
pub fn random_regex(rng: &mut impl Rng, size: usize, alphabet: &Alphabet) -> Regex {
    assert!(size >= 1, "regex size must be positive");
    let symbols: Vec<char> = alphabet.iter().collect();
    assert!(!symbols.is_empty(), "alphabet must be nonempty");
    grow(rng, size, &symbols)
}

fn grow(rng: &mut impl Rng, size: usize, symbols: &[char]) -> Regex {
    if size == 1 {
        return Regex::symbol(*symbols.choose(rng).expect("nonempty"));
    }
    if size == 2 || rng.gen_bool(0.25) {
        return Regex::star(grow(rng, size - 1, symbols));
    }
    let left = rng.gen_range(1..size - 1);
    let (l, r) = (grow(rng, left, symbols), grow(rng, size - 1 - left, symbols));
    if rng.gen_bool(0.5) {
        Regex::union(l, r)
    } else {
        Regex::concat(l, r)
    }
}

fn unary_label(plus: bool) -> Regex {
    let a = Regex::symbol('a');
    if plus {
        Regex::plus(a)
    } else {
        a
    }
}

fn skeleton(rng: &mut impl Rng, vertices: usize, arcs: usize) -> Vec<(usize, usize)> {
    (0..arcs).map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices))).collect()
}

fn assemble(alphabet: Alphabet, vertices: usize, arcs: &[(usize, usize)], labels: Vec<Regex>) -> Rgp {
    let mut p = Rgp::new(alphabet);
    for v in 0..vertices {
        p.add_vertex(&format!("v{v}")).expect("distinct names");
    }
    for (&(u, v), label) in arcs.iter().zip(labels) {
        p.add_arc(u, v, label).expect("generated labels use the alphabet");
    }
    p
}

/// A random pattern in the given label class. General labels have between
/// one and `max_label` nodes. A `UnaryAAPlus` pattern with arcs always has
/// at least one `a+`-arc.
pub fn random_rgp(
    rng: &mut impl Rng,
    vertices: usize,
    arcs: usize,
    class: LabelClass,
    alphabet: &Alphabet,
    max_label: usize,
) -> Rgp {
    assert!(vertices >= 1, "need a vertex");
    let skel = skeleton(rng, vertices, arcs);
    let (sigma, labels) = match class {
        LabelClass::AllSingleA => (Alphabet::from_chars("a"), vec![Regex::symbol('a'); arcs]),
        LabelClass::UnaryAAPlus => {
            let forced = if arcs > 0 { rng.gen_range(0..arcs) } else { 0 };
            let labels = (0..arcs).map(|i| {
                let plus = i == forced || rng.gen_bool(0.5);
                unary_label(plus)
            });
            (Alphabet::from_chars("a"), labels.collect())
        }
        LabelClass::General => {
            let labels = (0..arcs).map(|_| {
                let size = rng.gen_range(1..=max_label);
                random_regex(rng, size, alphabet)
            });
            (alphabet.clone(), labels.collect())
        }
    };
    assemble(sigma, vertices, &skel, labels)
}

/// Labels `a` or `a+` with equal odds, so either unary class may result.
pub fn random_unary_pattern(rng: &mut impl Rng, vertices: usize, arcs: usize) -> Rgp {
    let skel = skeleton(rng, vertices, arcs);
    let labels = (0..arcs)
        .map(|_| {
            let plus = rng.gen_bool(0.5);
            unary_label(plus)
        })
        .collect();
    assemble(Alphabet::from_chars("a"), vertices, &skel, labels)
}

/// A directed path on `vertices` vertices labelled `a`, or `a`/`a+` at
/// random when `mixed`.
pub fn random_path_template(rng: &mut impl Rng, vertices: usize, mixed: bool) -> Rgp {
    let skel: Vec<(usize, usize)> = (1..vertices).map(|i| (i - 1, i)).collect();
    let labels = (1..vertices)
        .map(|_| {
            let plus = mixed && rng.gen_bool(0.5);
            unary_label(plus)
        })
        .collect();
    assemble(Alphabet::from_chars("a"), vertices, &skel, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rgp::label_class;

    #[test]
    fn seed_reproduces_instances() {
        let ab = Alphabet::from_chars("ab");
        let a = random_rgp(&mut seeded(0), 4, 5, LabelClass::General, &ab, 4);
        let b = random_rgp(&mut seeded(0), 4, 5, LabelClass::General, &ab, 4);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn sizes_and_classes() {
        let mut rng = seeded(3);
        let ab = Alphabet::from_chars("ab");
        for size in 1..8 {
            assert_eq!(random_regex(&mut rng, size, &ab).node_count(), size);
        }
        for _ in 0..20 {
            let p = random_rgp(&mut rng, 3, 3, LabelClass::UnaryAAPlus, &ab, 4);
            assert_eq!(label_class(&p), LabelClass::UnaryAAPlus);
            let p = random_rgp(&mut rng, 3, 3, LabelClass::AllSingleA, &ab, 4);
            assert_eq!(label_class(&p), LabelClass::AllSingleA);
            let p = random_rgp(&mut rng, 3, 3, LabelClass::General, &ab, 4);
            assert_eq!(crate::rgp::Rgp::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
