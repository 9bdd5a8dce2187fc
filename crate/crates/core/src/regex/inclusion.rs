use std::collections::VecDeque;

use super::ast::{Alphabet, Regex, Word};
use super::dfa::{determinize, Dfa};
use super::nfa::{compile_nfa, Nfa};
use super::RegexError;

/// Outcome of an inclusion question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    /// A shortest word of the left language missing from the right one.
    Fails(Word),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }

    pub fn counterexample(&self) -> Option<&Word> {
        match self {
            Inclusion::Holds => None,
            Inclusion::Fails(w) => Some(w),
        }
    }
}

/// Breadth-first emptiness search in `left × complement(right)`.
///
/// Symbols are expanded in sorted order, so the counterexample is the
/// shortlex-least word of `L(left) \ L(right)`. Symbols of `left` that
/// `right` does not know send the right-hand side to rejection.
pub fn nfa_included_in_dfa(left: &Nfa, right: &Dfa) -> Inclusion {
    // right-hand state usize::MAX stands for "fell off the right alphabet"
    let off = usize::MAX;
    let rejects = |q: usize| q == off || !right.is_accepting(q);
    let width = right.num_states() + 1;
    let slot = |p: usize, q: usize| p * width + if q == off { width - 1 } else { q };

    let mut parent: Vec<Option<(usize, usize, char)>> = vec![None; left.num_states() * width];
    let mut seen = vec![false; left.num_states() * width];
    let start = (left.initial(), right.initial());
    seen[slot(start.0, start.1)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if left.is_accepting(p) && rejects(q) {
            let mut word = Vec::new();
            let mut cur = slot(p, q);
            while let Some((pp, pq, c)) = parent[cur] {
                word.push(c);
                cur = slot(pp, pq);
            }
            word.reverse();
            return Inclusion::Fails(Word(word));
        }
        for &(c, p2) in left.transitions_from(p) {
            let q2 = if q == off { off } else { right.step(q, c).unwrap_or(off) };
            let s = slot(p2, q2);
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some((p, q, c));
                queue.push_back((p2, q2));
            }
        }
    }
    Inclusion::Holds
}

/// Is `L(e1) ⊆ L(e2)`?
pub fn language_inclusion(e1: &Regex, e2: &Regex) -> Inclusion {
    let sigma = e1.symbols().union(&e2.symbols());
    let right = determinize(&compile_nfa(e2), &sigma);
    nfa_included_in_dfa(&compile_nfa(e1), &right)
}

/// Is `L(e) = Σ*`? Decided as the inclusion `Σ* ⊆ L(e)`.
pub fn universality(e: &Regex, alphabet: &Alphabet) -> Result<Inclusion, RegexError> {
    if let Some(c) = e.symbols().iter().find(|c| !alphabet.contains(*c)) {
        return Err(RegexError::UnknownSymbol { symbol: c, position: 0 });
    }
    let all = Regex::sigma_star(alphabet).ok_or(RegexError::EmptyAlphabet)?;
    Ok(language_inclusion(&all, e))
}

/// Is `L(B1)···L(Bk) ⊆ L(a)`? An empty sequence denotes `{ε}`.
pub fn concat_inclusion(bs: &[Regex], a: &Regex) -> Inclusion {
    let parts: Vec<Nfa> = bs.iter().map(compile_nfa).collect();
    let left = Nfa::concat_all(&parts);
    let sigma = bs.iter().fold(a.symbols(), |acc, b| acc.union(&b.symbols()));
    nfa_included_in_dfa(&left, &determinize(&compile_nfa(a), &sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn re(s: &str) -> Regex {
        parse_regex(s, &Alphabet::from_chars("ab")).unwrap()
    }

    #[test]
    fn inclusion_examples() {
        assert!(language_inclusion(&re("a*"), &re("a*")).holds());
        assert!(language_inclusion(&re("a"), &re("a|b")).holds());
        assert_eq!(language_inclusion(&re("(a|b)*"), &re("a*")), Inclusion::Fails(Word::from("b")));
        // ε is the shortest word of a* missing from a
        assert_eq!(language_inclusion(&re("a*"), &re("a")), Inclusion::Fails(Word::empty()));
    }

    #[test]
    fn universality_examples() {
        let a = Alphabet::from_chars("a");
        let ab = Alphabet::from_chars("ab");
        assert!(universality(&re("a*"), &a).unwrap().holds());
        assert!(universality(&re("(a|b)*"), &ab).unwrap().holds());
        assert_eq!(universality(&re("a*b*"), &ab).unwrap(), Inclusion::Fails(Word::from("ba")));
        assert_eq!(universality(&re("a*"), &ab).unwrap(), Inclusion::Fails(Word::from("b")));
        assert!(universality(&re("b"), &a).is_err());
        assert_eq!(universality(&re("a"), &Alphabet::new()).unwrap_err(), RegexError::UnknownSymbol { symbol: 'a', position: 0 });
    }

    #[test]
    fn concat_inclusion_examples() {
        assert!(concat_inclusion(&[re("a"), re("a*")], &re("a*")).holds());
        assert!(concat_inclusion(&[re("a"), re("a")], &re("(aa)*")).holds());
        assert_eq!(concat_inclusion(&[re("a"), re("aa")], &re("(aa)*")), Inclusion::Fails(Word::from("aaa")));
    }
}
