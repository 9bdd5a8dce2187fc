use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;

use super::ast::{Regex, Word};
use super::dfa::determinize;
use super::inclusion::concat_inclusion;
use super::nfa::compile_nfa;
use super::RegexError;

/// Default cap on enumerated words (and explored prefixes).
pub const DEFAULT_WORD_CAP: usize = 100_000;

/// All words of `L(b)` of length at most `bound`, by bounded subset search
/// over the compiled automaton.
pub fn truncated_words(b: &Regex, bound: usize, cap: usize) -> Result<BTreeSet<Word>, RegexError> {
    let nfa = compile_nfa(b);
    let symbols: Vec<char> = b.symbols().iter().collect();
    let mut out = BTreeSet::new();
    let mut explored = 0usize;
    let mut start = FixedBitSet::with_capacity(nfa.num_states());
    start.insert(nfa.initial());
    let mut layer = vec![(Vec::new(), start)];
    for depth in 0..=bound {
        let mut next = Vec::new();
        for (prefix, states) in layer {
            explored += 1;
            if explored > cap {
                return Err(RegexError::CapExceeded { cap });
            }
            if states.ones().any(|q| nfa.is_accepting(q)) {
                out.insert(Word(prefix.clone()));
                if out.len() > cap {
                    return Err(RegexError::CapExceeded { cap });
                }
            }
            if depth == bound {
                continue;
            }
            for &c in &symbols {
                let mut succ = FixedBitSet::with_capacity(nfa.num_states());
                for q in states.ones() {
                    for t in nfa.successors(q, c) {
                        succ.insert(t);
                    }
                }
                if !succ.is_clear() {
                    let mut w = prefix.clone();
                    w.push(c);
                    next.push((w, succ));
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Both sides of the truncation equivalence for `L(B1)···L(Bk) ⊆ L(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    /// Exact inclusion of the full concatenation.
    pub full: bool,
    /// Inclusion of the concatenation of the truncations.
    pub truncated: bool,
    /// Truncation length used for each factor (`n_A * n_i`).
    pub bounds: Vec<usize>,
}

impl TruncationReport {
    pub fn agrees(&self) -> bool {
        self.full == self.truncated
    }
}

/// Computes both sides of the truncation equivalence. Factor `i` is truncated
/// at `n_A * n_i`, with `n_A`, `n_i` the state counts of the compiled automata.
///
/// The truncated side is evaluated factor by factor: the set of states of a
/// deterministic automaton for `A` reachable after each truncated factor.
pub fn truncation_equivalence_check(a: &Regex, bs: &[Regex], cap: usize) -> Result<TruncationReport, RegexError> {
    let full = concat_inclusion(bs, a).holds();
    let n_a = compile_nfa(a).num_states();
    let sigma = bs.iter().fold(a.symbols(), |acc, b| acc.union(&b.symbols()));
    let dfa = determinize(&compile_nfa(a), &sigma);

    let mut bounds = Vec::with_capacity(bs.len());
    let mut reached: HashSet<usize> = HashSet::from([dfa.initial()]);
    for b in bs {
        let bound = n_a * compile_nfa(b).num_states();
        bounds.push(bound);
        let words = truncated_words(b, bound, cap)?;
        let mut next = HashSet::new();
        for &q in &reached {
            for w in &words {
                next.insert(dfa.run_from(q, w.symbols()).expect("alphabet covers factor symbols"));
            }
        }
        reached = next;
    }
    let truncated = reached.iter().all(|&q| dfa.is_accepting(q));
    Ok(TruncationReport { full, truncated, bounds })
}
