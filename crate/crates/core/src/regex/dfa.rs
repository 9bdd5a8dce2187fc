use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::ast::{Alphabet, Symbol};
use super::nfa::Nfa;

/// Complete deterministic automaton over a fixed, sorted symbol list.
#[derive(Clone, Debug)]
pub struct Dfa {
    symbols: Vec<Symbol>,
    accepting: FixedBitSet,
    // row-major: delta[state * symbols.len() + symbol_index]
    delta: Vec<usize>,
    sink: Option<usize>,
}

/// Reachable-subset construction over `alphabet` (extended with the NFA's own
/// symbols). The empty subset, when reachable, becomes the explicit sink.
pub fn determinize(nfa: &Nfa, alphabet: &Alphabet) -> Dfa {
    let symbols: Vec<Symbol> = alphabet.union(&nfa.symbols()).iter().collect();
    let k = symbols.len();
    let n = nfa.num_states();

    let mut start = FixedBitSet::with_capacity(n);
    start.insert(nfa.initial());
    let mut ids: HashMap<FixedBitSet, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        debug_assert_eq!(delta.len(), id * k);
        for &c in &symbols {
            let mut next = FixedBitSet::with_capacity(n);
            for q in subsets[id].ones() {
                for t in nfa.successors(q, c) {
                    next.insert(t);
                }
            }
            let target = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    ids.insert(next.clone(), t);
                    subsets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            delta.push(target);
        }
    }
    let mut accepting = FixedBitSet::with_capacity(subsets.len());
    let mut sink = None;
    for (id, s) in subsets.iter().enumerate() {
        if s.ones().any(|q| nfa.is_accepting(q)) {
            accepting.insert(id);
        }
        if s.is_clear() {
            sink = Some(id);
        }
    }
    Dfa { symbols, accepting, delta, sink }
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol_index(&self, c: Symbol) -> Option<usize> {
        self.symbols.binary_search(&c).ok()
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(q)
    }

    pub fn accepting_set(&self) -> &FixedBitSet {
        &self.accepting
    }

    /// The rejecting state that loops on every symbol, if reachable.
    pub fn sink(&self) -> Option<usize> {
        self.sink
    }

    /// Successor on `c`; `None` if `c` is outside the automaton's alphabet.
    pub fn step(&self, q: usize, c: Symbol) -> Option<usize> {
        self.symbol_index(c).map(|i| self.step_index(q, i))
    }

    pub fn step_index(&self, q: usize, i: usize) -> usize {
        self.delta[q * self.symbols.len() + i]
    }

    pub fn run_from(&self, q: usize, word: &[Symbol]) -> Option<usize> {
        word.iter().try_fold(q, |s, &c| self.step(s, c))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run_from(self.initial(), word).is_some_and(|q| self.is_accepting(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{compile_nfa, parse_regex};

    fn dfa(s: &str, alphabet: &str) -> Dfa {
        let sigma = Alphabet::from_chars(alphabet);
        determinize(&compile_nfa(&parse_regex(s, &sigma).unwrap()), &sigma)
    }

    #[test]
    fn single_symbol_gives_init_accept_sink() {
        let d = dfa("a", "a");
        assert_eq!(d.num_states(), 3);
        let acc = d.step(0, 'a').unwrap();
        assert!(d.is_accepting(acc));
        let sink = d.sink().unwrap();
        assert_eq!(d.step(acc, 'a'), Some(sink));
        assert_eq!(d.step(sink, 'a'), Some(sink));
        assert!(!d.is_accepting(sink));
    }

    #[test]
    fn bounded_union_accepts_exactly_a_and_aa() {
        let d = dfa("a|aa", "a");
        let expected = [false, true, true, false, false];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(d.accepts(&vec!['a'; n]), want, "a^{n}");
        }
    }

    #[test]
    fn star_accepts_empty_word() {
        for s in ["a*", "(a|b)*", "(ab)*", "(a+b)*"] {
            assert!(dfa(s, "ab").accepts(&[]), "{s}");
        }
    }

    #[test]
    fn transition_function_is_total() {
        let d = dfa("(ab|b)*a", "ab");
        for q in 0..d.num_states() {
            for &c in d.symbols() {
                assert!(d.step(q, c).unwrap() < d.num_states());
            }
        }
    }
}
