use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::ast::{Alphabet, Regex, Symbol};

/// Epsilon-free nondeterministic automaton with a single initial state.
///
/// States are `0..num_states()`; every state is reachable from the initial
/// state, which is always state 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    accepting: FixedBitSet,
    // sorted, deduplicated (symbol, target) pairs per state
    transitions: Vec<Vec<(Symbol, usize)>>,
}

/// Thompson construction followed by epsilon elimination and trimming.
///
/// The result has at most `2 * ast.node_count()` states.
pub fn compile_nfa(ast: &Regex) -> Nfa {
    let mut b = Thompson::default();
    let (start, end) = b.build(ast);
    b.eliminate_epsilons(start, end)
}

#[derive(Default)]
struct Thompson {
    eps: Vec<Vec<usize>>,
    sym: Vec<Vec<(Symbol, usize)>>,
}

impl Thompson {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.sym.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, ast: &Regex) -> (usize, usize) {
        match ast {
            Regex::Symbol(c) => {
                let s = self.state();
                let e = self.state();
                self.sym[s].push((*c, e));
                (s, e)
            }
            Regex::Union(l, r) => {
                let s = self.state();
                let e = self.state();
                let (ls, le) = self.build(l);
                let (rs, re) = self.build(r);
                self.eps[s].extend([ls, rs]);
                self.eps[le].push(e);
                self.eps[re].push(e);
                (s, e)
            }
            Regex::Concat(l, r) => {
                let (ls, le) = self.build(l);
                let (rs, re) = self.build(r);
                self.eps[le].push(rs);
                (ls, re)
            }
            Regex::Star(inner) => {
                let s = self.state();
                let e = self.state();
                let (is, ie) = self.build(inner);
                self.eps[s].extend([is, e]);
                self.eps[ie].extend([is, e]);
                (s, e)
            }
        }
    }

    fn closure(&self, q: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.eps.len());
        let mut stack = vec![q];
        seen.insert(q);
        while let Some(x) = stack.pop() {
            for &y in &self.eps[x] {
                if !seen.put(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn eliminate_epsilons(&self, start: usize, end: usize) -> Nfa {
        let n = self.eps.len();
        let mut accepting = FixedBitSet::with_capacity(n);
        let mut transitions = vec![Vec::new(); n];
        for q in 0..n {
            let cl = self.closure(q);
            if cl.contains(end) {
                accepting.insert(q);
            }
            for p in cl.ones() {
                transitions[q].extend(self.sym[p].iter().copied());
            }
        }
        Nfa::trimmed(start, accepting, transitions)
    }
}

impl Nfa {
    /// Builds from raw parts, keeping only states reachable from `initial`
    /// and renumbering them in breadth-first order.
    pub fn trimmed(initial: usize, accepting: FixedBitSet, transitions: Vec<Vec<(Symbol, usize)>>) -> Nfa {
        let n = transitions.len();
        let mut index = vec![usize::MAX; n];
        let mut order = vec![initial];
        index[initial] = 0;
        let mut queue = VecDeque::from([initial]);
        while let Some(q) = queue.pop_front() {
            for &(_, t) in &transitions[q] {
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut acc = FixedBitSet::with_capacity(order.len());
        let mut trans = Vec::with_capacity(order.len());
        for (new, &old) in order.iter().enumerate() {
            if accepting.contains(old) {
                acc.insert(new);
            }
            let mut ts: Vec<(Symbol, usize)> = transitions[old].iter().map(|&(c, t)| (c, index[t])).collect();
            ts.sort_unstable();
            ts.dedup();
            trans.push(ts);
        }
        Nfa { accepting: acc, transitions: trans }
    }

    /// Automaton for the language `{ε}`.
    pub fn epsilon() -> Nfa {
        let mut accepting = FixedBitSet::with_capacity(1);
        accepting.insert(0);
        Nfa { accepting, transitions: vec![Vec::new()] }
    }

    /// Automaton for the concatenation of the given languages, in order.
    pub fn concat_all<'a, I: IntoIterator<Item = &'a Nfa>>(parts: I) -> Nfa {
        parts.into_iter().fold(Nfa::epsilon(), |acc, next| acc.concat(next))
    }

    /// Epsilon-free concatenation: accepting states of `self` inherit the
    /// outgoing transitions of `other`'s initial state.
    pub fn concat(&self, other: &Nfa) -> Nfa {
        let off = self.num_states();
        let n = off + other.num_states();
        let mut transitions: Vec<Vec<(Symbol, usize)>> = Vec::with_capacity(n);
        let mut accepting = FixedBitSet::with_capacity(n);
        let second_nullable = other.is_accepting(other.initial());
        for q in 0..off {
            let mut ts = self.transitions[q].clone();
            if self.is_accepting(q) {
                ts.extend(other.transitions[other.initial()].iter().map(|&(c, t)| (c, t + off)));
                if second_nullable {
                    accepting.insert(q);
                }
            }
            transitions.push(ts);
        }
        for q in 0..other.num_states() {
            transitions.push(other.transitions[q].iter().map(|&(c, t)| (c, t + off)).collect());
            if other.is_accepting(q) {
                accepting.insert(q + off);
            }
        }
        Nfa::trimmed(0, accepting, transitions)
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(q)
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting.ones()
    }

    pub fn transitions_from(&self, q: usize) -> &[(Symbol, usize)] {
        &self.transitions[q]
    }

    pub fn successors(&self, q: usize, c: Symbol) -> impl Iterator<Item = usize> + '_ {
        self.transitions[q].iter().filter(move |&&(s, _)| s == c).map(|&(_, t)| t)
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    /// Symbols used on some transition.
    pub fn symbols(&self) -> Alphabet {
        self.transitions.iter().flatten().map(|&(c, _)| c).collect()
    }

    /// Subset simulation.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current = FixedBitSet::with_capacity(self.num_states());
        current.insert(self.initial());
        for &c in word {
            let mut next = FixedBitSet::with_capacity(self.num_states());
            for q in current.ones() {
                for t in self.successors(q, c) {
                    next.insert(t);
                }
            }
            if next.is_clear() {
                return false;
            }
            current = next;
        }
        current.ones().any(|q| self.is_accepting(q))
    }

    /// Whether some accepting state is reachable (always true for compiled regexes).
    pub fn has_reachable_accepting(&self) -> bool {
        !self.accepting.is_clear()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn nfa(s: &str) -> Nfa {
        compile_nfa(&parse_regex(s, &Alphabet::from_chars("ab")).unwrap())
    }

    fn a_pow(n: usize) -> Vec<Symbol> {
        vec!['a'; n]
    }

    #[test]
    fn single_symbol_has_two_states() {
        let m = nfa("a");
        assert_eq!(m.num_states(), 2);
        assert!(m.accepts(&['a']));
        assert!(!m.accepts(&[]));
        assert!(!m.accepts(&['a', 'a']));
        assert!(!m.accepts(&['b']));
    }

    #[test]
    fn star_accepts_empty_word_at_initial_state() {
        let m = nfa("a*");
        assert!(m.is_accepting(m.initial()));
    }

    #[test]
    fn plus_rejects_empty_and_accepts_powers() {
        let m = nfa("a+");
        assert!(!m.accepts(&a_pow(0)));
        for n in 1..=6 {
            assert!(m.accepts(&a_pow(n)), "a^{n}");
        }
    }

    #[test]
    fn state_count_bound() {
        for s in ["a", "a|b", "(a|b)*", "a+", "(ab|b)*a", "((a*)*)*", "a*b*"] {
            let e = parse_regex(s, &Alphabet::from_chars("ab")).unwrap();
            assert!(compile_nfa(&e).num_states() <= 2 * e.node_count(), "{s}");
        }
    }

    #[test]
    fn concatenation_of_automata() {
        let m = Nfa::concat_all([&nfa("a"), &nfa("b*"), &nfa("a")]);
        assert!(m.accepts(&['a', 'a']));
        assert!(m.accepts(&['a', 'b', 'b', 'a']));
        assert!(!m.accepts(&['a', 'b']));
        let e = Nfa::concat_all(std::iter::empty());
        assert!(e.accepts(&[]));
        assert!(!e.accepts(&['a']));
        let nullable = Nfa::concat_all([&nfa("a*"), &nfa("b*")]);
        assert!(nullable.accepts(&[]));
        assert!(nullable.accepts(&['b']));
    }
}
