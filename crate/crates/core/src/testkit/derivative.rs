//! Brzozowski derivatives over a normalised syntax tree, independent of the
//! automata in [`crate::regex`].

use std::collections::{BTreeSet, HashSet};

use crate::regex::{Regex, Symbol};

/// A regular expression kept in a canonical form: unions are flattened sets
/// without the empty language, concatenations are flattened without the
/// empty word. Derivatives of such terms form a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Empty,
    Eps,
    Sym(Symbol),
    Alt(BTreeSet<Term>),
    Cat(Vec<Term>),
    Star(Box<Term>),
}

impl Term {
    pub fn alt(a: Term, b: Term) -> Term {
        let mut set = BTreeSet::new();
        for t in [a, b] {
            match t {
                Term::Empty => {}
                Term::Alt(s) => set.extend(s),
                other => {
                    set.insert(other);
                }
            }
        }
        match set.len() {
            0 => Term::Empty,
            1 => set.into_iter().next().expect("one element"),
            _ => Term::Alt(set),
        }
    }

    pub fn cat(a: Term, b: Term) -> Term {
        let mut parts = Vec::new();
        for t in [a, b] {
            match t {
                Term::Empty => return Term::Empty,
                Term::Eps => {}
                Term::Cat(v) => parts.extend(v),
                other => parts.push(other),
            }
        }
        match parts.len() {
            0 => Term::Eps,
            1 => parts.pop().expect("one element"),
            _ => Term::Cat(parts),
        }
    }

    pub fn star(a: Term) -> Term {
        match a {
            Term::Empty | Term::Eps => Term::Eps,
            s @ Term::Star(_) => s,
            other => Term::Star(Box::new(other)),
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Term::Empty | Term::Sym(_) => false,
            Term::Eps | Term::Star(_) => true,
            Term::Alt(s) => s.iter().any(Term::nullable),
            Term::Cat(v) => v.iter().all(Term::nullable),
        }
    }

    pub fn derive(&self, c: Symbol) -> Term {
        match self {
            Term::Empty | Term::Eps => Term::Empty,
            Term::Sym(d) if *d == c => Term::Eps,
            Term::Sym(_) => Term::Empty,
            Term::Alt(s) => s.iter().fold(Term::Empty, |acc, t| Term::alt(acc, t.derive(c))),
            Term::Cat(v) => {
                let rest = v[1..].iter().cloned().fold(Term::Eps, Term::cat);
                let head = Term::cat(v[0].derive(c), rest.clone());
                if v[0].nullable() {
                    Term::alt(head, rest.derive(c))
                } else {
                    head
                }
            }
            Term::Star(t) => Term::cat(t.derive(c), self.clone()),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Empty | Term::Eps => {}
            Term::Sym(c) => {
                out.insert(*c);
            }
            Term::Alt(s) => s.iter().for_each(|t| t.collect(out)),
            Term::Cat(v) => v.iter().for_each(|t| t.collect(out)),
            Term::Star(t) => t.collect(out),
        }
    }
}

impl From<&Regex> for Term {
    fn from(e: &Regex) -> Term {
        match e {
            Regex::Symbol(c) => Term::Sym(*c),
            Regex::Union(l, r) => Term::alt(l.as_ref().into(), r.as_ref().into()),
            Regex::Concat(l, r) => Term::cat(l.as_ref().into(), r.as_ref().into()),
            Regex::Star(t) => Term::star(t.as_ref().into()),
        }
    }
}

/// Word membership by repeated derivation.
pub fn matches(e: &Regex, word: &[Symbol]) -> bool {
    word.iter().fold(Term::from(e), |t, &c| t.derive(c)).nullable()
}

/// The derivation search still found new terms after `cap` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordCap {
    pub cap: usize,
}

/// All `∂_w target` with `w ∈ L(source)`, by breadth-first search over
/// pairs of derivatives. Words longer than `max_len` are never needed
/// unless the search is still growing at that depth, which is an error.
pub fn images(source: &Term, target: &Term, max_len: usize) -> Result<BTreeSet<Term>, WordCap> {
    let symbols: Vec<Symbol> = source.symbols().into_iter().collect();
    let mut seen = HashSet::from([(source.clone(), target.clone())]);
    let mut layer = vec![(source.clone(), target.clone())];
    let mut out = BTreeSet::new();
    for depth in 0.. {
        let mut next = Vec::new();
        for (s, t) in &layer {
            if s.nullable() {
                out.insert(t.clone());
            }
            for &c in &symbols {
                let ds = s.derive(c);
                if ds == Term::Empty {
                    continue;
                }
                let pair = (ds, t.derive(c));
                if seen.insert(pair.clone()) {
                    next.push(pair);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if depth == max_len {
            return Err(WordCap { cap: max_len });
        }
        layer = next;
    }
    Ok(out)
}

/// `L(e1) ⊆ L(e2)` by derivation: every word of `e1` leaves `e2` nullable.
pub fn inclusion(e1: &Regex, e2: &Regex, max_len: usize) -> Result<bool, WordCap> {
    Ok(images(&e1.into(), &e2.into(), max_len)?.iter().all(Term::nullable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn re(s: &str) -> Regex {
        parse_regex(s, &crate::regex::Alphabet::from_chars("ab")).unwrap()
    }

    #[test]
    fn membership() {
        assert!(matches(&re("a*b"), &['a', 'a', 'b']));
        assert!(!matches(&re("a*b"), &['b', 'a']));
        assert!(matches(&re("(ab)*"), &[]));
        assert!(matches(&re("a+"), &['a']));
        assert!(!matches(&re("a+"), &[]));
    }

    #[test]
    fn inclusion_cases() {
        assert!(inclusion(&re("a"), &re("a|b"), 1000).unwrap());
        assert!(!inclusion(&re("a*"), &re("a"), 1000).unwrap());
        assert!(inclusion(&re("(a|b)(a|b)*"), &re("(a|b)*"), 1000).unwrap());
        assert!(!inclusion(&re("(a|b)*"), &re("a*b*"), 1000).unwrap());
    }
}
