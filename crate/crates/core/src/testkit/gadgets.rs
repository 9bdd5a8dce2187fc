use thiserror::Error;

use crate::regex::{Alphabet, Regex};
use crate::rgp::Rgp;

/// Two patterns and the language fact their n-homomorphism encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPair {
    pub left: Rgp,
    pub right: Rgp,
    pub fact: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("the alphabet needs at least two symbols, found {0}")]
    AlphabetTooSmall(usize),
    #[error("no fresh symbol is left outside the alphabet")]
    NoFreshSymbol,
}

fn single_arc(alphabet: &Alphabet, label: Regex) -> Rgp {
    let mut p = Rgp::new(alphabet.clone());
    let x = p.add_vertex("x").expect("fresh vertex");
    let y = p.add_vertex("y").expect("fresh vertex");
    p.add_arc(x, y, label).expect("label symbols are in the alphabet");
    p
}

/// `left` is one arc labelled `e1`, `right` one arc labelled `e2`:
/// `L(e1) ⊆ L(e2)` iff `right -n-> left`.
pub fn gadget_inclusion(e1: &Regex, e2: &Regex) -> GadgetPair {
    let sigma = e1.symbols().union(&e2.symbols());
    GadgetPair {
        left: single_arc(&sigma, e1.clone()),
        right: single_arc(&sigma, e2.clone()),
        fact: format!("L({e1}) ⊆ L({e2}) iff right -n-> left"),
    }
}

/// `left` is one arc labelled `e`, `right` one arc labelled `Σ*`:
/// `L(e) = Σ*` iff `left -n-> right`.
pub fn gadget_universality(e: &Regex, alphabet: &Alphabet) -> Result<GadgetPair, GadgetError> {
    if alphabet.len() < 2 {
        return Err(GadgetError::AlphabetTooSmall(alphabet.len()));
    }
    let sigma = alphabet.union(&e.symbols());
    let all = Regex::sigma_star(&sigma).expect("nonempty alphabet");
    Ok(GadgetPair {
        left: single_arc(&sigma, e.clone()),
        right: single_arc(&sigma, all),
        fact: format!("L({e}) = {sigma}* iff left -n-> right"),
    })
}

/// Arcs `x -> y` labelled `e1` and `x -> z` labelled `X|e2` for a fresh
/// symbol `X`: `L(e1) ⊆ L(e2)` iff the pattern is not an n-core.
pub fn gadget_ncore(e1: &Regex, e2: &Regex) -> Result<Rgp, GadgetError> {
    let sigma = e1.symbols().union(&e2.symbols());
    let fresh = sigma.fresh_symbol().ok_or(GadgetError::NoFreshSymbol)?;
    let mut full = sigma.clone();
    full.insert(fresh);
    let mut p = Rgp::new(full);
    let x = p.add_vertex("x").expect("fresh vertex");
    let y = p.add_vertex("y").expect("fresh vertex");
    let z = p.add_vertex("z").expect("fresh vertex");
    p.add_arc(x, y, e1.clone()).expect("valid label");
    p.add_arc(x, z, Regex::union(Regex::symbol(fresh), e2.clone())).expect("valid label");
    Ok(p)
}

/// Each undirected edge becomes two opposite `a`-arcs; vertices are named
/// by their index.
pub fn all_a_lift(vertices: usize, edges: &[(usize, usize)]) -> Rgp {
    let mut p = Rgp::new(Alphabet::from_chars("a"));
    for v in 0..vertices {
        p.add_vertex(&v.to_string()).expect("distinct names");
    }
    for &(u, v) in edges {
        p.add_arc(u, v, Regex::symbol('a')).expect("valid arc");
        if u != v {
            p.add_arc(v, u, Regex::symbol('a')).expect("valid arc");
        }
    }
    p
}
