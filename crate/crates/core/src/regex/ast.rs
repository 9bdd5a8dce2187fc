use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A single alphabet symbol. Symbols are always one character wide.
pub type Symbol = char;

/// Characters with a meaning in the surface syntax; they can never be symbols.
pub const META_CHARS: &[char] = &['|', '*', '+', '(', ')', '.'];

/// A finite alphabet of single-character symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet(BTreeSet<Symbol>);

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from the characters of `s` (`"ab"` is `{a, b}`).
    pub fn from_chars(s: &str) -> Self {
        Alphabet(s.chars().filter(|c| !c.is_whitespace()).collect())
    }

    /// Whether `c` is usable as a symbol at all.
    pub fn is_valid_symbol(c: Symbol) -> bool {
        !c.is_whitespace() && !c.is_control() && !META_CHARS.contains(&c)
    }

    pub fn insert(&mut self, c: Symbol) -> bool {
        self.0.insert(c)
    }

    pub fn contains(&self, c: Symbol) -> bool {
        self.0.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// First alphanumeric ASCII character (in code-point order) not in the alphabet.
    pub fn fresh_symbol(&self) -> Option<Symbol> {
        ('0'..='9')
            .chain('A'..='Z')
            .chain('a'..='z')
            .find(|c| !self.contains(*c))
    }
}

impl FromIterator<Symbol> for Alphabet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Alphabet(iter.into_iter().collect())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word. The empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Regular expression syntax tree.
///
/// There is no literal for the empty language or the empty word, so every
/// value denotes a nonempty language. One-or-more (`X+`) is not a node of its
/// own: it is `Concat(X, Star(X))`, and [`Regex::plus`] builds exactly that.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    Symbol(Symbol),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn symbol(c: Symbol) -> Self {
        Regex::Symbol(c)
    }

    pub fn union(l: Regex, r: Regex) -> Self {
        Regex::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: Regex, r: Regex) -> Self {
        Regex::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(e: Regex) -> Self {
        Regex::Star(Box::new(e))
    }

    pub fn plus(e: Regex) -> Self {
        Regex::concat(e.clone(), Regex::star(e))
    }

    /// Left-nested concatenation of a nonempty sequence.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(parts: I) -> Option<Regex> {
        parts.into_iter().reduce(Regex::concat)
    }

    /// Left-nested union of a nonempty sequence.
    pub fn union_all<I: IntoIterator<Item = Regex>>(parts: I) -> Option<Regex> {
        parts.into_iter().reduce(Regex::union)
    }

    /// `(s1|s2|...)*` over the alphabet; `None` when the alphabet is empty.
    pub fn sigma_star(alphabet: &Alphabet) -> Option<Regex> {
        Regex::union_all(alphabet.iter().map(Regex::Symbol)).map(Regex::star)
    }

    /// If this node is `X+` (i.e. `Concat(X, Star(X))`), returns `X`.
    pub fn as_plus(&self) -> Option<&Regex> {
        match self {
            Regex::Concat(l, r) => match r.as_ref() {
                Regex::Star(inner) if inner == l => Some(l),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<Symbol> {
        match self {
            Regex::Symbol(c) => Some(*c),
            _ => None,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Regex::Symbol(_) => 1,
            Regex::Union(l, r) | Regex::Concat(l, r) => 1 + l.node_count() + r.node_count(),
            Regex::Star(e) => 1 + e.node_count(),
        }
    }

    pub fn symbols(&self) -> Alphabet {
        let mut out = Alphabet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Alphabet) {
        match self {
            Regex::Symbol(c) => {
                out.insert(*c);
            }
            Regex::Union(l, r) | Regex::Concat(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
            Regex::Star(e) => e.collect_symbols(out),
        }
    }

    /// Whether the empty word belongs to the language.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Symbol(_) => false,
            Regex::Union(l, r) => l.nullable() || r.nullable(),
            Regex::Concat(l, r) => l.nullable() && r.nullable(),
            Regex::Star(_) => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) if self.as_plus().is_none() => 1,
            _ => 2,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let open = self.precedence() < min;
        if open {
            f.write_str("(")?;
        }
        if let Some(inner) = self.as_plus() {
            inner.fmt_prec(f, 2)?;
            f.write_str("+")?;
        } else {
            match self {
                Regex::Symbol(c) => write!(f, "{c}")?,
                Regex::Union(l, r) => {
                    l.fmt_prec(f, 0)?;
                    f.write_str("|")?;
                    r.fmt_prec(f, 1)?;
                }
                Regex::Concat(l, r) => {
                    l.fmt_prec(f, 1)?;
                    r.fmt_prec(f, 2)?;
                }
                Regex::Star(e) => {
                    e.fmt_prec(f, 2)?;
                    f.write_str("*")?;
                }
            }
        }
        if open {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints surface syntax; reparsing the output gives a structurally equal tree.
impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
