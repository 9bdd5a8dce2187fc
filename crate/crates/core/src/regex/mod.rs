//! Regular expressions over single-character alphabets: parsing, automata,
//! and the inclusion, universality and concatenation-inclusion decisions.

mod ast;
mod dfa;
mod inclusion;
mod nfa;
mod parse;
mod truncation;

use thiserror::Error;

pub use ast::{Alphabet, Regex, Symbol, Word, META_CHARS};
pub use dfa::{determinize, Dfa};
pub use inclusion::{concat_inclusion, language_inclusion, nfa_included_in_dfa, universality, Inclusion};
pub use nfa::{compile_nfa, Nfa};
pub use parse::parse_regex;
pub use truncation::{truncated_words, truncation_equivalence_check, TruncationReport, DEFAULT_WORD_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("symbol '{symbol}' at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: Symbol, position: usize },
    #[error("the alphabet is empty")]
    EmptyAlphabet,
    #[error("word enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
}
