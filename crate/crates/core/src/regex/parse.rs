//! Surface syntax:
//!
//! ```text
//! union   := concat ('|' concat)*
//! concat  := postfix ('.'? postfix)*
//! postfix := atom ('*' | '+')*
//! atom    := SYMBOL | '(' union ')'
//! ```
//!
//! `|` is union, juxtaposition or `.` is concatenation, `*` is Kleene star and
//! `+` is one-or-more. Whitespace is ignored.

use super::ast::{Alphabet, Regex};
use super::RegexError;

pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    let mut p = Parser {
        chars: text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        alphabet,
    };
    if p.chars.is_empty() {
        return Err(RegexError::Syntax { position: 0, message: "empty expression".into() });
    }
    let re = p.union()?;
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(RegexError::Syntax { position: at, message: format!("unexpected '{c}'") });
    }
    Ok(re)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1))
    }

    fn union(&mut self) -> Result<Regex, RegexError> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex, RegexError> {
        let mut left = self.postfix()?;
        loop {
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                Some(c) if c == '(' || Alphabet::is_valid_symbol(c) => {
                    let right = self.postfix()?;
                    left = Regex::concat(left, right);
                }
                _ => return Ok(left),
            }
        }
    }

    fn postfix(&mut self) -> Result<Regex, RegexError> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => e = Regex::star(e),
                Some('+') => e = Regex::plus(e),
                _ => return Ok(e),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex, RegexError> {
        let position = self.position();
        match self.peek() {
            None => Err(RegexError::Syntax { position, message: "unexpected end of expression".into() }),
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(RegexError::Syntax { position: self.position(), message: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if Alphabet::is_valid_symbol(c) => {
                if !self.alphabet.contains(c) {
                    return Err(RegexError::UnknownSymbol { symbol: c, position });
                }
                self.pos += 1;
                Ok(Regex::symbol(c))
            }
            Some(c) => Err(RegexError::Syntax { position, message: format!("unexpected '{c}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    #[test]
    fn single_symbol() {
        assert_eq!(parse_regex("a", &Alphabet::from_chars("a")).unwrap(), Regex::symbol('a'));
    }

    #[test]
    fn postfix_binds_tighter_than_union() {
        let e = parse_regex("a|b*", &ab()).unwrap();
        assert_eq!(e, Regex::union(Regex::symbol('a'), Regex::star(Regex::symbol('b'))));
    }

    #[test]
    fn plus_desugars() {
        let e = parse_regex("a+", &Alphabet::from_chars("a")).unwrap();
        assert_eq!(e, Regex::concat(Regex::symbol('a'), Regex::star(Regex::symbol('a'))));
    }

    #[test]
    fn dot_and_juxtaposition_agree() {
        assert_eq!(parse_regex("a.b.a", &ab()).unwrap(), parse_regex("aba", &ab()).unwrap());
        assert_eq!(parse_regex(" a b ", &ab()).unwrap(), parse_regex("ab", &ab()).unwrap());
    }

    #[test]
    fn concatenation_is_left_nested() {
        let e = parse_regex("abb", &ab()).unwrap();
        let (a, b) = (Regex::symbol('a'), Regex::symbol('b'));
        assert_eq!(e, Regex::concat(Regex::concat(a, b.clone()), b));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_regex("a|", &ab()) {
            Err(RegexError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match parse_regex("(ab", &ab()) {
            Err(RegexError::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        match parse_regex("a)", &ab()) {
            Err(RegexError::Syntax { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_regex("", &ab()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("()", &ab()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("*a", &ab()), Err(RegexError::Syntax { .. })));
    }

    #[test]
    fn symbol_outside_alphabet() {
        assert_eq!(
            parse_regex("ac", &ab()),
            Err(RegexError::UnknownSymbol { symbol: 'c', position: 1 })
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["a", "a|b*", "(a|b)*", "a+", "(ab)+", "a(ba)", "a|(b|a)", "a+*", "a*+", "ba+", "(a|b)(a|b)*"] {
            let e = parse_regex(s, &ab()).unwrap();
            assert_eq!(parse_regex(&e.to_string(), &ab()).unwrap(), e, "{s}");
        }
    }
}
