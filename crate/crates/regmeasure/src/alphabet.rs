//! Ordered alphabets of single-character symbols.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered sequence of distinct single characters. The declaration order is
/// fixed at construction and defines the letter indices used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must contain at least one symbol"));
        }
        if symbols.len() > 255 {
            return Err(Error::invalid("alphabet is limited to 255 symbols"));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::invalid(format!("duplicate alphabet symbol '{c}'")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Two-letter alphabet `{a, b}`, the default carrier for fixtures.
    pub fn ab() -> Self {
        Alphabet {
            symbols: vec!['a', 'b'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Translate a word into letter indices; rejects letters outside the alphabet.
    pub fn encode(&self, word: &str) -> Result<Vec<u8>> {
        word.chars()
            .map(|c| {
                self.index_of(c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::invalid(format!("letter '{c}' outside alphabet {self}")))
            })
            .collect()
    }

    pub fn decode(&self, indices: &[u8]) -> String {
        indices
            .iter()
            .map(|&i| self.symbols[i as usize])
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s.chars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new("aba".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
    }

    #[test]
    fn indices_follow_declaration_order() {
        let a = Alphabet::new("ba".chars()).unwrap();
        assert_eq!(a.index_of('b'), Some(0));
        assert_eq!(a.index_of('a'), Some(1));
        assert_eq!(a.encode("ab").unwrap(), vec![1, 0]);
        assert_eq!(a.decode(&[1, 0]), "ab");
    }

    #[test]
    fn encode_rejects_foreign_letters() {
        let a = Alphabet::ab();
        assert!(a.encode("abc").is_err());
    }
}
