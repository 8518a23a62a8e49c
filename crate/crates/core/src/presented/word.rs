use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(u64),
    Y(u64),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::Y(j) => write!(f, "y{j}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as a letter (expected x<i> or y<j>)")]
pub struct WordParseError(pub String);

impl FromStr for Letter {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WordParseError(s.to_string());
        let (tag, index) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if index.is_empty() || !index.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let n = index.parse::<u64>().map_err(|_| err())?;
        match tag {
            "x" => Ok(Letter::X(n)),
            "y" => Ok(Letter::Y(n)),
            _ => Err(err()),
        }
    }
}

/// A word over `X ∪ Y`; the empty word is the identity and prints as `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn x(i: u64) -> Self {
        Word::letter(Letter::X(i))
    }

    pub fn y(j: u64) -> Self {
        Word::letter(Letter::Y(j))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of the first occurrence of `factor` as a contiguous subword.
    pub fn find(&self, factor: &Word) -> Option<usize> {
        if factor.is_empty() {
            return Some(0);
        }
        self.0.windows(factor.len()).position(|w| w == factor.0.as_slice())
    }

    /// Every distinct contiguous subword, the empty word included.
    pub fn subwords(&self) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for i in 0..self.len() {
            for j in i + 1..=self.len() {
                out.push(Word(self.0[i..j].to_vec()));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(WordParseError(s.to_string()));
        }
        if tokens == ["e"] {
            return Ok(Word::empty());
        }
        tokens.iter().map(|t| t.parse()).collect::<Result<_, _>>().map(Word)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "x0 y1  y12".parse().unwrap();
        assert_eq!(w, Word(vec![Letter::X(0), Letter::Y(1), Letter::Y(12)]));
        assert_eq!(w.to_string(), "x0 y1 y12");
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "e");
        assert!("z1".parse::<Word>().is_err());
        assert!("x".parse::<Word>().is_err());
        assert!("x-1".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("x1 e".parse::<Word>().is_err());
    }

    #[test]
    fn factors() {
        let w: Word = "x1 x3 x4".parse().unwrap();
        assert_eq!(w.find(&"x3 x4".parse().unwrap()), Some(1));
        assert_eq!(w.find(&"x1 x4".parse().unwrap()), None);
        assert_eq!(w.subwords().len(), 7);
    }
}
