//! Input strings, finite test domains, and the pairing function `⟨x, i⟩`.
//!
//! Pairing is fixed as `1^{|x|} 0 x idx(i)` where `idx(i)` writes `i + 1` in
//! binary with its leading `1` dropped (so `0 -> ""`, `1 -> "0"`, `2 -> "1"`,
//! `3 -> "00"`, ...). The `1^{|x|} 0` prefix makes the encoding
//! self-delimiting, and `idx` is a shortlex-monotone bijection, so for a fixed
//! `x` larger indices never produce smaller pair strings. Pair strings are
//! written over `{0, 1}`; over the default binary alphabet they stay inside
//! the input alphabet.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(String);

impl Word {
    pub fn new(s: impl Into<String>) -> Self {
        Word(s.into())
    }

    pub fn empty() -> Self {
        Word(String::new())
    }

    /// `0^n`.
    pub fn zeros(n: usize) -> Self {
        Word("0".repeat(n))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Length in symbols.
    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.to_string())
    }
}

impl From<String> for Word {
    fn from(s: String) -> Self {
        Word(s)
    }
}

// Shortlex: shorter words first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn index_code(i: u64) -> String {
    let bits = format!("{:b}", i as u128 + 1);
    bits[1..].to_string()
}

fn index_decode(code: &str) -> Option<u64> {
    if !code.chars().all(|c| c == '0' || c == '1') || code.len() > 63 {
        return None;
    }
    let value = u64::from_str_radix(&format!("1{code}"), 2).ok()?;
    Some(value - 1)
}

/// `⟨x, i⟩`.
pub fn pair(x: &Word, i: u64) -> Word {
    let n = x.len();
    let mut s = String::with_capacity(2 * n + 8);
    s.extend(std::iter::repeat_n('1', n));
    s.push('0');
    s.push_str(x.as_str());
    s.push_str(&index_code(i));
    Word(s)
}

/// Inverse of [`pair`]; `None` when `w` is not a pair encoding.
pub fn unpair(w: &Word) -> Option<(Word, u64)> {
    let chars: Vec<char> = w.as_str().chars().collect();
    let k = chars.iter().take_while(|&&c| c == '1').count();
    if chars.get(k) != Some(&'0') || chars.len() < 2 * k + 1 {
        return None;
    }
    let x: String = chars[k + 1..2 * k + 1].iter().collect();
    let rest: String = chars[2 * k + 1..].iter().collect();
    let i = index_decode(&rest)?;
    Some((Word(x), i))
}

/// All strings over `alphabet` of length at most `max_len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub alphabet: Vec<char>,
    pub max_len: usize,
}

impl Default for Domain {
    fn default() -> Self {
        Domain::binary(6)
    }
}

impl Domain {
    pub fn binary(max_len: usize) -> Self {
        Domain {
            alphabet: vec!['0', '1'],
            max_len,
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() <= self.max_len && w.as_str().chars().all(|c| self.alphabet.contains(&c))
    }

    /// Words of exactly length `n`, lexicographic in alphabet order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|prefix| {
                    self.alphabet.iter().map(move |&c| {
                        let mut s = prefix.clone();
                        s.push(c);
                        s
                    })
                })
                .collect();
        }
        out.into_iter().map(Word).collect()
    }

    /// Every word in the domain in shortlex order.
    pub fn words(&self) -> Vec<Word> {
        (0..=self.max_len)
            .flat_map(|n| self.words_of_length(n))
            .collect()
    }
}

/// String-to-string FP maps, used to compose gap programs with FP functions
/// and to steer target functions to their pair arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrMap {
    Identity,
    /// `x ↦ 0^{|x|}`.
    Unary,
    /// `⟨x, i⟩ ↦ x`.
    First,
    /// `⟨x, i⟩ ↦ ⟨m(x), i⟩`.
    MapFirst(Box<StrMap>),
    /// Apply the first map, then the second.
    Then(Box<StrMap>, Box<StrMap>),
}

impl StrMap {
    pub fn map_first(inner: StrMap) -> Self {
        StrMap::MapFirst(Box::new(inner))
    }

    pub fn then(self, next: StrMap) -> Self {
        StrMap::Then(Box::new(self), Box::new(next))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        match self {
            StrMap::Identity => Ok(w.clone()),
            StrMap::Unary => Ok(Word::zeros(w.len())),
            StrMap::First => unpair(w)
                .map(|(x, _)| x)
                .ok_or_else(|| Error::Domain(format!("{w} is not a pair"))),
            StrMap::MapFirst(inner) => {
                let (x, i) =
                    unpair(w).ok_or_else(|| Error::Domain(format!("{w} is not a pair")))?;
                Ok(pair(&inner.apply(&x)?, i))
            }
            StrMap::Then(a, b) => b.apply(&a.apply(w)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&Word::from(""), 0).as_str(), "0");
        assert_eq!(pair(&Word::from("ab"), 1).as_str(), "110ab0");
        assert_eq!(pair(&Word::from("01"), 3).as_str(), "1100100");
        assert_eq!(unpair(&Word::from("1100100")), Some((Word::from("01"), 3)));
        assert_eq!(unpair(&Word::from("1")), None);
        assert_eq!(unpair(&Word::from("110a")), None);
    }

    #[test]
    fn index_code_is_shortlex_monotone() {
        let codes: Vec<Word> = (0..200).map(|i| Word(index_code(i))).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for (i, c) in codes.iter().enumerate() {
            assert_eq!(index_decode(c.as_str()), Some(i as u64));
        }
    }

    #[test]
    fn domain_enumeration() {
        let d = Domain::binary(3);
        let words = d.words();
        assert_eq!(words.len(), 15);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(d.contains(&Word::from("101")));
        assert!(!d.contains(&Word::from("1010")));
        assert!(!d.contains(&Word::from("a")));
    }

    #[test]
    fn str_maps() {
        let p = pair(&Word::from("101"), 4);
        assert_eq!(StrMap::First.apply(&p).unwrap(), Word::from("101"));
        assert_eq!(
            StrMap::map_first(StrMap::Unary).apply(&p).unwrap(),
            pair(&Word::zeros(3), 4)
        );
        assert_eq!(
            StrMap::First.then(StrMap::Unary).apply(&p).unwrap(),
            Word::zeros(3)
        );
        assert!(StrMap::First.apply(&Word::from("1")).is_err());
    }

    proptest::proptest! {
        #[test]
        fn pair_roundtrip(x in "[01ab]{0,8}", i in 0u64..100_000) {
            let x = Word::new(x);
            proptest::prop_assert_eq!(unpair(&pair(&x, i)), Some((x, i)));
        }
    }
}
