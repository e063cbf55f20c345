use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite word over the alphabet `{1, ..., n}`.
///
/// The derived order is lexicographic with prefixes first, which on an
/// antichain coincides with the left-to-right order of cylinders.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: usize) -> Self {
        Word(vec![l as u8])
    }

    /// `l` repeated `k` times.
    pub fn repeat(l: usize, k: usize) -> Self {
        Word(vec![l as u8; k])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().map(|&l| l as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: usize) -> Word {
        let mut v = self.0.clone();
        v.push(l as u8);
        Word(v)
    }

    /// `self · l^k`.
    pub fn push_repeat(&self, l: usize, k: usize) -> Word {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(l as u8, k));
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    /// Letters reflected by `l ↦ n + 1 − l`.
    pub fn mirrored(&self, n: usize) -> Word {
        Word(self.0.iter().map(|&l| (n + 1 - l as usize) as u8).collect())
    }

    pub fn in_range(&self, n: usize) -> bool {
        self.0.iter().all(|&l| l >= 1 && (l as usize) <= n)
    }

    /// Splits `self` as `w · l^k` with `k` maximal.
    pub fn strip_trailing(&self, l: usize) -> (Word, usize) {
        let k = self.0.iter().rev().take_while(|&&x| x as usize == l).count();
        (self.prefix(self.len() - k), k)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ϑ");
        }
        let wide = self.0.iter().any(|&l| l > 9);
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(if wide { "." } else { "" }))
    }
}
