//! Eventually-periodic binary sequences and the relations `F_n`, `E_0`, `E_0*`.
//!
//! A [`BinSeq`] is stored as `prefix · period^∞` in canonical form: the period
//! is primitive and the prefix is as short as possible. Two values are
//! structurally equal exactly when they denote the same infinite sequence, so
//! `BinSeq` can be used directly as a set or map key.
//!
//! Text form is `BITS? '(' BITS ')'`, e.g. `(0)`, `011(0)`, `(01)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinSeq {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

impl BinSeq {
    /// Builds the canonical form of `prefix · period^∞`.
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self::canonicalize(prefix, period))
    }

    /// Same as [`BinSeq::new`] but over `'0'`/`'1'` words.
    pub fn from_words(prefix: &str, period: &str) -> Result<Self> {
        Self::new(parse_bits(prefix)?, parse_bits(period)?)
    }

    pub fn zeros() -> Self {
        Self {
            prefix: Vec::new(),
            period: vec![false],
        }
    }

    pub fn ones() -> Self {
        Self {
            prefix: Vec::new(),
            period: vec![true],
        }
    }

    /// `w · c^∞` for a finite word `w` and constant tail `c`.
    pub fn eventually_constant(word: Vec<bool>, tail: bool) -> Self {
        Self::canonicalize(word, vec![tail])
    }

    fn canonicalize(mut prefix: Vec<bool>, mut period: Vec<bool>) -> Self {
        let root = primitive_root_len(&period);
        period.truncate(root);
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Self { prefix, period }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn get(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(&b) => b,
            None => self.period[(i - self.prefix.len()) % self.period.len()],
        }
    }

    /// Bits at indices `0..len`.
    pub fn unroll(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.get(i)).collect()
    }

    pub fn is_eventually_constant(&self) -> bool {
        self.period.len() == 1
    }

    pub fn complement(&self) -> Self {
        Self {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            period: self.period.iter().map(|b| !b).collect(),
        }
    }

    /// `k` such that the first `1` sits at index `k - 1`; `None` for the
    /// all-zero sequence.
    pub fn level(&self) -> Option<usize> {
        if let Some(i) = self.prefix.iter().position(|&b| b) {
            return Some(i + 1);
        }
        self.period
            .iter()
            .position(|&b| b)
            .map(|j| self.prefix.len() + j + 1)
    }

    /// Keeps indices `0..k` and flips every index `>= k`, where `k` is the
    /// level. Involution on each `N_k`.
    pub fn hat(&self) -> Result<Self> {
        let k = self.level().ok_or(Error::NoLevel)?;
        Ok(self.flip_from(k))
    }

    /// Flips every bit at index `>= start`.
    pub fn flip_from(&self, start: usize) -> Self {
        let cut = start.max(self.prefix.len());
        let (mut head, tail) = self.split_at(cut);
        for b in &mut head[start..] {
            *b = !*b;
        }
        Self::canonicalize(head, tail.into_iter().map(|b| !b).collect())
    }

    /// Replaces the bits at indices `0..word.len()` with `word`.
    pub fn with_head(&self, word: &[bool]) -> Self {
        let cut = word.len().max(self.prefix.len());
        let (mut head, tail) = self.split_at(cut);
        head[..word.len()].copy_from_slice(word);
        Self::canonicalize(head, tail)
    }

    /// The first `cut` bits together with one period word aligned at `cut`.
    fn split_at(&self, cut: usize) -> (Vec<bool>, Vec<bool>) {
        let head = self.unroll(cut);
        let tail = (cut..cut + self.period.len())
            .map(|i| self.get(i))
            .collect();
        (head, tail)
    }

    /// `(a_0, 1, a_1, 1, a_2, 1, ...)`.
    pub fn interleave(&self) -> Self {
        let spread = |w: &[bool]| w.iter().flat_map(|&b| [b, true]).collect::<Vec<_>>();
        Self::canonicalize(spread(&self.prefix), spread(&self.period))
    }
}

fn primitive_root_len(word: &[bool]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|&d| n.is_multiple_of(d))
        .find(|&d| (d..n).all(|i| word[i] == word[i - d]))
        .unwrap_or(n)
}

fn parse_bits(word: &str) -> Result<Vec<bool>> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::NonBinary(other)),
        })
        .collect()
}

/// Index past which both sequences are periodic with a common period, plus
/// one full common period. Agreement on `[max(prefixes, from), bound)`
/// implies agreement forever.
fn decision_bound(a: &BinSeq, b: &BinSeq, from: usize) -> usize {
    let start = a.prefix.len().max(b.prefix.len()).max(from);
    start + a.period.len().lcm(&b.period.len())
}

/// `a_i = b_i` for all `i >= n`.
pub fn f_n(a: &BinSeq, b: &BinSeq, n: usize) -> bool {
    (n..decision_bound(a, b, n)).all(|i| a.get(i) == b.get(i))
}

/// Eventual equality.
pub fn e0(a: &BinSeq, b: &BinSeq) -> bool {
    let start = a.prefix.len().max(b.prefix.len());
    f_n(a, b, start)
}

pub fn e0star(a: &BinSeq, b: &BinSeq) -> bool {
    e0(a, b) || e0(a, &b.complement())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Equal,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessLevel {
    pub n: usize,
    pub mode: Mode,
}

/// Least `n` with `a F_n b` if `a E_0 b`.
fn equal_level(a: &BinSeq, b: &BinSeq) -> Option<usize> {
    if !e0(a, b) {
        return None;
    }
    let bound = decision_bound(a, b, 0);
    Some(
        (0..bound)
            .rev()
            .find(|&i| a.get(i) != b.get(i))
            .map_or(0, |i| i + 1),
    )
}

/// Minimal `n` with `a F_n b` (mode equal) or `a F_n b̄` (mode complement).
///
/// A pair cannot be both eventually equal and eventually complementary, so
/// at most one mode applies.
pub fn witness_level(a: &BinSeq, b: &BinSeq) -> Option<WitnessLevel> {
    if let Some(n) = equal_level(a, b) {
        return Some(WitnessLevel {
            n,
            mode: Mode::Equal,
        });
    }
    equal_level(a, &b.complement()).map(|n| WitnessLevel {
        n,
        mode: Mode::Complement,
    })
}

/// Lexicographic order on the infinite sequences. Matches the order of their
/// Cantor-set embeddings.
impl Ord for BinSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        let bound = decision_bound(self, other, 0);
        (0..bound)
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for BinSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[bool]| {
            w.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        };
        write!(f, "{}({})", word(&self.prefix), word(&self.period))
    }
}

impl FromStr for BinSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = |reason| Error::MalformedSeq {
            input: s.to_string(),
            reason,
        };
        let body = s
            .trim()
            .strip_suffix(')')
            .ok_or_else(|| malformed("missing closing ')'"))?;
        let (prefix, period) = body
            .split_once('(')
            .ok_or_else(|| malformed("missing '('"))?;
        if period.is_empty() {
            return Err(malformed("empty period"));
        }
        if period.contains('(') {
            return Err(malformed("nested '('"));
        }
        let bits = |w: &str| parse_bits(w).map_err(|_| malformed("non-binary symbol"));
        Self::new(bits(prefix)?, bits(period)?)
    }
}

impl Serialize for BinSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
