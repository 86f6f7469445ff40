//! Permutations as 1-based value sequences, with the extension operation,
//! alternation predicates, symmetries and pattern containment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction of the first comparison of an alternating permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlternationConvention {
    /// `w1 < w2 > w3 < ...`
    UpDown,
    /// `w1 > w2 < w3 > ...`
    DownUp,
}

impl AlternationConvention {
    /// Whether the comparison between positions `j` and `j + 1` (1-based)
    /// must be an ascent.
    pub fn ascent_at(self, j: usize) -> bool {
        let odd = j % 2 == 1;
        match self {
            AlternationConvention::UpDown => odd,
            AlternationConvention::DownUp => !odd,
        }
    }
}

/// A permutation of `{1, ..., n}`, possibly empty.
///
/// Patterns are ordinary (short) permutations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// The permutation order-isomorphic to a word of distinct values.
    pub fn flatten(word: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..word.len()).collect();
        order.sort_by_key(|&i| word[i]);
        let mut out = vec![0; word.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Permutation(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    /// Entry at a 1-based position.
    pub fn at(&self, pos: usize) -> u32 {
        self.0[pos - 1]
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `u <- i`: every entry `c >= i` becomes `c + 1`, then `i` is appended.
    pub fn extend(&self, i: u32) -> Result<Permutation> {
        if i == 0 || i as usize > self.len() + 1 {
            return Err(Error::Precondition(format!(
                "extension value {i} outside 1..={}",
                self.len() + 1
            )));
        }
        let mut v: Vec<u32> = self.0.iter().map(|&c| if c >= i { c + 1 } else { c }).collect();
        v.push(i);
        Ok(Permutation(v))
    }

    /// The flattened prefix of the given length.
    pub fn prefix(&self, len: usize) -> Permutation {
        Permutation::flatten(&self.0[..len.min(self.len())])
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation(self.0.iter().map(|&c| n + 1 - c).collect())
    }

    pub fn reverse_complement(&self) -> Permutation {
        self.complement().reverse()
    }

    pub fn is_alternating(&self, conv: AlternationConvention) -> bool {
        self.0
            .windows(2)
            .enumerate()
            .all(|(j, w)| (w[0] < w[1]) == conv.ascent_at(j + 1))
    }

    /// 1-based positions `j` with `w_j > w_{j+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(j, _)| j + 1)
            .collect()
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        PatternMatcher::new(pattern).occurs_in(&self.0)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Whether some occurrence of `pattern` uses the final position.
    pub fn contains_with_last(&self, pattern: &Permutation) -> bool {
        PatternMatcher::new(pattern).occurs_ending_at_last(&self.0)
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n as u32).collect()),
        }
    }
}

pub struct AllPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[i - 1]).unwrap();
            succ.swap(i - 1, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation(cur))
    }
}

/// Backtracking matcher for one pattern.
///
/// Each pattern letter is checked against two earlier letters only: the
/// closest smaller one and the closest larger one among the letters already
/// placed.
#[derive(Clone, Debug)]
pub struct PatternMatcher {
    pattern: Vec<u32>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl PatternMatcher {
    pub fn new(pattern: &Permutation) -> Self {
        let p = pattern.values().to_vec();
        let mut below = Vec::with_capacity(p.len());
        let mut above = Vec::with_capacity(p.len());
        for (l, &pl) in p.iter().enumerate() {
            below.push((0..l).filter(|&m| p[m] < pl).max_by_key(|&m| p[m]));
            above.push((0..l).filter(|&m| p[m] > pl).min_by_key(|&m| p[m]));
        }
        PatternMatcher { pattern: p, below, above }
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    pub fn occurs_in(&self, word: &[u32]) -> bool {
        let k = self.pattern.len();
        if k == 0 {
            return true;
        }
        if word.len() < k {
            return false;
        }
        let mut chosen = vec![0u32; k];
        self.search(word, word.len(), 0, 0, &mut chosen, None)
    }

    pub fn occurs_ending_at_last(&self, word: &[u32]) -> bool {
        let k = self.pattern.len();
        if k == 0 || word.len() < k {
            return false;
        }
        let last = *word.last().unwrap();
        let mut chosen = vec![0u32; k];
        let last_letter = self.pattern[k - 1];
        self.search(
            word,
            word.len() - 1,
            0,
            0,
            &mut chosen[..k - 1],
            Some((last, last_letter)),
        )
    }

    /// Place letters `l..` at positions `start..end` of `word`.
    fn search(
        &self,
        word: &[u32],
        end: usize,
        l: usize,
        start: usize,
        chosen: &mut [u32],
        fixed: Option<(u32, u32)>,
    ) -> bool {
        let k = chosen.len();
        if l == k {
            return true;
        }
        let (mut lo, mut hi) = (0u32, u32::MAX);
        if let Some(m) = self.below[l] {
            lo = chosen[m];
        }
        if let Some(m) = self.above[l] {
            hi = chosen[m];
        }
        if let Some((value, letter)) = fixed {
            if self.pattern[l] < letter {
                hi = hi.min(value);
            } else {
                lo = lo.max(value);
            }
        }
        if hi <= lo + 1 {
            return false;
        }
        let remaining = k - l;
        for pos in start..=end - remaining {
            let v = word[pos];
            if v > lo && v < hi {
                chosen[l] = v;
                if self.search(word, end, l + 1, pos + 1, chosen, fixed) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit strings for length up to 9 (`"2143"`), comma-separated values
    /// otherwise (`"10,2,9,1,..."`). The empty string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            if s.chars().count() > 9 {
                return Err(Error::Parse(format!(
                    "{s:?}: digit notation is limited to length 9, use commas"
                )));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
