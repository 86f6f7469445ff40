//! Active values and pruned generation of pattern-avoiding permutations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{AlternationConvention, PatternMatcher, Permutation};

/// Sorted values `c` such that extending the host by `c` keeps it avoiding
/// the governing pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActiveSet(Vec<u32>);

impl ActiveSet {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: u32) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// `s_i`, 1-based.
    pub fn nth(&self, i: usize) -> Option<u32> {
        i.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }
}

impl From<Vec<u32>> for ActiveSet {
    fn from(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        v.dedup();
        ActiveSet(v)
    }
}

/// A class of permutations defined by comparison constraints between
/// neighbouring positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassSpec {
    All,
    Alternating(AlternationConvention),
    /// Descent set exactly `{k, 2k, ...}`.
    DescentSet(usize),
}

impl ClassSpec {
    /// Required direction of the comparison between positions `j` and `j+1`:
    /// `Some(true)` for an ascent, `Some(false)` for a descent.
    pub fn ascent_required(&self, j: usize) -> Option<bool> {
        match *self {
            ClassSpec::All => None,
            ClassSpec::Alternating(conv) => Some(conv.ascent_at(j)),
            ClassSpec::DescentSet(k) => Some(j % k != 0),
        }
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        w.values().windows(2).enumerate().all(|(j, pair)| {
            self.ascent_required(j + 1)
                .map_or(true, |up| (pair[0] < pair[1]) == up)
        })
    }

    fn validate(&self) -> Result<()> {
        match self {
            ClassSpec::DescentSet(0) => Err(Error::Usage("descent period must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::All => f.write_str("all"),
            ClassSpec::Alternating(AlternationConvention::UpDown) => f.write_str("alt-up"),
            ClassSpec::Alternating(AlternationConvention::DownUp) => f.write_str("alt-down"),
            ClassSpec::DescentSet(k) => write!(f, "des-{k}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ClassSpec::All),
            "alt" | "alt-up" => Ok(ClassSpec::Alternating(AlternationConvention::UpDown)),
            "alt-down" => Ok(ClassSpec::Alternating(AlternationConvention::DownUp)),
            _ => {
                let k = s
                    .strip_prefix("des-")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Usage(format!("unknown class {s:?}")))?;
                Ok(ClassSpec::DescentSet(k))
            }
        }
    }
}

/// `{ c in [n+1] : w <- c avoids p }` by direct checking.
pub fn active_values(w: &Permutation, p: &Permutation) -> Result<ActiveSet> {
    if w.contains(p) {
        return Err(Error::Precondition(format!("{w} contains {p}")));
    }
    let matcher = PatternMatcher::new(p);
    let active = (1..=w.len() as u32 + 1)
        .filter(|&c| {
            let v = w.extend(c).expect("c is in range");
            !matcher.occurs_ending_at_last(v.values())
        })
        .collect();
    Ok(ActiveSet(active))
}

/// Active values for 2143 from the structure of `w`.
///
/// `c` is inactive exactly when some `i < j < k` has `w_j < w_i < c <= w_k`.
/// With `m_k` the least `w_i` over inversions `(i, j)` with `j < k`, the
/// inactive values are the union of the intervals `(m_k, w_k]`.
pub fn active_values_2143(w: &Permutation) -> Result<ActiveSet> {
    let pattern = Permutation::from_vec_unchecked(vec![2, 1, 4, 3]);
    if w.contains(&pattern) {
        return Err(Error::Precondition(format!("{w} contains 2143")));
    }
    let n = w.len();
    let mut inactive = vec![false; n + 2];
    let mut seen = BTreeSet::new();
    let mut min_top = u32::MAX;
    for &wk in w.values() {
        if wk > min_top {
            for c in min_top + 1..=wk {
                inactive[c as usize] = true;
            }
        }
        // smallest earlier value above wk: the least top of an inversion ending here
        if let Some(&top) = seen.range(wk + 1..).next() {
            min_top = min_top.min(top);
        }
        seen.insert(wk);
    }
    Ok(ActiveSet(
        (1..=n as u32 + 1).filter(|&c| !inactive[c as usize]).collect(),
    ))
}

/// Extension-tree walker shared by the counters.
///
/// Nodes are flattened prefixes; children are extensions that respect the
/// class constraint at the new comparison and create no occurrence of the
/// pattern through the new last entry.
struct ExtensionWalker<'a> {
    matcher: &'a PatternMatcher,
    spec: ClassSpec,
    max_len: usize,
}

impl ExtensionWalker<'_> {
    fn children(&self, buf: &mut Vec<u32>, mut visit: impl FnMut(&mut Vec<u32>)) {
        let m = buf.len();
        let required = if m == 0 { None } else { self.spec.ascent_required(m) };
        let last = buf.last().copied().unwrap_or(0);
        for i in 1..=m as u32 + 1 {
            if let Some(up) = required {
                if (i > last) != up {
                    continue;
                }
            }
            for c in buf.iter_mut() {
                if *c >= i {
                    *c += 1;
                }
            }
            buf.push(i);
            if !self.matcher.occurs_ending_at_last(buf) {
                visit(buf);
            }
            buf.pop();
            for c in buf.iter_mut() {
                if *c > i {
                    *c -= 1;
                }
            }
        }
    }

    fn count_below(&self, buf: &mut Vec<u32>, counts: &mut [u64]) {
        counts[buf.len()] += 1;
        if buf.len() == self.max_len {
            return;
        }
        self.children(buf, |child| self.count_below(child, counts));
    }

    fn frontier(&self, buf: &mut Vec<u32>, depth: usize, counts: &mut [u64], out: &mut Vec<Vec<u32>>) {
        if buf.len() == depth {
            out.push(buf.clone());
            return;
        }
        counts[buf.len()] += 1;
        self.children(buf, |child| self.frontier(child, depth, counts, out));
    }
}

const SHARD_DEPTH: usize = 5;

/// Number of avoiders of `p` in the class at every length `0..=max_len`.
///
/// Every class here is closed under taking flattened prefixes, so one walk
/// of the extension tree yields all lengths at once. The top levels are
/// sharded across the rayon pool; the result does not depend on the number
/// of workers.
pub fn counts_by_length(max_len: usize, p: &Permutation, spec: ClassSpec) -> Result<Vec<u64>> {
    spec.validate()?;
    if p.is_empty() {
        return Err(Error::Usage("pattern must be non-empty".into()));
    }
    let matcher = PatternMatcher::new(p);
    let walker = ExtensionWalker { matcher: &matcher, spec, max_len };
    let mut counts = vec![0u64; max_len + 1];
    if max_len <= SHARD_DEPTH {
        walker.count_below(&mut Vec::new(), &mut counts);
        return Ok(counts);
    }
    let mut shards = Vec::new();
    walker.frontier(&mut Vec::new(), SHARD_DEPTH, &mut counts, &mut shards);
    let deep = shards
        .into_par_iter()
        .map(|mut prefix| {
            let mut local = vec![0u64; max_len + 1];
            walker.count_below(&mut prefix, &mut local);
            local
        })
        .reduce(
            || vec![0u64; max_len + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts.iter_mut().zip(deep).for_each(|(x, y)| *x += y);
    Ok(counts)
}

/// Number of permutations of length `n` in the class avoiding `p`.
pub fn count_avoiders(n: usize, p: &Permutation, spec: ClassSpec) -> Result<num_bigint::BigUint> {
    Ok(counts_by_length(n, p, spec)?[n].into())
}

/// Avoiders of `p` of length `n` in the class, in lexicographic order.
///
/// Values are placed left to right; a branch is cut as soon as the filled
/// prefix breaks a class comparison or contains `p` through its last entry.
pub fn generate_avoiders(n: usize, p: &Permutation, spec: ClassSpec) -> Result<AvoiderIter> {
    spec.validate()?;
    if p.is_empty() {
        return Err(Error::Usage("pattern must be non-empty".into()));
    }
    Ok(AvoiderIter {
        n,
        spec,
        matcher: PatternMatcher::new(p),
        word: Vec::with_capacity(n),
        used: vec![false; n + 1],
        next_value: vec![1],
        done: false,
    })
}

pub struct AvoiderIter {
    n: usize,
    spec: ClassSpec,
    matcher: PatternMatcher,
    word: Vec<u32>,
    used: Vec<bool>,
    /// Next candidate value for each open position.
    next_value: Vec<u32>,
    done: bool,
}

impl AvoiderIter {
    fn pop(&mut self) {
        let v = self.word.pop().unwrap();
        self.used[v as usize] = false;
        self.next_value.pop();
    }
}

impl Iterator for AvoiderIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let d = self.word.len();
            if d == self.n {
                let out = Permutation::from_vec_unchecked(self.word.clone());
                self.pop();
                return Some(out);
            }
            let required = if d == 0 { None } else { self.spec.ascent_required(d) };
            let mut placed = false;
            while self.next_value[d] as usize <= self.n {
                let v = self.next_value[d];
                self.next_value[d] += 1;
                if self.used[v as usize] {
                    continue;
                }
                if let Some(up) = required {
                    if (v > self.word[d - 1]) != up {
                        continue;
                    }
                }
                self.word.push(v);
                if self.matcher.occurs_ending_at_last(&self.word) {
                    self.word.pop();
                    continue;
                }
                self.used[v as usize] = true;
                self.next_value.push(1);
                placed = true;
                break;
            }
            if !placed {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.pop();
            }
        }
    }
}
