//! Permutations of `[n] = {0, …, n-1}` and their descent and inversion statistics.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Value of a permutation statistic (an inversion count or a sum of positions).
pub type StatValue = u64;

/// A permutation in one-line notation over `{0, …, n-1}`.
///
/// Values and positions are both 0-based, so `241350` has descents at
/// positions 2 and 5.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `word` holds every value of `0..word.len()` exactly once.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![usize::MAX; n];
        for (index, &value) in word.iter().enumerate() {
            if value >= n {
                return Err(Error::ValueOutOfRange {
                    index,
                    value: value as i64,
                    len: n,
                });
            }
            if seen[value] != usize::MAX {
                return Err(Error::DuplicateValue {
                    index,
                    value,
                    first: seen[value],
                });
            }
            seen[value] = index;
        }
        Ok(Permutation(word))
    }

    /// Like [`Permutation::new`] but also rejects negative input values.
    pub fn from_ints(word: &[i64]) -> Result<Self> {
        let len = word.len();
        let word = word
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                usize::try_from(value).map_err(|_| Error::ValueOutOfRange { index, value, len })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }

    pub(crate) fn from_vec_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok());
        Permutation(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `n-1, …, 1, 0`, the unique permutation with every pair inverted.
    pub fn reversed_identity(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Returns `q` with `q[p[i]] = i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    /// Positions `i` in `1..n` with `p[i-1] > p[i]`, increasing.
    pub fn descent_positions(&self) -> Vec<usize> {
        descents(&self.0)
    }

    /// Number of pairs `i < j` with `p[i] > p[j]`.
    pub fn inv(&self) -> StatValue {
        count_inversions(&self.0)
    }

    /// Major index: the sum of the descent positions.
    pub fn maj(&self) -> StatValue {
        major_index(&self.0)
    }
}

impl Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl AsRef<[usize]> for Permutation {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// Compact digits (`241350`) when `n <= 10`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= COMPACT_MAX_LEN {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write_comma_list(f, &self.0)
        }
    }
}

/// Accepts `241350` (single digits, at most 10 of them) or `2,4,1,3,5,0`.
/// The empty string is the empty permutation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if s.contains(',') {
            parse_comma_list(s)?
        } else {
            let len = s.chars().count();
            if len > COMPACT_MAX_LEN {
                return Err(Error::CompactTooLong { len });
            }
            s.chars()
                .enumerate()
                .map(|(index, c)| {
                    c.to_digit(10)
                        .map(i64::from)
                        .ok_or_else(|| Error::BadToken {
                            index,
                            token: c.to_string(),
                        })
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::from_ints(&values)
    }
}

pub(crate) const COMPACT_MAX_LEN: usize = 10;

pub(crate) fn write_comma_list(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn parse_comma_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(index, token)| {
            let token = token.trim();
            token.parse::<i64>().map_err(|_| Error::BadToken {
                index,
                token: token.to_string(),
            })
        })
        .collect()
}

pub(crate) fn descents(word: &[usize]) -> Vec<usize> {
    (1..word.len()).filter(|&i| word[i - 1] > word[i]).collect()
}

pub(crate) fn major_index(word: &[usize]) -> StatValue {
    (1..word.len())
        .filter(|&i| word[i - 1] > word[i])
        .map(|i| i as StatValue)
        .sum()
}

/// Merge-sort inversion count, `O(n log n)`.
pub(crate) fn count_inversions(word: &[usize]) -> StatValue {
    let mut buf = word.to_vec();
    let mut scratch = vec![0; word.len()];
    sort_count(&mut buf, &mut scratch)
}

fn sort_count(a: &mut [usize], scratch: &mut [usize]) -> StatValue {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = a.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_count(left, sl) + sort_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if a[i] <= a[j] {
            scratch[k] = a[i];
            i += 1;
        } else {
            // everything left in the left half exceeds a[j]
            count += (mid - i) as StatValue;
            scratch[k] = a[j];
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&a[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&a[j..n]);
    a.copy_from_slice(&scratch[..n]);
    count
}

/// `n!`. Panics past 20, where it no longer fits in 64 bits.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= EnumLimit::MAX, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// Upper bound on `n` for exhaustive enumeration.
///
/// The default of 10 keeps brute force at desk scale. Overrides are accepted
/// up to 20, the largest `n` for which `n!` fits in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimit(usize);

impl EnumLimit {
    pub const DEFAULT: usize = 10;
    pub const MAX: usize = 20;
    pub const DEFAULT_LIMIT: EnumLimit = EnumLimit(Self::DEFAULT);

    pub fn new(cap: usize) -> Result<Self> {
        if cap > Self::MAX {
            return Err(Error::CapExceeded {
                n: cap,
                cap: Self::MAX,
            });
        }
        Ok(EnumLimit(cap))
    }

    pub fn cap(self) -> usize {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::CapExceeded { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumLimit {
    fn default() -> Self {
        Self::DEFAULT_LIMIT
    }
}

/// Every permutation of `[n]` in lexicographic order.
pub fn all_permutations(n: usize, limit: EnumLimit) -> Result<Permutations> {
    limit.check(n)?;
    Ok(Permutations {
        next: Some((0..n).collect()),
        remaining: factorial(n),
    })
}

/// The permutations of `[n]` with lexicographic ranks in `start..end`.
///
/// Disjoint rank ranges partition the enumeration for parallel workers.
pub fn permutations_in_range(
    n: usize,
    start: u64,
    end: u64,
    limit: EnumLimit,
) -> Result<Permutations> {
    limit.check(n)?;
    let total = factorial(n);
    let end = end.min(total);
    if start >= end {
        return Ok(Permutations {
            next: None,
            remaining: 0,
        });
    }
    Ok(Permutations {
        next: Some(unrank_lex(n, start)),
        remaining: end - start,
    })
}

/// The permutation with lexicographic rank `rank`, via the factorial number system.
fn unrank_lex(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let digit = (rank / f) as usize;
        rank %= f;
        word.push(pool.remove(digit));
    }
    word
}

/// Lexicographic successor in place; `false` once `word` is the last permutation.
fn next_lex(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}

/// Iterator returned by [`all_permutations`] and [`permutations_in_range`].
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Vec<usize>>,
    remaining: u64,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.next.take()?;
        if self.remaining > 0 {
            let mut succ = current.clone();
            if next_lex(&mut succ) {
                self.next = Some(succ);
            } else {
                self.remaining = 0;
            }
        }
        Some(Permutation(current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Permutations {}
