//! Inversion tables and the three insertion codecs that map them to permutations.
//!
//! An inversion table of length `n` is a tuple `(a_0, …, a_{n-1})` with
//! `a_j <= j`. Each codec builds a permutation by processing `j = 0, 1, …`
//! in turn and reading `a_j` as an instruction for placing `j`:
//!
//! * [`Codec::InvInsertion`]: insert `j` with exactly `a_j` elements to its
//!   right, creating `a_j` new inversions.
//! * [`Codec::MajInsertion`]: insert `j` into the slot that raises the major
//!   index by exactly `a_j` (see [`maj_insertion_outcome`]).
//! * [`Codec::RightmostInsertion`]: append the value `j - a_j` and bump every
//!   earlier value `>= j - a_j` by one. The result is the inverse of the
//!   inv-insertion permutation, with `inv = Σ a_j` and `maj = Σ { j : a_j > a_{j-1} }`.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{self, descents, major_index, EnumLimit, Permutation, StatValue};

/// A tuple `(a_0, …, a_{n-1})` with `a_j <= j`. `a_0` is stored even though it is always 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionTable(Vec<usize>);

impl InversionTable {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|&(j, &a)| a > j) {
            return Err(Error::TableEntryOutOfRange {
                index,
                value: value as i64,
            });
        }
        Ok(InversionTable(entries))
    }

    /// Like [`InversionTable::new`] but also rejects negative entries.
    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        let entries = entries
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                usize::try_from(value).map_err(|_| Error::TableEntryOutOfRange { index, value })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn zeros(n: usize) -> Self {
        InversionTable(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `Σ a_j`.
    pub fn sum(&self) -> StatValue {
        self.0.iter().map(|&a| a as StatValue).sum()
    }

    /// Sum of the ascent positions `j >= 1` with `a_j > a_{j-1}`.
    pub fn ascent_sum(&self) -> StatValue {
        (1..self.0.len())
            .filter(|&j| self.0[j] > self.0[j - 1])
            .map(|j| j as StatValue)
            .sum()
    }
}

/// Always comma-separated: `0,1,0,3,3`.
impl fmt::Display for InversionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        perm::write_comma_list(f, &self.0)
    }
}

impl FromStr for InversionTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InversionTable::from_ints(&perm::parse_comma_list(s.trim())?)
    }
}

/// Which reading of an inversion table to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Codec {
    #[value(name = "inv")]
    #[serde(rename = "inv")]
    InvInsertion,
    #[value(name = "maj")]
    #[serde(rename = "maj")]
    MajInsertion,
    #[value(name = "rightmost")]
    #[serde(rename = "rightmost")]
    RightmostInsertion,
}

impl Codec {
    pub const ALL: [Codec; 3] = [
        Codec::InvInsertion,
        Codec::MajInsertion,
        Codec::RightmostInsertion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Codec::InvInsertion => "inv",
            Codec::MajInsertion => "maj",
            Codec::RightmostInsertion => "rightmost",
        }
    }

    pub fn decode(self, table: &InversionTable) -> Permutation {
        let mut word = Vec::with_capacity(table.len());
        for (j, &a) in table.entries().iter().enumerate() {
            self.step(&mut word, j, a);
        }
        Permutation::from_vec_unchecked(word)
    }

    /// Every intermediate word of the build, ending with [`Codec::decode`]'s result.
    pub fn decode_steps(self, table: &InversionTable) -> Vec<Permutation> {
        let mut word = Vec::with_capacity(table.len());
        table
            .entries()
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                self.step(&mut word, j, a);
                Permutation::from_vec_unchecked(word.clone())
            })
            .collect()
    }

    /// The unique table that [`Codec::decode`] maps to `p`.
    pub fn encode(self, p: &Permutation) -> InversionTable {
        match self {
            Codec::InvInsertion => encode_inv(p),
            Codec::MajInsertion => encode_maj(p),
            Codec::RightmostInsertion => encode_rightmost(p),
        }
    }

    /// Extends a permutation of `[j]` to one of `[j+1]` according to `a = a_j`.
    fn step(self, word: &mut Vec<usize>, j: usize, a: usize) {
        debug_assert_eq!(word.len(), j);
        debug_assert!(a <= j);
        match self {
            Codec::InvInsertion => word.insert(j - a, j),
            Codec::MajInsertion => {
                let slot = maj_slot(word, a);
                word.insert(slot, j);
            }
            Codec::RightmostInsertion => {
                let v = j - a;
                for x in word.iter_mut() {
                    if *x >= v {
                        *x += 1;
                    }
                }
                word.push(v);
            }
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn decode_inv(t: &InversionTable) -> Permutation {
    Codec::InvInsertion.decode(t)
}

pub fn decode_maj(t: &InversionTable) -> Permutation {
    Codec::MajInsertion.decode(t)
}

pub fn decode_rightmost(t: &InversionTable) -> Permutation {
    Codec::RightmostInsertion.decode(t)
}

/// `a_j` = number of values smaller than `j` lying to the right of `j`.
pub fn encode_inv(p: &Permutation) -> InversionTable {
    let word = p.as_slice();
    let pos = p.inverse();
    let entries = (0..word.len())
        .map(|j| word[pos[j] + 1..].iter().filter(|&&v| v < j).count())
        .collect();
    InversionTable(entries)
}

/// Deletes the maximum repeatedly; `a_j` is the drop in major index when `j` leaves.
pub fn encode_maj(p: &Permutation) -> InversionTable {
    let mut word = p.as_slice().to_vec();
    let mut entries = vec![0; word.len()];
    for j in (0..word.len()).rev() {
        let before = major_index(&word);
        let at = word.iter().position(|&v| v == j).unwrap();
        word.remove(at);
        entries[j] = (before - major_index(&word)) as usize;
    }
    InversionTable(entries)
}

/// Pops the last value `v` and undoes the bump; `a_j = j - v`.
pub fn encode_rightmost(p: &Permutation) -> InversionTable {
    let mut word = p.as_slice().to_vec();
    let mut entries = vec![0; word.len()];
    while let Some(v) = word.pop() {
        let j = word.len();
        entries[j] = j - v;
        for x in word.iter_mut() {
            if *x > v {
                *x -= 1;
            }
        }
    }
    InversionTable(entries)
}

/// Where inserting a new maximum lands, and how much it raises the major index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InsertionOutcome {
    /// Index the new element occupies; old entries at `>= position` shift right.
    pub position: usize,
    pub maj_delta: usize,
}

impl InsertionOutcome {
    /// Inserts `word.len()` at [`InsertionOutcome::position`].
    pub fn apply(&self, word: &Permutation) -> Permutation {
        let mut w = word.as_slice().to_vec();
        w.insert(self.position, w.len());
        Permutation::from_vec_unchecked(w)
    }
}

/// Finds the slot where inserting `j = word.len()` raises `maj` by `target_delta`.
///
/// With `κ` descents at `d_κ < … < d_1`:
///
/// * delta 0 is the rightmost slot `j`;
/// * delta `t` in `1..=κ` is slot `d_t`, the `t`-th largest descent, since
///   the descents `d_t, …, d_1` each move one step right;
/// * delta `κ + r` is the `r`-th non-descent slot from the left among
///   `0..j`, which adds a descent and shifts every descent to its right.
///
/// Slot 0 counts as a non-descent.
pub fn maj_insertion_outcome(word: &Permutation, target_delta: usize) -> Result<InsertionOutcome> {
    let j = word.len();
    if target_delta > j {
        return Err(Error::DeltaOutOfRange {
            delta: target_delta,
            len: j,
        });
    }
    Ok(InsertionOutcome {
        position: maj_slot(word.as_slice(), target_delta),
        maj_delta: target_delta,
    })
}

fn maj_slot(word: &[usize], delta: usize) -> usize {
    let j = word.len();
    if delta == 0 {
        return j;
    }
    let desc = descents(word);
    let kappa = desc.len();
    if delta <= kappa {
        return desc[kappa - delta];
    }
    let r = delta - kappa;
    (0..j)
        .filter(|&i| i == 0 || word[i - 1] < word[i])
        .nth(r - 1)
        .expect("a word of length j has j - κ non-descent slots")
}

/// Radix of digit `j` is `j + 1`, so there are `n!` tables.
pub fn all_tables(n: usize, limit: EnumLimit) -> Result<Tables> {
    tables_in_range(n, 0, u64::MAX, limit)
}

/// Tables with ranks in `start..end`, ranks counted in lexicographic order
/// (`a_{n-1}` is the fastest-moving digit).
pub fn tables_in_range(n: usize, start: u64, end: u64, limit: EnumLimit) -> Result<Tables> {
    limit.check(n)?;
    let end = end.min(perm::factorial(n));
    if start >= end {
        return Ok(Tables {
            next: None,
            remaining: 0,
        });
    }
    let mut digits = vec![0; n];
    let mut r = start;
    for j in (0..n).rev() {
        digits[j] = (r % (j as u64 + 1)) as usize;
        r /= j as u64 + 1;
    }
    Ok(Tables {
        next: Some(digits),
        remaining: end - start,
    })
}

/// Mixed-radix counter over inversion tables.
#[derive(Clone, Debug)]
pub struct Tables {
    next: Option<Vec<usize>>,
    remaining: u64,
}

impl Iterator for Tables {
    type Item = InversionTable;

    fn next(&mut self) -> Option<InversionTable> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.next.take()?;
        if self.remaining > 0 {
            let mut succ = current.clone();
            let mut j = succ.len();
            loop {
                if j == 0 {
                    self.remaining = 0;
                    break;
                }
                j -= 1;
                if succ[j] < j {
                    succ[j] += 1;
                    self.next = Some(succ);
                    break;
                }
                succ[j] = 0;
            }
        }
        Some(InversionTable(current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Tables {}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(v: &[usize]) -> InversionTable {
        InversionTable::new(v.to_vec()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn make_table() {
        assert_eq!(table(&[0, 1, 0, 3, 3]).len(), 5);
        assert_eq!(table(&[0, 0, 0]), InversionTable::zeros(3));
        assert_eq!(
            InversionTable::new(vec![1, 0]),
            Err(Error::TableEntryOutOfRange { index: 0, value: 1 })
        );
        assert_eq!(
            InversionTable::from_ints(&[0, -1]),
            Err(Error::TableEntryOutOfRange {
                index: 1,
                value: -1
            })
        );
        assert!(InversionTable::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn enumerate_tables() {
        let lim = EnumLimit::default();
        assert_eq!(
            all_tables(1, lim).unwrap().collect::<Vec<_>>(),
            vec![table(&[0])]
        );
        assert_eq!(
            all_tables(0, lim).unwrap().collect::<Vec<_>>(),
            vec![table(&[])]
        );
        let three: Vec<_> = all_tables(3, lim).unwrap().map(|t| t.to_string()).collect();
        assert_eq!(
            three,
            ["0,0,0", "0,0,1", "0,0,2", "0,1,0", "0,1,1", "0,1,2"]
        );
        let five: Vec<_> = all_tables(5, lim).unwrap().collect();
        assert_eq!(five.len(), 120);
        assert!(five.contains(&table(&[0, 1, 0, 3, 3])));
        assert!(all_tables(11, lim).is_err());
    }

    #[test]
    fn table_ranges_partition() {
        let lim = EnumLimit::default();
        let all: Vec<_> = all_tables(5, lim).unwrap().collect();
        let mut joined: Vec<_> = tables_in_range(5, 0, 33, lim).unwrap().collect();
        joined.extend(tables_in_range(5, 33, 120, lim).unwrap());
        assert_eq!(joined, all);
    }

    #[test]
    fn inv_codec_examples() {
        assert_eq!(decode_inv(&table(&[0, 1, 0, 3, 3])), perm("34102"));
        assert_eq!(
            decode_inv(&InversionTable::zeros(6)),
            Permutation::identity(6)
        );
        assert_eq!(decode_inv(&table(&[0, 1, 2])), perm("210"));
        assert_eq!(encode_inv(&perm("34102")), table(&[0, 1, 0, 3, 3]));
        assert_eq!(
            encode_inv(&Permutation::identity(4)),
            InversionTable::zeros(4)
        );
        assert_eq!(encode_inv(&perm("210")), table(&[0, 1, 2]));
    }

    #[test]
    fn maj_codec_examples() {
        assert_eq!(
            decode_maj(&InversionTable::zeros(5)),
            Permutation::identity(5)
        );
        assert_eq!(decode_maj(&table(&[0, 1])), perm("10"));
        assert_eq!(decode_maj(&table(&[0, 1, 2])), perm("210"));
        assert_eq!(
            encode_maj(&Permutation::identity(5)),
            InversionTable::zeros(5)
        );
        assert_eq!(encode_maj(&perm("210")), table(&[0, 1, 2]));
        let t = encode_maj(&perm("2461350"));
        assert_eq!(t.entries()[6], 2);
        assert_eq!(t.entries()[..6], encode_maj(&perm("241350")).entries()[..]);
    }

    #[test]
    fn rightmost_codec_examples() {
        assert_eq!(decode_rightmost(&table(&[0, 1, 0, 3, 3])), perm("32401"));
        assert_eq!(
            decode_rightmost(&InversionTable::zeros(4)),
            Permutation::identity(4)
        );
        assert_eq!(decode_rightmost(&table(&[0, 1])), perm("10"));
        assert_eq!(encode_rightmost(&perm("32401")), table(&[0, 1, 0, 3, 3]));
        assert_eq!(
            encode_rightmost(&Permutation::identity(4)),
            InversionTable::zeros(4)
        );
        assert_eq!(encode_rightmost(&perm("10")), table(&[0, 1]));
    }

    #[test]
    fn build_sequences() {
        let t = table(&[0, 1, 0, 3, 3]);
        let steps = |c: Codec| -> Vec<String> {
            c.decode_steps(&t).iter().map(|p| p.to_string()).collect()
        };
        assert_eq!(
            steps(Codec::InvInsertion),
            ["0", "10", "102", "3102", "34102"]
        );
        assert_eq!(
            steps(Codec::RightmostInsertion),
            ["0", "10", "102", "2130", "32401"]
        );
    }

    #[test]
    fn maj_slots_for_241350() {
        let w = perm("241350");
        let cases = [
            (0, 6, "2413506"),
            (2, 2, "2461350"),
            (6, 4, "2413650"),
            (3, 0, "6241350"),
        ];
        for (delta, slot, word) in cases {
            let out = maj_insertion_outcome(&w, delta).unwrap();
            assert_eq!(out.position, slot, "delta {delta}");
            assert_eq!(out.maj_delta, delta);
            assert_eq!(out.apply(&w).to_string(), word);
        }
        assert_eq!(
            maj_insertion_outcome(&w, 7),
            Err(Error::DeltaOutOfRange { delta: 7, len: 6 })
        );
    }

    #[test]
    fn maj_slot_on_empty_word() {
        let out = maj_insertion_outcome(&Permutation::identity(0), 0).unwrap();
        assert_eq!(out.position, 0);
        assert_eq!(
            out.apply(&Permutation::identity(0)),
            Permutation::identity(1)
        );
    }

    #[test]
    fn sums() {
        let t = table(&[0, 1, 0, 3, 3]);
        assert_eq!(t.sum(), 7);
        assert_eq!(t.ascent_sum(), 4);
        assert_eq!(InversionTable::zeros(6).sum(), 0);
        assert_eq!(InversionTable::zeros(6).ascent_sum(), 0);
        assert_eq!(table(&[0, 1, 2, 3]).sum(), 6);
        assert_eq!(table(&[0, 1, 2]).ascent_sum(), 3);
    }
}
