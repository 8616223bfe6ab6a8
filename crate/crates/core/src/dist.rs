//! Mahonian numbers, brute-force statistic distributions and joint `(inv, maj)` matrices.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::max_stat;
use crate::perm::{self, all_permutations, permutations_in_range, EnumLimit, Permutation};
use crate::table::all_tables;

/// Largest `n` accepted by [`mahonian_numbers`]; `20!` is the last factorial that fits in a `u64`.
pub const MAHONIAN_DP_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Inv,
    Maj,
}

impl Statistic {
    pub fn of(self, p: &Permutation) -> u64 {
        match self {
            Statistic::Inv => p.inv(),
            Statistic::Maj => p.maj(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Inv => "inv",
            Statistic::Maj => "maj",
        }
    }
}

/// Exact counts indexed by statistic value `k = 0..=n(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionVector {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl DistributionVector {
    fn zeros(n: usize) -> Self {
        DistributionVector {
            n,
            counts: vec![0; max_stat(n) + 1],
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }
}

/// `b(n, k)` for every `k`, as the coefficients of `∏_{j=1}^{n-1} (1 + q + … + q^j)`.
///
/// Each factor is applied as a sliding-window sum over the previous row.
pub fn mahonian_numbers(n: usize) -> Result<DistributionVector> {
    if n > MAHONIAN_DP_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: MAHONIAN_DP_CAP,
        });
    }
    let mut counts = vec![1u64];
    for j in 1..n {
        let len = counts.len() + j;
        let mut next = vec![0u64; len];
        let mut window = 0u64;
        for (k, slot) in next.iter_mut().enumerate() {
            if k < counts.len() {
                window += counts[k];
            }
            if k > j {
                window -= counts[k - j - 1];
            }
            *slot = window;
        }
        counts = next;
    }
    Ok(DistributionVector { n, counts })
}

/// Counts of `stat` over every permutation of `[n]`.
pub fn stat_distribution(
    n: usize,
    stat: Statistic,
    limit: EnumLimit,
) -> Result<DistributionVector> {
    let mut dist = DistributionVector::zeros(n);
    for p in all_permutations(n, limit)? {
        dist.counts[stat.of(&p) as usize] += 1;
    }
    Ok(dist)
}

/// Dense `(K+1) × (K+1)` count matrix with `K = n(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointMatrix {
    n: usize,
    dim: usize,
    cells: Vec<u64>,
}

impl JointMatrix {
    pub fn zeros(n: usize) -> Self {
        let dim = max_stat(n) + 1;
        JointMatrix {
            n,
            dim,
            cells: vec![0; dim * dim],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side length `K + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, k_prime: usize) -> u64 {
        self.cells[k * self.dim + k_prime]
    }

    pub fn get_mut(&mut self, k: usize, k_prime: usize) -> &mut u64 {
        &mut self.cells[k * self.dim + k_prime]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.cells.chunks(self.dim)
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self.get(r, c)).sum())
            .collect()
    }

    fn merge(mut self, other: &JointMatrix) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            *a += b;
        }
        self
    }
}

/// `cells[k][k']` = number of permutations of `[n]` with `inv = k` and `maj = k'`.
pub fn joint_distribution(n: usize, limit: EnumLimit) -> Result<JointMatrix> {
    let mut m = JointMatrix::zeros(n);
    for p in all_permutations(n, limit)? {
        *m.get_mut(p.inv() as usize, p.maj() as usize) += 1;
    }
    Ok(m)
}

/// [`joint_distribution`] split into `parts` lexicographic rank ranges counted in parallel.
pub fn joint_distribution_partitioned(
    n: usize,
    parts: usize,
    limit: EnumLimit,
) -> Result<JointMatrix> {
    limit.check(n)?;
    let total = perm::factorial(n);
    let parts = parts.max(1) as u64;
    let chunk = total.div_ceil(parts);
    (0..parts)
        .into_par_iter()
        .map(|i| {
            let mut m = JointMatrix::zeros(n);
            for p in permutations_in_range(n, i * chunk, (i + 1) * chunk, limit)? {
                *m.get_mut(p.inv() as usize, p.maj() as usize) += 1;
            }
            Ok(m)
        })
        .try_reduce(|| JointMatrix::zeros(n), |a, b| Ok(a.merge(&b)))
}

/// `cells[k][k']` = number of tables of length `n` with sum `k` and ascent sum `k'`.
pub fn table_stat_joint(n: usize, limit: EnumLimit) -> Result<JointMatrix> {
    let mut m = JointMatrix::zeros(n);
    for t in all_tables(n, limit)? {
        *m.get_mut(t.sum() as usize, t.ascent_sum() as usize) += 1;
    }
    Ok(m)
}

/// Cells where `m[k][k'] != m[k'][k]`, listed once each with `k < k'`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub pairs_checked: usize,
    pub violations: Vec<SymmetryViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryViolation {
    pub k: usize,
    pub k_prime: usize,
    pub count: u64,
    pub transposed_count: u64,
}

impl SymmetryReport {
    pub fn is_symmetric(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_symmetry(m: &JointMatrix) -> SymmetryReport {
    let mut report = SymmetryReport::default();
    for k in 0..m.dim() {
        for k_prime in k + 1..m.dim() {
            report.pairs_checked += 1;
            let (a, b) = (m.get(k, k_prime), m.get(k_prime, k));
            if a != b {
                report.violations.push(SymmetryViolation {
                    k,
                    k_prime,
                    count: a,
                    transposed_count: b,
                });
            }
        }
    }
    report
}

/// Counts of tables of length `n` by entry sum; equals [`mahonian_numbers`] by construction.
pub fn table_sum_distribution(n: usize, limit: EnumLimit) -> Result<DistributionVector> {
    let mut dist = DistributionVector::zeros(n);
    for t in all_tables(n, limit)? {
        dist.counts[t.sum() as usize] += 1;
    }
    Ok(dist)
}
