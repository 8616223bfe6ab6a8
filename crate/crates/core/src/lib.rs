//! Permutation statistics over words on `{0, …, n-1}`.
//!
//! The crate provides the inversion count and major index of a permutation,
//! three insertion codecs that put inversion tables in bijection with
//! permutations, the Mahonian numbers `b(n, k)`, and exhaustive checks that
//! the two statistics are equidistributed with a symmetric joint distribution.
//!
//! ```
//! use mahonian::{Codec, InversionTable, Permutation};
//!
//! let table = InversionTable::new(vec![0, 1, 0, 3, 3]).unwrap();
//! let p = Codec::InvInsertion.decode(&table);
//! assert_eq!(p.to_string(), "34102");
//! assert_eq!(p.inv(), 7);
//! assert_eq!(Codec::RightmostInsertion.decode(&table), p.inverse());
//! ```

pub mod cli;
pub mod dist;
mod error;
pub mod perm;
pub mod table;
pub mod verify;

pub use dist::{DistributionVector, JointMatrix, Statistic, SymmetryReport};
pub use error::{Error, Result};
pub use perm::{EnumLimit, Permutation, StatValue};
pub use table::{Codec, InsertionOutcome, InversionTable};

/// Largest statistic value on a word of length `n`, i.e. `n(n-1)/2`.
pub fn max_stat(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
