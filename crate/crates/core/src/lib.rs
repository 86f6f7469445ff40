//! Pattern avoidance in alternating permutations.
//!
//! The crate enumerates pattern-avoiding alternating permutations (and
//! permutations with a periodic descent set), implements the two-parameter
//! generating trees that govern 2143- and 1234-avoiders, and realises the
//! recursive bijections between 2143-avoiding alternating permutations and
//! standard Young tableaux of shape `<n,n,n>` (even length) or shifted
//! standard Young tableaux of shape `<n+2,n+1,n>` (odd length).
//!
//! Counting code is generic over [`scalar::Count`]; the aliases below fix it
//! to arbitrary-precision integers.

pub mod avoidance;
pub mod bijection;
pub mod error;
pub mod gentree;
pub mod harness;
pub mod perm;
pub mod scalar;
pub mod tableaux;

pub use avoidance::{ActiveSet, ClassSpec};
pub use bijection::{LabelPath, Parity};
pub use error::{Error, Result};
pub use gentree::{Label, SuccessionRule};
pub use harness::{CountSeries, Method};
pub use perm::{AlternationConvention, Permutation};
pub use tableaux::{Shape, Tableau};

/// Exact count type.
pub type BigCount = num_bigint::BigUint;

/// Label multiset with exact multiplicities.
pub type LabelDistribution = gentree::LabelDistribution<BigCount>;

pub fn level_count(rule: &SuccessionRule, depth: usize) -> BigCount {
    gentree::level_count(rule, depth)
}

pub fn label_distribution(rule: &SuccessionRule, depth: usize) -> LabelDistribution {
    gentree::label_distribution(rule, depth)
}

pub fn count_even_formula(n: usize) -> BigCount {
    harness::count_even_formula(n)
}

pub fn count_odd_formula(n: usize) -> BigCount {
    harness::count_odd_formula(n)
}

pub fn hook_count(shape: &Shape) -> Result<BigCount> {
    tableaux::hook_count(shape)
}

pub fn shifted_hook_count(shape: &Shape) -> Result<BigCount> {
    tableaux::shifted_hook_count(shape)
}
