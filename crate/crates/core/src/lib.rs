//! Pattern-constrained colourings of uniform hypergraphs.
//!
//! An edge of an `r`-uniform hypergraph whose vertices are coloured induces a
//! partition of `r` (its colour *pattern*). Given a set `Q` of allowed
//! patterns, a `Q`-colouring is a vertex colouring where every edge pattern
//! lies in `Q`. This crate provides:
//!
//! - [`partitions`]: integer partitions, reduction/expansion closures and
//!   robustness classification of pattern sets.
//! - [`hypergraph`]: explicit hypergraphs and the constructions used here
//!   (complete, Sigma-hypergraphs, grid, Ramsey bundles).
//! - [`colouring`]: validity checks and an exact k-colourability search.
//! - [`sigma`]: a distribution-level engine for Sigma-hypergraphs that never
//!   materializes edges.
//! - [`clique`]: clique numbers of Sigma-hypergraphs via k-full families.
//! - [`analysis`]: tight colourability, recolouring transformers, gap
//!   searches and construction checks.
//!
//! The crate is `no_std` and only needs `alloc`. Long-running searches take a
//! [`Budget`] so callers decide how to bound them.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod budget;
pub mod clique;
pub mod colouring;
mod combin;
mod error;
pub mod hypergraph;
pub mod partitions;
pub mod sigma;

pub use budget::{Budget, NodeLimit, Unlimited};
pub use combin::{binomial, Combinations};
pub use error::{Error, Result};
pub use partitions::{Partition, PatternSet};

/// Outcome of a bounded decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<T> {
    /// A witness was found.
    Found(T),
    /// The search space was exhausted without a witness.
    Infeasible,
    /// The budget ran out before the question was settled.
    Unknown,
}

impl<T> Decision<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Decision::Found(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown)
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            Decision::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn into_witness(self) -> Option<T> {
        match self {
            Decision::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Decision<U> {
        match self {
            Decision::Found(w) => Decision::Found(f(w)),
            Decision::Infeasible => Decision::Infeasible,
            Decision::Unknown => Decision::Unknown,
        }
    }
}

/// Three-valued verdict used by reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// Conjunction where `False` dominates `Unknown`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::True,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}
