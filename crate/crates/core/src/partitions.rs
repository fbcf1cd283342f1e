//! Integer partitions as colour patterns and edge types.
//!
//! A [`Partition`] of `r` is stored with its parts in non-increasing order;
//! that canonical form is its identity. A [`PatternSet`] is a set of
//! partitions of one fixed `r`, used both for allowed colour patterns and for
//! allowed edge types.
//!
//! Partitions order *decreasingly* in lexicographic order of their parts, so
//! iterating a [`PatternSet`] yields `(r)` first and `(1,…,1)` last.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from positive parts in any order.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.is_empty() {
            return Err(Error::invalid("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Partition formed by the non-zero entries of `counts`.
    ///
    /// Panics if every count is zero.
    pub fn from_counts(counts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = counts.into_iter().filter(|&c| c > 0).collect();
        assert!(!parts.is_empty(), "from_counts needs a non-zero count");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `M = (r)`.
    pub fn monochromatic(r: u32) -> Self {
        assert!(r > 0);
        Partition { parts: alloc::vec![r] }
    }

    /// `R = (1,…,1)`.
    pub fn rainbow(r: u32) -> Self {
        assert!(r > 0);
        Partition {
            parts: alloc::vec![1; r as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn r(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest part.
    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    /// Smallest part.
    pub fn smallest(&self) -> u32 {
        *self.parts.last().unwrap()
    }

    /// Number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_monochromatic(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_rainbow(&self) -> bool {
        self.parts[0] == 1
    }

    /// All distinct partitions obtained by merging two parts.
    pub fn reductions(&self) -> Vec<Partition> {
        let mut out = BTreeSet::new();
        let p = &self.parts;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let mut next: Vec<u32> = Vec::with_capacity(p.len() - 1);
                next.extend(p.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &v)| v));
                next.push(p[i] + p[j]);
                next.sort_unstable_by(|a, b| b.cmp(a));
                out.insert(Partition { parts: next });
            }
        }
        out.into_iter().collect()
    }

    /// All distinct partitions obtained by splitting one part `a ≥ 2` into `(a−1, 1)`.
    pub fn expansions(&self) -> Vec<Partition> {
        let mut out = BTreeSet::new();
        let p = &self.parts;
        for i in 0..p.len() {
            if p[i] < 2 {
                continue;
            }
            let mut next = p.clone();
            next[i] -= 1;
            next.push(1);
            next.sort_unstable_by(|a, b| b.cmp(a));
            out.insert(Partition { parts: next });
        }
        out.into_iter().collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1,1]`, `(3,1,1)` or a bare `3,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
            .unwrap_or(t);
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::invalid(alloc::format!("bad partition part {tok:?} in {s:?}")))?;
            parts.push(v);
        }
        Partition::new(parts)
    }
}

/// A set of partitions of a fixed `r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternSet {
    r: u32,
    members: BTreeSet<Partition>,
}

impl PatternSet {
    pub fn empty(r: u32) -> Self {
        PatternSet {
            r,
            members: BTreeSet::new(),
        }
    }

    pub fn new(r: u32, members: impl IntoIterator<Item = Partition>) -> Result<Self> {
        let mut set = PatternSet::empty(r);
        for p in members {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Convenience constructor from raw part lists; the `r` is taken from the
    /// first entry, so the list must be non-empty.
    pub fn from_parts<I, P>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<u32>>,
    {
        let members = parts
            .into_iter()
            .map(|p| Partition::new(p))
            .collect::<Result<Vec<_>>>()?;
        let r = members
            .first()
            .map(Partition::r)
            .ok_or_else(|| Error::invalid("cannot infer r from an empty list"))?;
        PatternSet::new(r, members)
    }

    pub fn insert(&mut self, p: Partition) -> Result<bool> {
        if p.r() != self.r {
            return Err(Error::invalid(alloc::format!(
                "partition {p} does not sum to r = {}",
                self.r
            )));
        }
        Ok(self.members.insert(p))
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.members.contains(p)
    }

    /// Members from `(r)` down to `(1,…,1)`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Partition> + ExactSizeIterator {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.r == other.r && self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &PatternSet) -> Result<PatternSet> {
        self.same_r(other)?;
        Ok(PatternSet {
            r: self.r,
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub fn difference(&self, other: &PatternSet) -> Result<PatternSet> {
        self.same_r(other)?;
        Ok(PatternSet {
            r: self.r,
            members: self.members.difference(&other.members).cloned().collect(),
        })
    }

    /// Copy of the set without `p`.
    pub fn without(&self, p: &Partition) -> PatternSet {
        let mut out = self.clone();
        out.members.remove(p);
        out
    }

    /// `Δ(Q)`, the largest part over all members.
    pub fn max_part(&self) -> Result<u32> {
        self.members
            .iter()
            .map(Partition::largest)
            .max()
            .ok_or_else(|| Error::invalid("max part of an empty pattern set"))
    }

    /// `s(Q)`, the largest part count over all members.
    pub fn max_num_parts(&self) -> Result<usize> {
        self.members
            .iter()
            .map(Partition::num_parts)
            .max()
            .ok_or_else(|| Error::invalid("max part count of an empty pattern set"))
    }

    fn same_r(&self, other: &PatternSet) -> Result<()> {
        if self.r != other.r {
            return Err(Error::invalid(alloc::format!(
                "pattern sets over different r ({} and {})",
                self.r,
                other.r
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet(r={}, {self})", self.r)
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Partition;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Partition>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `P(r)`: every partition of `r`, in lexicographically decreasing order.
pub fn enumerate_partitions(r: u32) -> Result<PatternSet> {
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(r, r, &mut prefix, &mut out);
    Ok(PatternSet {
        r,
        members: out.into_iter().collect(),
    })
}

fn fill(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        prefix.push(part);
        fill(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// Partitions one merge away from `sigma`.
pub fn reduce_once(sigma: &Partition) -> PatternSet {
    PatternSet {
        r: sigma.r(),
        members: sigma.reductions().into_iter().collect(),
    }
}

/// Partitions one split away from `sigma`.
pub fn expand_once(sigma: &Partition) -> PatternSet {
    PatternSet {
        r: sigma.r(),
        members: sigma.expansions().into_iter().collect(),
    }
}

fn saturate(q: &PatternSet, step: fn(&Partition) -> Vec<Partition>) -> Result<PatternSet> {
    if q.is_empty() {
        return Err(Error::invalid("closure of an empty pattern set"));
    }
    let mut seen = q.members.clone();
    let mut queue: VecDeque<Partition> = q.members.iter().cloned().collect();
    while let Some(p) = queue.pop_front() {
        for next in step(&p) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(PatternSet {
        r: q.r,
        members: seen,
    })
}

/// `RD(Q)`: reflexive-transitive closure under merging two parts.
pub fn rd_closure(q: &PatternSet) -> Result<PatternSet> {
    saturate(q, Partition::reductions)
}

/// `EX(Q)`: reflexive-transitive closure under splitting off a 1.
pub fn ex_closure(q: &PatternSet) -> Result<PatternSet> {
    saturate(q, Partition::expansions)
}

/// The chain `(r), (r−1,1), …, (1,…,1)`.
pub fn monochromatic_chain(r: u32) -> PatternSet {
    let members = (0..r).map(|j| {
        let mut parts = alloc::vec![r - j];
        parts.extend(core::iter::repeat_n(1, j as usize));
        Partition { parts }
    });
    PatternSet {
        r,
        members: members.collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Robustness {
    pub reduction_closed: bool,
    pub expansion_closed: bool,
    /// Contains the chain `EX(M)`.
    pub simply_closed: bool,
    pub robust: bool,
}

pub fn classify_robust(q: &PatternSet) -> Result<Robustness> {
    let reduction_closed = rd_closure(q)? == *q;
    let expansion_closed = ex_closure(q)? == *q;
    let simply_closed = monochromatic_chain(q.r).is_subset(q);
    Ok(Robustness {
        reduction_closed,
        expansion_closed,
        simply_closed,
        robust: reduction_closed || expansion_closed || simply_closed,
    })
}

/// Named colouring families expressible as a single pattern set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Proper colourings in the graph sense: every edge rainbow.
    ClassicalGraph,
    /// No monochromatic edge. Also the pattern set of a D-edge.
    ClassicalHypergraph,
    /// No rainbow edge (the pattern set of a C-edge).
    NotRainbow,
    /// Neither monochromatic nor rainbow.
    Nmnr,
    /// Number of colours per edge within `alpha..=beta`.
    AlphaBeta { alpha: u32, beta: u32 },
    /// Between `s` and `t` colours per edge, and the largest colour class
    /// within `a..=b`.
    StablyBounded { s: u32, t: u32, a: u32, b: u32 },
    /// Some colour occurs exactly once in every edge.
    ConflictFree,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::ClassicalGraph => "classical-graph".into(),
            Family::ClassicalHypergraph => "classical-hypergraph".into(),
            Family::NotRainbow => "not-rainbow".into(),
            Family::Nmnr => "nmnr".into(),
            Family::AlphaBeta { alpha, beta } => alloc::format!("alpha-beta({alpha},{beta})"),
            Family::StablyBounded { s, t, a, b } => {
                alloc::format!("stably-bounded({s},{t},{a},{b})")
            }
            Family::ConflictFree => "conflict-free".into(),
        }
    }

    fn admits(&self, p: &Partition) -> bool {
        let k = p.num_parts() as u32;
        match *self {
            Family::ClassicalGraph => p.is_rainbow(),
            Family::ClassicalHypergraph => !p.is_monochromatic(),
            Family::NotRainbow => !p.is_rainbow(),
            Family::Nmnr => !p.is_monochromatic() && !p.is_rainbow(),
            Family::AlphaBeta { alpha, beta } => alpha <= k && k <= beta,
            Family::StablyBounded { s, t, a, b } => {
                s <= k && k <= t && a <= p.largest() && p.largest() <= b
            }
            Family::ConflictFree => p.smallest() == 1,
        }
    }

    fn check(&self, r: u32) -> Result<()> {
        let ok = match *self {
            Family::AlphaBeta { alpha, beta } => 1 <= alpha && alpha <= beta && beta <= r,
            Family::StablyBounded { s, t, a, b } => {
                1 <= s && s <= t && t <= r && 1 <= a && a <= b && b <= r
            }
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(alloc::format!(
                "parameters of {} out of range for r = {r}",
                self.name()
            )))
        }
    }
}

/// The pattern set of a named colouring family at uniformity `r`.
pub fn build_family(family: Family, r: u32) -> Result<PatternSet> {
    family.check(r)?;
    let all = enumerate_partitions(r)?;
    let members = all.members.into_iter().filter(|p| family.admits(p)).collect();
    Ok(PatternSet { r, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn set(parts: &[&[u32]]) -> PatternSet {
        PatternSet::from_parts(parts.iter().map(|x| x.to_vec())).unwrap()
    }

    #[test]
    fn construction_sorts_and_rejects_zero() {
        assert_eq!(p(&[1, 3, 1]).parts(), &[3, 1, 1]);
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(Vec::<u32>::new()).is_err());
        assert_eq!(p(&[3, 1, 1, 1]).r(), 6);
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "[3, 1,1,1]".parse().unwrap();
        assert_eq!(q.to_string(), "[3,1,1,1]");
        assert_eq!("(2,2)".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("[a]".parse::<Partition>().is_err());
    }

    #[test]
    fn enumeration_small() {
        let three: Vec<_> = enumerate_partitions(3).unwrap().iter().cloned().collect();
        assert_eq!(three, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let four: Vec<_> = enumerate_partitions(4).unwrap().iter().cloned().collect();
        assert_eq!(
            four,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn single_steps() {
        assert_eq!(reduce_once(&p(&[3, 1, 1, 1])), set(&[&[4, 1, 1], &[3, 2, 1]]));
        assert!(reduce_once(&p(&[6])).is_empty());
        assert_eq!(reduce_once(&p(&[2, 1])), set(&[&[3]]));
        assert_eq!(expand_once(&p(&[3, 3])), set(&[&[3, 2, 1]]));
        assert!(expand_once(&Partition::rainbow(6)).is_empty());
        assert_eq!(expand_once(&p(&[2, 2])), set(&[&[2, 1, 1]]));
    }

    #[test]
    fn closures_worked_examples() {
        let rd = rd_closure(&set(&[&[3, 1, 1, 1]])).unwrap();
        assert_eq!(
            rd,
            set(&[&[3, 1, 1, 1], &[4, 1, 1], &[3, 2, 1], &[5, 1], &[4, 2], &[3, 3], &[6]])
        );
        let ex = ex_closure(&set(&[&[3, 3]])).unwrap();
        assert_eq!(
            ex,
            set(&[&[3, 3], &[3, 2, 1], &[2, 2, 1, 1], &[3, 1, 1, 1], &[2, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1]])
        );
        let m = set(&[&[6]]);
        assert_eq!(rd_closure(&m).unwrap(), m);
        let r = set(&[&[1, 1, 1, 1]]);
        assert_eq!(ex_closure(&r).unwrap(), r);
        assert_eq!(
            ex_closure(&set(&[&[4]])).unwrap(),
            set(&[&[4], &[3, 1], &[2, 1, 1], &[1, 1, 1, 1]])
        );
        assert!(rd_closure(&PatternSet::empty(3)).is_err());
        assert!(ex_closure(&PatternSet::empty(3)).is_err());
    }

    #[test]
    fn chain_is_ex_of_m() {
        for r in 1..=8 {
            let m = PatternSet::new(r, [Partition::monochromatic(r)]).unwrap();
            assert_eq!(ex_closure(&m).unwrap(), monochromatic_chain(r));
        }
    }

    #[test]
    fn robustness() {
        let c = classify_robust(&set(&[&[3, 1]])).unwrap();
        assert!(!c.reduction_closed && !c.expansion_closed && !c.simply_closed && !c.robust);
        let c = classify_robust(&monochromatic_chain(4)).unwrap();
        assert!(c.simply_closed && c.robust);
        let c = classify_robust(&enumerate_partitions(4).unwrap()).unwrap();
        assert!(c.reduction_closed && c.expansion_closed && c.robust);
        assert!(classify_robust(&PatternSet::empty(4)).is_err());
    }

    #[test]
    fn max_part_and_count() {
        let q = set(&[&[3, 1], &[2, 1, 1]]);
        assert_eq!(q.max_part().unwrap(), 3);
        assert_eq!(q.max_num_parts().unwrap(), 3);
        assert!(PatternSet::empty(4).max_part().is_err());
        assert!(PatternSet::empty(4).max_num_parts().is_err());
    }

    #[test]
    fn mixed_r_rejected() {
        let mut q = PatternSet::empty(4);
        assert!(q.insert(p(&[2, 1])).is_err());
        assert!(set(&[&[2, 1]]).union(&set(&[&[4]])).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(build_family(Family::Nmnr, 4).unwrap(), set(&[&[3, 1], &[2, 2], &[2, 1, 1]]));
        assert_eq!(
            build_family(Family::ConflictFree, 4).unwrap(),
            set(&[&[3, 1], &[2, 1, 1], &[1, 1, 1, 1]])
        );
        assert_eq!(build_family(Family::ClassicalGraph, 3).unwrap(), set(&[&[1, 1, 1]]));
        assert_eq!(
            build_family(Family::ClassicalHypergraph, 3).unwrap(),
            set(&[&[2, 1], &[1, 1, 1]])
        );
        assert_eq!(build_family(Family::NotRainbow, 3).unwrap(), set(&[&[3], &[2, 1]]));
        // classical hypergraph colourings are the (2, r) family, NMNR the (2, r-1) family
        assert_eq!(
            build_family(Family::AlphaBeta { alpha: 2, beta: 5 }, 5).unwrap(),
            build_family(Family::ClassicalHypergraph, 5).unwrap()
        );
        assert_eq!(
            build_family(Family::AlphaBeta { alpha: 2, beta: 4 }, 5).unwrap(),
            build_family(Family::Nmnr, 5).unwrap()
        );
        assert!(build_family(Family::AlphaBeta { alpha: 3, beta: 2 }, 4).is_err());
        assert!(build_family(Family::AlphaBeta { alpha: 1, beta: 5 }, 4).is_err());
        assert!(build_family(Family::StablyBounded { s: 0, t: 2, a: 1, b: 1 }, 4).is_err());
        assert!(build_family(Family::StablyBounded { s: 2, t: 3, a: 3, b: 2 }, 4).is_err());
    }

    #[test]
    fn stably_bounded_against_direct_filter() {
        let (s, t, a, b) = (2u32, 3u32, 2u32, 3u32);
        let got = build_family(Family::StablyBounded { s, t, a, b }, 4).unwrap();
        let expected: Vec<Partition> = enumerate_partitions(4)
            .unwrap()
            .iter()
            .filter(|x| {
                let k = x.parts().len() as u32;
                (s..=t).contains(&k) && (a..=b).contains(&x.parts()[0])
            })
            .cloned()
            .collect();
        assert_eq!(got, PatternSet::new(4, expected).unwrap());
        assert_eq!(got, set(&[&[3, 1], &[2, 2], &[2, 1, 1]]));
    }
}
