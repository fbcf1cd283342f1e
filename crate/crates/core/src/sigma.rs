//! Distribution-level colouring engine for Sigma-hypergraphs.
//!
//! Vertices inside a class of `H(n, r, q | Σ)` are interchangeable, so
//! whether a vertex colouring is valid depends only on how many vertices of
//! each colour every class holds. This module searches over those count
//! matrices ([`DistributionMatrix`]) and never materializes edges.
//!
//! Matrices are kept in a canonical colour order: columns sorted
//! lexicographically decreasing when read from class 0 down. That orders
//! colours by the first class they appear in, then by their count there, and
//! makes two matrices equal exactly when they differ by a colour relabelling.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::colouring::{Colouring, Completion, Spectrum};
use crate::hypergraph::SigmaStructure;
use crate::partitions::{Partition, PatternSet};
use crate::{Budget, Decision, Error, Result};

/// Largest class count the engine handles (class sets are bitmasks).
pub const MAX_CLASSES: u32 = 128;

/// Per-class colour multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistributionMatrix {
    n: u32,
    q: u32,
    k: u32,
    /// Row-major `n × k`.
    counts: Vec<u32>,
}

impl DistributionMatrix {
    /// Builds a matrix from rows that may be ragged (missing entries are 0).
    /// Colours used by no class are dropped; column order is kept.
    pub fn new(q: u32, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("a distribution needs at least one class"));
        }
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        for (i, row) in rows.iter().enumerate() {
            let sum: u32 = row.iter().sum();
            if sum != q {
                return Err(Error::invalid(alloc::format!(
                    "class {i} holds {sum} vertices, expected {q}"
                )));
            }
        }
        let keep: Vec<usize> = (0..width)
            .filter(|&c| rows.iter().any(|r| r.get(c).copied().unwrap_or(0) > 0))
            .collect();
        let mut counts = Vec::with_capacity(rows.len() * keep.len());
        for row in rows {
            counts.extend(keep.iter().map(|&c| row.get(c).copied().unwrap_or(0)));
        }
        Ok(DistributionMatrix {
            n: rows.len() as u32,
            q,
            k: keep.len() as u32,
            counts,
        })
    }

    /// The matrix of a vertex colouring of `s`.
    pub fn from_colouring(s: &SigmaStructure, c: &Colouring) -> Result<Self> {
        if c.len() != s.vertex_count() as usize {
            return Err(Error::invalid("colouring does not cover the structure"));
        }
        let k = c.k() as usize;
        let mut rows = alloc::vec![alloc::vec![0u32; k]; s.n() as usize];
        for v in 0..s.vertex_count() {
            rows[s.class_of(v) as usize][c.colour(v) as usize] += 1;
        }
        DistributionMatrix::new(s.q(), &rows)
    }

    /// Each class monochromatic in its own colour.
    pub fn cdmc(n: u32, q: u32) -> Self {
        let mut counts = alloc::vec![0; (n * n) as usize];
        for i in 0..n {
            counts[(i * n + i) as usize] = q;
        }
        DistributionMatrix { n, q, k: n, counts }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of colours used.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn row(&self, class: u32) -> &[u32] {
        let k = self.k as usize;
        &self.counts[class as usize * k..(class as usize + 1) * k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.counts.chunks(self.k.max(1) as usize).take(self.n as usize)
    }

    /// Total vertices of each colour.
    pub fn colour_totals(&self) -> Vec<u32> {
        let mut t = alloc::vec![0u32; self.k as usize];
        for row in self.rows() {
            for (c, &x) in row.iter().enumerate() {
                t[c] += x;
            }
        }
        t
    }

    fn column(&self, c: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.n as usize).map(move |i| self.counts[i * self.k as usize + c])
    }

    /// Same matrix with colours put in canonical order.
    pub fn canonical(&self) -> Self {
        let mut cols: Vec<Vec<u32>> = (0..self.k as usize).map(|c| self.column(c).collect()).collect();
        cols.sort_by(|a, b| b.cmp(a));
        let k = cols.len();
        let mut counts = alloc::vec![0; self.n as usize * k];
        for (c, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                counts[i * k + c] = x;
            }
        }
        DistributionMatrix {
            n: self.n,
            q: self.q,
            k: self.k,
            counts,
        }
    }

    pub fn is_canonical(&self) -> bool {
        (1..self.k as usize).all(|c| self.column(c - 1).cmp(self.column(c)) != core::cmp::Ordering::Less)
    }

    /// Swaps colour labels: column `c` moves to position `perm[c]`.
    pub fn permute_colours(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.k as usize {
            return Err(Error::invalid("permutation length differs from k"));
        }
        let mut seen = alloc::vec![false; perm.len()];
        for &p in perm {
            if p as usize >= perm.len() || core::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        let k = self.k as usize;
        let mut counts = alloc::vec![0; self.counts.len()];
        for i in 0..self.n as usize {
            for c in 0..k {
                counts[i * k + perm[c] as usize] = self.counts[i * k + c];
            }
        }
        Ok(DistributionMatrix { counts, ..self.clone() })
    }

    /// A vertex colouring with this matrix: inside each class, colours are
    /// laid out in column order.
    pub fn realize(&self) -> Colouring {
        let mut colours = Vec::with_capacity((self.n * self.q) as usize);
        for row in self.rows() {
            for (c, &x) in row.iter().enumerate() {
                colours.extend(core::iter::repeat_n(c as u32, x as usize));
            }
        }
        Colouring::new(colours, self.k).expect("every column of a distribution is used")
    }
}

impl fmt::Debug for DistributionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}

/// An achievable forbidden pattern, with the placement that achieves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub pattern: Partition,
    /// Edge type used.
    pub sigma: Partition,
    /// Class hosting each part of `sigma`, in the order of `sigma`'s parts.
    pub classes: Vec<u32>,
    /// Colour counts picked from each hosting class.
    pub picks: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistValidity {
    Valid,
    Invalid(ForbiddenWitness),
}

impl DistValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, DistValidity::Valid)
    }
}

/// Where the previous part went, which constrains the next part of equal size.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prev {
    /// Start of a run of equal parts: any class.
    Free,
    Placed(u32),
    /// The rest of the run must be deferred too.
    Deferred,
}

/// Walks every way of placing an edge type onto rows of a (partial) matrix.
///
/// Parts go to distinct classes; parts of equal size take increasing class
/// indices. Within a class a part picks a sub-multiset of that class's
/// colours. Up to `defer_limit` parts may be left for classes not yet filled
/// (the last parts of a run of equal sizes first); leaves report how many
/// were deferred. States already explored are skipped, since everything
/// reachable from them was already reported.
struct Placer<'a> {
    rows: &'a [u32],
    k: usize,
    /// Nonzero colours per row.
    support: &'a [Vec<u32>],
    parts: Vec<u32>,
    /// First part that takes part in the equal-size ordering.
    ordered_from: usize,
    class_limit: u32,
    defer_limit: u32,
    seen: BTreeSet<(usize, u128, Prev, u32, Vec<u32>)>,
}

type Trail = Vec<(u32, Vec<u32>)>;

impl Placer<'_> {
    fn prev_for(&self, i: usize, prev: Prev) -> Prev {
        if i > self.ordered_from && self.parts[i] == self.parts[i - 1] {
            prev
        } else {
            Prev::Free
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn run(
        &mut self,
        i: usize,
        mask: u128,
        prev: Prev,
        deferred: u32,
        totals: &mut Vec<u32>,
        trail: &mut Trail,
        leaf: &mut impl FnMut(&[u32], &Trail, u32) -> bool,
    ) -> bool {
        if i == self.parts.len() {
            return leaf(totals, trail, deferred);
        }
        let prev = self.prev_for(i, prev);
        if !self.seen.insert((i, mask, prev, deferred, totals.clone())) {
            return false;
        }
        if prev != Prev::Deferred {
            let start = match prev {
                Prev::Placed(c) => c + 1,
                _ => 0,
            };
            for class in start..self.class_limit {
                if mask & (1u128 << class) != 0 {
                    continue;
                }
                let row = &self.rows[class as usize * self.k..(class as usize + 1) * self.k];
                let support = &self.support[class as usize];
                let mut pick = alloc::vec![0u32; self.k];
                if self.pick(row, support, 0, self.parts[i], &mut pick, i, class, mask, deferred, totals, trail, leaf) {
                    return true;
                }
            }
        }
        if deferred < self.defer_limit {
            return self.run(i + 1, mask, Prev::Deferred, deferred + 1, totals, trail, leaf);
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn pick(
        &mut self,
        row: &[u32],
        support: &[u32],
        s: usize,
        need: u32,
        pick: &mut Vec<u32>,
        i: usize,
        class: u32,
        mask: u128,
        deferred: u32,
        totals: &mut Vec<u32>,
        trail: &mut Trail,
        leaf: &mut impl FnMut(&[u32], &Trail, u32) -> bool,
    ) -> bool {
        if need == 0 {
            trail.push((class, pick.clone()));
            let stop = self.run(i + 1, mask | (1u128 << class), Prev::Placed(class), deferred, totals, trail, leaf);
            trail.pop();
            return stop;
        }
        if s == support.len() {
            return false;
        }
        let rest: u32 = support[s..].iter().map(|&c| row[c as usize]).sum();
        if rest < need {
            return false;
        }
        let c = support[s] as usize;
        for take in (0..=row[c].min(need)).rev() {
            pick[c] = take;
            totals[c] += take;
            let stop = self.pick(row, support, s + 1, need - take, pick, i, class, mask, deferred, totals, trail, leaf);
            totals[c] -= take;
            pick[c] = 0;
            if stop {
                return true;
            }
        }
        false
    }
}

fn supports(rows: &[u32], k: usize, n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            (0..k as u32)
                .filter(|&c| rows[i * k + c as usize] > 0)
                .collect()
        })
        .collect()
}

/// Visits every placement of `sigma` onto classes `0..class_limit`, leaving
/// up to `defer_limit` parts unplaced. When `anchor` is set, one part must
/// sit in that class (and `class_limit` should be `anchor + 1`). Stops early
/// when `leaf` returns `true`.
#[allow(clippy::too_many_arguments)]
fn for_each_placement(
    rows: &[u32],
    k: usize,
    support: &[Vec<u32>],
    sigma: &Partition,
    class_limit: u32,
    anchor: Option<u32>,
    defer_limit: u32,
    leaf: &mut impl FnMut(&[u32], &Trail, u32) -> bool,
) -> bool {
    let parts = sigma.parts();
    if parts.len() as u64 > class_limit as u64 + defer_limit as u64 {
        return false;
    }
    let placer = |parts: Vec<u32>, ordered_from| Placer {
        rows,
        k,
        support,
        parts,
        ordered_from,
        class_limit,
        defer_limit,
        seen: BTreeSet::new(),
    };
    match anchor {
        None => {
            let mut totals = alloc::vec![0; k];
            placer(parts.to_vec(), 0).run(0, 0, Prev::Free, 0, &mut totals, &mut Vec::new(), leaf)
        }
        Some(a) => {
            // one part in the anchor class, the rest before it or deferred
            let mut distinct: Vec<u32> = parts.to_vec();
            distinct.dedup();
            for &first in &distinct {
                let mut reordered = alloc::vec![first];
                let at = parts.iter().position(|&p| p == first).expect("part of sigma");
                reordered.extend(parts[..at].iter().chain(&parts[at + 1..]));
                let mut p = placer(reordered, 1);
                let row = &rows[a as usize * k..(a as usize + 1) * k];
                let mut pick = alloc::vec![0u32; k];
                let mut totals = alloc::vec![0; k];
                let sup = &support[a as usize];
                if p.pick(row, sup, 0, first, &mut pick, 0, a, 0, 0, &mut totals, &mut Vec::new(), leaf) {
                    return true;
                }
            }
            false
        }
    }
}

fn pattern_of(totals: &[u32]) -> Partition {
    Partition::from_counts(totals.iter().copied())
}

fn check_structure(d: &DistributionMatrix, sigma_set: &PatternSet) -> Result<()> {
    if d.n > MAX_CLASSES {
        return Err(Error::Resource(alloc::format!(
            "the distribution engine handles at most {MAX_CLASSES} classes"
        )));
    }
    if sigma_set.r() > d.q * d.n && !sigma_set.is_empty() {
        // nothing fits; not an error
    }
    Ok(())
}

/// Every colour pattern some edge of type in `sigma_set` can show under a
/// vertex colouring with distribution `d`.
pub fn realizable_patterns(d: &DistributionMatrix, sigma_set: &PatternSet) -> Result<PatternSet> {
    check_structure(d, sigma_set)?;
    let k = d.k as usize;
    let support = supports(&d.counts, k, d.n as usize);
    let mut out = PatternSet::empty(sigma_set.r());
    for sigma in sigma_set {
        for_each_placement(&d.counts, k, &support, sigma, d.n, None, 0, &mut |totals, _, _| {
            out.insert(pattern_of(totals)).expect("pattern sums to r");
            false
        });
    }
    Ok(out)
}

fn find_forbidden(
    rows: &[u32],
    k: usize,
    support: &[Vec<u32>],
    sigma_set: &PatternSet,
    q: &PatternSet,
    class_limit: u32,
    anchor: Option<u32>,
) -> Option<ForbiddenWitness> {
    for sigma in sigma_set {
        let mut found = None;
        for_each_placement(rows, k, support, sigma, class_limit, anchor, 0, &mut |totals, trail, _| {
            let p = pattern_of(totals);
            if q.contains(&p) {
                return false;
            }
            // report parts in the edge type's own order
            let mut placed: Vec<(u32, u32, Vec<u32>)> = trail
                .iter()
                .map(|(class, pick)| (pick.iter().sum::<u32>(), *class, pick.clone()))
                .collect();
            placed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            found = Some(ForbiddenWitness {
                pattern: p,
                sigma: sigma.clone(),
                classes: placed.iter().map(|x| x.1).collect(),
                picks: placed.into_iter().map(|x| x.2).collect(),
            });
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Whether some placement touching class `anchor` already rules the partial
/// matrix out: either a fully placed edge shows a pattern outside `Q`, or the
/// placed parts of an edge cannot be completed to any allowed pattern
/// whatever the classes still to be filled hold.
#[allow(clippy::too_many_arguments)]
fn row_rejected(
    rows: &[u32],
    k: usize,
    support: &[Vec<u32>],
    sigma_set: &PatternSet,
    q: &PatternSet,
    completion: &Completion,
    anchor: u32,
    rows_left: u32,
) -> bool {
    let mut counts = Vec::with_capacity(k);
    sigma_set.iter().any(|sigma| {
        for_each_placement(rows, k, support, sigma, anchor + 1, Some(anchor), rows_left, &mut |totals, _, deferred| {
            if deferred == 0 {
                return !q.contains(&pattern_of(totals));
            }
            counts.clear();
            counts.extend(totals.iter().copied().filter(|&x| x > 0));
            counts.sort_unstable_by(|a, b| b.cmp(a));
            !completion.completable(&counts)
        })
    })
}

/// Valid iff every realizable pattern lies in `q`; otherwise reports one
/// forbidden pattern and how to achieve it.
pub fn dist_valid(d: &DistributionMatrix, sigma_set: &PatternSet, q: &PatternSet) -> Result<DistValidity> {
    check_structure(d, sigma_set)?;
    if sigma_set.r() != q.r() {
        return Err(Error::invalid("edge types and patterns partition different r"));
    }
    let k = d.k as usize;
    let support = supports(&d.counts, k, d.n as usize);
    Ok(match find_forbidden(&d.counts, k, &support, sigma_set, q, d.n, None) {
        Some(w) => DistValidity::Invalid(w),
        None => DistValidity::Valid,
    })
}

/// Canonical row-by-row search over distribution matrices with exactly `k`
/// colours.
///
/// Classes are filled in order. Each row is a composition of `q` into `k`
/// colour counts, tried in lexicographically decreasing order, restricted so
/// the columns stay in canonical order. After each row, every placement of
/// an edge type that touches the new row is checked against `Q`; parts that
/// would need classes not yet filled are left open, and the placed parts
/// must then still complete to some pattern of `Q`.
pub struct SigmaSearch<'a> {
    s: &'a SigmaStructure,
    q: &'a PatternSet,
    k: u32,
    sigma: PatternSet,
    completion: Completion,
    sorted_rows: bool,
}

struct Frame {
    rows: Vec<u32>,
    tied: Vec<bool>,
    introduced: u32,
}

impl<'a> SigmaSearch<'a> {
    pub fn new(s: &'a SigmaStructure, q: &'a PatternSet, k: u32) -> Result<Self> {
        if q.r() != s.r() {
            return Err(Error::invalid(alloc::format!(
                "patterns are partitions of {} but the structure is {}-uniform",
                q.r(),
                s.r()
            )));
        }
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if s.n() > MAX_CLASSES {
            return Err(Error::Resource(alloc::format!(
                "the distribution engine handles at most {MAX_CLASSES} classes"
            )));
        }
        let realizable = s.sigma().iter().filter(|x| s.realizable(x)).cloned();
        let sigma = PatternSet::new(s.r(), realizable)?;
        Ok(SigmaSearch {
            s,
            q,
            k,
            sigma,
            completion: Completion::new(q, k),
            sorted_rows: true,
        })
    }

    /// Also visit matrices whose rows are out of order. By default rows are
    /// kept lexicographically non-increasing too, which is enough to decide
    /// existence because classes are interchangeable and some row and column
    /// permutation of any matrix has both rows and columns sorted. Counting
    /// colourings up to colour relabelling needs every row order.
    pub fn all_row_orders(mut self) -> Self {
        self.sorted_rows = false;
        self
    }

    /// First valid canonical matrix in search order.
    pub fn first(&self, budget: &mut impl Budget) -> Decision<DistributionMatrix> {
        let mut found = None;
        match self.visit(budget, &mut |d| {
            found = Some(d.clone());
            false
        }) {
            Walk::Stopped => Decision::Found(found.expect("stopped on a witness")),
            Walk::Done => Decision::Infeasible,
            Walk::OutOfBudget => Decision::Unknown,
        }
    }

    /// Calls `f` on every valid canonical matrix until it returns `false`.
    pub fn visit(&self, budget: &mut impl Budget, f: &mut impl FnMut(&DistributionMatrix) -> bool) -> Walk {
        let (n, q, k) = (self.s.n(), self.s.q(), self.k);
        if (k as u64) > (n as u64) * (q as u64) {
            return Walk::Done;
        }
        let mut frame = Frame {
            rows: Vec::with_capacity((n * k) as usize),
            tied: alloc::vec![true; k.saturating_sub(1) as usize],
            introduced: 0,
        };
        self.class(0, &mut frame, budget, f)
    }

    fn class(
        &self,
        i: u32,
        fr: &mut Frame,
        budget: &mut impl Budget,
        f: &mut impl FnMut(&DistributionMatrix) -> bool,
    ) -> Walk {
        let (n, k) = (self.s.n(), self.k);
        if i == n {
            if fr.introduced < k {
                return Walk::Done;
            }
            let d = DistributionMatrix {
                n,
                q: self.s.q(),
                k,
                counts: fr.rows.clone(),
            };
            return if f(&d) { Walk::Done } else { Walk::Stopped };
        }
        let mut row = alloc::vec![0u32; k as usize];
        let follow = self.sorted_rows && i > 0;
        self.row(i, 0, self.s.q(), follow, &mut row, fr, budget, f)
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &self,
        i: u32,
        j: usize,
        left: u32,
        // row so far equals the previous row's prefix
        follow: bool,
        row: &mut Vec<u32>,
        fr: &mut Frame,
        budget: &mut impl Budget,
        f: &mut impl FnMut(&DistributionMatrix) -> bool,
    ) -> Walk {
        let k = self.k as usize;
        if j == k {
            if left > 0 {
                return Walk::Done;
            }
            return self.accept_row(i, row, fr, budget, f);
        }
        let mut cap = if j > 0 && fr.tied[j - 1] { row[j - 1].min(left) } else { left };
        let above = if follow { fr.rows[(i as usize - 1) * k + j] } else { 0 };
        if follow {
            cap = cap.min(above);
        }
        // the remaining columns must be able to absorb what is left
        let later_cap: u32 = if j + 1 < k { left } else { 0 };
        let lowest = left.saturating_sub(later_cap);
        let mut x = cap + 1;
        while x > lowest {
            x -= 1;
            row[j] = x;
            match self.row(i, j + 1, left - x, follow && x == above, row, fr, budget, f) {
                Walk::Done => {}
                other => {
                    row[j] = 0;
                    return other;
                }
            }
        }
        row[j] = 0;
        Walk::Done
    }

    fn accept_row(
        &self,
        i: u32,
        row: &[u32],
        fr: &mut Frame,
        budget: &mut impl Budget,
        f: &mut impl FnMut(&DistributionMatrix) -> bool,
    ) -> Walk {
        if budget.tick() {
            return Walk::OutOfBudget;
        }
        let (n, q, k) = (self.s.n(), self.s.q(), self.k);
        let introduced = row
            .iter()
            .rposition(|&x| x > 0)
            .map_or(0, |p| p as u32 + 1)
            .max(fr.introduced);
        let rows_left = n - i - 1;
        if (introduced as u64) + (rows_left as u64) * (q as u64) < k as u64 {
            return Walk::Done;
        }
        let old_len = fr.rows.len();
        fr.rows.extend_from_slice(row);
        let support = supports(&fr.rows, k as usize, (i + 1) as usize);
        let bad = row_rejected(&fr.rows, k as usize, &support, &self.sigma, self.q, &self.completion, i, rows_left);
        let result = if bad {
            Walk::Done
        } else {
            let saved_tied = fr.tied.clone();
            let saved_intro = fr.introduced;
            for j in 0..fr.tied.len() {
                fr.tied[j] = fr.tied[j] && row[j] == row[j + 1];
            }
            fr.introduced = introduced;
            let w = self.class(i + 1, fr, budget, f);
            fr.tied = saved_tied;
            fr.introduced = saved_intro;
            w
        };
        fr.rows.truncate(old_len);
        result
    }
}

/// How a [`SigmaSearch::visit`] walk ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Walk {
    /// Every matrix was visited.
    Done,
    /// The visitor asked to stop.
    Stopped,
    OutOfBudget,
}

/// A canonical valid distribution with exactly `k` colours, if any.
pub fn sigma_exists_k(
    s: &SigmaStructure,
    q: &PatternSet,
    k: u32,
    budget: &mut impl Budget,
) -> Result<Decision<DistributionMatrix>> {
    Ok(SigmaSearch::new(s, q, k)?.first(budget))
}

/// Decides every `k` in `1..=k_max`, each with a fresh budget.
pub fn sigma_spectrum<B: Budget>(
    s: &SigmaStructure,
    q: &PatternSet,
    k_max: u32,
    mut new_budget: impl FnMut() -> B,
) -> Result<Spectrum> {
    if k_max as u64 > s.vertex_count() as u64 {
        return Err(Error::invalid(alloc::format!(
            "k_max = {k_max} exceeds the {} vertices",
            s.vertex_count()
        )));
    }
    SigmaSearch::new(s, q, 1)?;
    Ok(Spectrum::from_decisions(k_max, |k| {
        let mut b = new_budget();
        SigmaSearch::new(s, q, k)
            .expect("arguments validated above")
            .first(&mut b)
            .map(|_| ())
    }))
}

/// Every valid canonical distribution with exactly `k` colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub matrices: Vec<DistributionMatrix>,
    /// `false` when the budget or the item cap cut the walk short.
    pub complete: bool,
}

/// Collects valid canonical distributions, in search order, up to `max_items`.
pub fn enumerate_valid_distributions(
    s: &SigmaStructure,
    q: &PatternSet,
    k: u32,
    max_items: usize,
    budget: &mut impl Budget,
) -> Result<Enumeration> {
    let search = SigmaSearch::new(s, q, k)?.all_row_orders();
    let mut matrices = Vec::new();
    let walk = search.visit(budget, &mut |d| {
        if matrices.len() == max_items {
            return false;
        }
        matrices.push(d.clone());
        true
    });
    Ok(Enumeration {
        matrices,
        complete: walk == Walk::Done,
    })
}
