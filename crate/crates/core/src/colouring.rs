//! Vertex colourings, pattern checks and the explicit colourability search.
//!
//! A `k`-colouring here always uses all `k` colours: spectra and gaps are
//! only meaningful when the number of colours is exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::hypergraph::Hypergraph;
use crate::partitions::{Partition, PatternSet};
use crate::{Budget, Decision, Error, Result, Verdict};

/// A surjective assignment of colours `0..k` to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<u32>,
    k: u32,
}

impl Colouring {
    /// Fails unless every colour is below `k` and every colour in `0..k` is used.
    pub fn new(colours: Vec<u32>, k: u32) -> Result<Self> {
        let mut used = alloc::vec![false; k as usize];
        for (v, &c) in colours.iter().enumerate() {
            if c >= k {
                return Err(Error::invalid(alloc::format!(
                    "vertex {v} has colour {c} but k = {k}"
                )));
            }
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(Error::invalid(alloc::format!("colour {c} of {k} is never used")));
        }
        Ok(Colouring { colours, k })
    }

    /// Relabels colours by first appearance, so any labelling is accepted.
    pub fn normalized(colours: &[u32]) -> Self {
        let mut relabel = BTreeMap::new();
        let out: Vec<u32> = colours
            .iter()
            .map(|c| {
                let next = relabel.len() as u32;
                *relabel.entry(*c).or_insert(next)
            })
            .collect();
        Colouring {
            k: relabel.len() as u32,
            colours: out,
        }
    }

    /// Every vertex the same colour.
    pub fn monochromatic(vertex_count: u32) -> Self {
        Colouring {
            colours: alloc::vec![0; vertex_count as usize],
            k: u32::from(vertex_count > 0),
        }
    }

    /// Every vertex its own colour.
    pub fn rainbow(vertex_count: u32) -> Self {
        Colouring {
            colours: (0..vertex_count).collect(),
            k: vertex_count,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn colour(&self, v: u32) -> u32 {
        self.colours[v as usize]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Number of vertices of each colour.
    pub fn class_sizes(&self) -> Vec<u32> {
        let mut sizes = alloc::vec![0u32; self.k as usize];
        for &c in &self.colours {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Applies a permutation of colour labels: colour `c` becomes `perm[c]`.
    pub fn permuted(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.k as usize {
            return Err(Error::invalid("permutation length differs from k"));
        }
        Colouring::new(self.colours.iter().map(|&c| perm[c as usize]).collect(), self.k)
    }
}

/// The colour pattern of an edge: colour multiplicities inside it, sorted.
pub fn pat(edge: &[u32], c: &Colouring) -> Partition {
    let mut cols: Vec<u32> = edge.iter().map(|&v| c.colour(v)).collect();
    cols.sort_unstable();
    Partition::from_counts(cols.chunk_by(|a, b| a == b).map(|run| run.len() as u32))
}

/// Result of a validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// The first edge (in edge order) whose pattern is not allowed.
    Violation { edge: Vec<u32>, pattern: Partition },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

fn check_domain(h: &Hypergraph, c: &Colouring) -> Result<()> {
    if c.len() != h.vertex_count() as usize {
        return Err(Error::invalid(alloc::format!(
            "colouring covers {} vertices, hypergraph has {}",
            c.len(),
            h.vertex_count()
        )));
    }
    Ok(())
}

/// Checks that every edge pattern lies in `q`.
pub fn is_valid(h: &Hypergraph, c: &Colouring, q: &PatternSet) -> Result<Validity> {
    check_domain(h, c)?;
    if q.r() != h.r() {
        return Err(Error::invalid(alloc::format!(
            "patterns are partitions of {} but the hypergraph is {}-uniform",
            q.r(),
            h.r()
        )));
    }
    for e in h.edges() {
        let p = pat(e, c);
        if !q.contains(&p) {
            return Ok(Validity::Violation {
                edge: e.to_vec(),
                pattern: p,
            });
        }
    }
    Ok(Validity::Valid)
}

/// Per-edge allowed pattern sets, keyed by the sorted vertex list.
pub type EdgeConstraints = BTreeMap<Vec<u32>, PatternSet>;

/// Edge kinds of a mixed hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Must not be monochromatic.
    D,
    /// Must not be rainbow.
    C,
}

/// Constraints assigning the same `q` to every edge.
pub fn uniform_constraints(h: &Hypergraph, q: &PatternSet) -> EdgeConstraints {
    h.edges().map(|e| (e.to_vec(), q.clone())).collect()
}

/// Constraints of a mixed hypergraph: D-edges forbid `M`, C-edges forbid `R`.
pub fn mixed_constraints(h: &Hypergraph, kind: impl Fn(&[u32]) -> EdgeKind) -> Result<EdgeConstraints> {
    use crate::partitions::{build_family, Family};
    let d = build_family(Family::ClassicalHypergraph, h.r())?;
    let c = build_family(Family::NotRainbow, h.r())?;
    Ok(h.edges()
        .map(|e| {
            let q = match kind(e) {
                EdgeKind::D => d.clone(),
                EdgeKind::C => c.clone(),
            };
            (e.to_vec(), q)
        })
        .collect())
}

/// Checks `pat(E) ∈ Q(E)` for every edge.
pub fn is_valid_l(h: &Hypergraph, c: &Colouring, constraints: &EdgeConstraints) -> Result<Validity> {
    check_domain(h, c)?;
    for e in h.edges() {
        let q = constraints.get(e).ok_or_else(|| {
            Error::invalid(alloc::format!("no constraint given for edge {e:?}"))
        })?;
        let p = pat(e, c);
        if !q.contains(&p) {
            return Ok(Validity::Violation {
                edge: e.to_vec(),
                pattern: p,
            });
        }
    }
    Ok(Validity::Valid)
}

/// Answers "can these partial colour counts still be completed to a pattern
/// in `Q` using at most `k` colours?".
///
/// A partial edge with sorted counts `c_1 ≥ … ≥ c_m` completes to `π` exactly
/// when `m ≤ s(π)` and `c_i ≤ π_i` for every `i`: the remaining slots fill
/// the slack of existing colours and the unmatched parts get fresh colours.
pub(crate) struct Completion {
    allowed: Vec<Vec<u32>>,
    /// Answers for every partial count multiset, keyed by a nibble encoding.
    table: Option<Vec<(u64, bool)>>,
}

impl Completion {
    pub(crate) fn new(q: &PatternSet, k: u32) -> Self {
        let allowed: Vec<Vec<u32>> = q
            .iter()
            .filter(|p| p.num_parts() <= k as usize)
            .map(|p| p.parts().to_vec())
            .collect();
        let mut this = Completion {
            allowed,
            table: None,
        };
        let r = q.r();
        if r <= 15 {
            let mut table = Vec::new();
            for m in 0..=r {
                let mut prefix = Vec::new();
                partial_partitions(m, m.max(1), &mut prefix, &mut |counts| {
                    table.push((encode(counts), this.direct(counts)));
                });
            }
            table.sort_unstable();
            this.table = Some(table);
        }
        this
    }

    fn direct(&self, sorted_counts: &[u32]) -> bool {
        self.allowed.iter().any(|pi| {
            sorted_counts.len() <= pi.len() && sorted_counts.iter().zip(pi).all(|(c, p)| c <= p)
        })
    }

    /// `sorted_counts` must be non-increasing and positive.
    #[inline]
    pub(crate) fn completable(&self, sorted_counts: &[u32]) -> bool {
        match &self.table {
            Some(t) => {
                let key = encode(sorted_counts);
                match t.binary_search_by_key(&key, |&(k, _)| k) {
                    Ok(i) => t[i].1,
                    Err(_) => false,
                }
            }
            None => self.direct(sorted_counts),
        }
    }
}

fn encode(counts: &[u32]) -> u64 {
    counts.iter().fold(0u64, |acc, &c| (acc << 4) | c as u64) | ((counts.len() as u64) << 60)
}

fn partial_partitions(remaining: u32, max: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if remaining == 0 {
        f(prefix);
        return;
    }
    for part in (1..=max.min(remaining)).rev() {
        prefix.push(part);
        partial_partitions(remaining - part, part, prefix, f);
        prefix.pop();
    }
}

/// Sorted non-zero counts of the coloured vertices of an edge.
#[inline]
fn partial_counts(edge: &[u32], colour: &[u32], buf: &mut Vec<u32>, out: &mut Vec<u32>) {
    buf.clear();
    buf.extend(edge.iter().map(|&v| colour[v as usize]).filter(|&c| c != UNSET));
    buf.sort_unstable();
    out.clear();
    out.extend(buf.chunk_by(|a, b| a == b).map(|run| run.len() as u32));
    out.sort_unstable_by(|a, b| b.cmp(a));
}

const UNSET: u32 = u32::MAX;

/// Exact-`k` backtracking search over an explicit hypergraph.
///
/// Vertices are visited in order of decreasing degree (ties by index). A
/// vertex may take a colour at most one above the largest colour used so
/// far, which removes colour-permutation symmetry. After each assignment
/// every edge through the vertex must still be completable to some allowed
/// pattern, and enough vertices must remain to introduce the missing colours.
///
/// The witness returned is the lexicographically least valid colouring, read
/// along the search order, among colourings whose colours first appear in
/// increasing order.
pub struct ExplicitSearch<'a> {
    h: &'a Hypergraph,
    k: u32,
    order: Vec<u32>,
    incidence: Vec<Vec<u32>>,
    completion: Completion,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> ExplicitSearch<'a> {
    pub fn new(h: &'a Hypergraph, q: &PatternSet, k: u32) -> Result<Self> {
        if q.r() != h.r() {
            return Err(Error::invalid(alloc::format!(
                "patterns are partitions of {} but the hypergraph is {}-uniform",
                q.r(),
                h.r()
            )));
        }
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        let deg = h.degrees();
        let mut order: Vec<u32> = (0..h.vertex_count()).collect();
        order.sort_by(|&a, &b| deg[b as usize].cmp(&deg[a as usize]).then(a.cmp(&b)));
        Ok(ExplicitSearch {
            h,
            k,
            order,
            incidence: h.incidence(),
            completion: Completion::new(q, k),
        })
    }

    /// The vertex order the search assigns colours in.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn run(&self, budget: &mut impl Budget) -> Decision<Colouring> {
        let nv = self.h.vertex_count();
        if self.k > nv {
            return Decision::Infeasible;
        }
        let mut state = SearchState {
            colour: alloc::vec![UNSET; nv as usize],
            buf: Vec::new(),
            counts: Vec::new(),
        };
        match self.dfs(0, 0, &mut state, budget) {
            Step::Found => Decision::Found(Colouring {
                colours: state.colour,
                k: self.k,
            }),
            Step::Exhausted => Decision::Infeasible,
            Step::OutOfBudget => Decision::Unknown,
        }
    }

    fn dfs(&self, pos: usize, used: u32, st: &mut SearchState, budget: &mut impl Budget) -> Step {
        if budget.tick() {
            return Step::OutOfBudget;
        }
        let n = self.order.len();
        if pos == n {
            return if used == self.k { Step::Found } else { Step::Exhausted };
        }
        let v = self.order[pos];
        let left_after = (n - pos - 1) as u32;
        let top = used.min(self.k - 1);
        for c in 0..=top {
            let now_used = if c == used { used + 1 } else { used };
            if left_after < self.k - now_used {
                continue;
            }
            st.colour[v as usize] = c;
            if self.consistent(v, st) {
                match self.dfs(pos + 1, now_used, st, budget) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
        }
        st.colour[v as usize] = UNSET;
        Step::Exhausted
    }

    fn consistent(&self, v: u32, st: &mut SearchState) -> bool {
        for &e in &self.incidence[v as usize] {
            let edge = self.h.edge(e as usize);
            partial_counts(edge, &st.colour, &mut st.buf, &mut st.counts);
            if !self.completion.completable(&st.counts) {
                return false;
            }
        }
        true
    }
}

struct SearchState {
    colour: Vec<u32>,
    buf: Vec<u32>,
    counts: Vec<u32>,
}

/// Finds a valid colouring using exactly `k` colours, if one exists.
pub fn exists_k_colouring(
    h: &Hypergraph,
    k: u32,
    q: &PatternSet,
    budget: &mut impl Budget,
) -> Result<Decision<Colouring>> {
    Ok(ExplicitSearch::new(h, q, k)?.run(budget))
}

/// Feasible colour counts of a hypergraph, with undecided counts kept apart.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Spectrum {
    /// Colour counts with a valid colouring, ascending.
    pub feasible: Vec<u32>,
    /// Colour counts whose decision ran out of budget, ascending.
    pub unknown: Vec<u32>,
    /// Largest colour count examined.
    pub probed_max: u32,
}

impl Spectrum {
    /// Builds a spectrum by deciding each `k` in `1..=k_max`.
    pub fn from_decisions(k_max: u32, mut decide: impl FnMut(u32) -> Decision<()>) -> Self {
        let mut s = Spectrum {
            probed_max: k_max,
            ..Default::default()
        };
        for k in 1..=k_max {
            match decide(k) {
                Decision::Found(()) => s.feasible.push(k),
                Decision::Unknown => s.unknown.push(k),
                Decision::Infeasible => {}
            }
        }
        s
    }

    /// `χ_Q`, the least feasible count.
    pub fn lower(&self) -> Option<u32> {
        self.feasible.first().copied()
    }

    /// `χ̄_Q`, the greatest feasible count within the probed range.
    pub fn upper(&self) -> Option<u32> {
        self.feasible.last().copied()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.feasible.binary_search(&k).is_ok()
    }

    /// Status of a single colour count.
    pub fn status(&self, k: u32) -> Verdict {
        if self.contains(k) {
            Verdict::True
        } else if self.unknown.binary_search(&k).is_ok() || k > self.probed_max {
            Verdict::Unknown
        } else {
            Verdict::False
        }
    }

    /// Counts strictly between `χ_Q` and `χ̄_Q` proven infeasible.
    pub fn gaps(&self) -> Vec<u32> {
        match (self.lower(), self.upper()) {
            (Some(lo), Some(hi)) => (lo + 1..hi)
                .filter(|k| !self.contains(*k) && self.unknown.binary_search(k).is_err())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// `True` when a proven gap exists, `False` when the spectrum is fully
    /// decided without one, `Unknown` otherwise.
    pub fn has_gap(&self) -> Verdict {
        if !self.gaps().is_empty() {
            Verdict::True
        } else if self.unknown.is_empty() {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }

    pub fn is_complete(&self) -> bool {
        self.unknown.is_empty()
    }
}

/// Decides every `k` in `1..=k_max`, each with a fresh budget.
pub fn spectrum<B: Budget>(
    h: &Hypergraph,
    q: &PatternSet,
    k_max: u32,
    mut new_budget: impl FnMut() -> B,
) -> Result<Spectrum> {
    if k_max > h.vertex_count() {
        return Err(Error::invalid(alloc::format!(
            "k_max = {k_max} exceeds the {} vertices",
            h.vertex_count()
        )));
    }
    // validate arguments once up front
    ExplicitSearch::new(h, q, 1)?;
    Ok(Spectrum::from_decisions(k_max, |k| {
        let mut b = new_budget();
        ExplicitSearch::new(h, q, k)
            .expect("arguments validated above")
            .run(&mut b)
            .map(|_| ())
    }))
}

/// Smallest `k` admitting a colouring with no monochromatic edge, with a
/// witness. An edgeless hypergraph has chromatic number 1.
pub fn classical_chromatic_number(h: &Hypergraph, budget: &mut impl Budget) -> Result<Decision<Colouring>> {
    use crate::partitions::{build_family, Family};
    if h.edge_count() == 0 {
        return Ok(Decision::Found(Colouring::monochromatic(h.vertex_count())));
    }
    if h.r() < 2 {
        return Err(Error::invalid("a 1-uniform edge is monochromatic under every colouring"));
    }
    let q = build_family(Family::ClassicalHypergraph, h.r())?;
    for k in 1..=h.vertex_count() {
        match exists_k_colouring(h, k, &q, budget)? {
            Decision::Infeasible => continue,
            other => return Ok(other),
        }
    }
    Ok(Decision::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_complete, build_sigma_explicit, BuildLimits, SigmaStructure};
    use crate::partitions::enumerate_partitions;
    use crate::Unlimited;
    use alloc::vec;

    fn set(parts: &[&[u32]]) -> PatternSet {
        PatternSet::from_parts(parts.iter().map(|x| x.to_vec())).unwrap()
    }

    #[test]
    fn patterns() {
        let c = Colouring::new(vec![0, 0, 0, 1, 1, 2], 3).unwrap();
        assert_eq!(pat(&[0, 1, 2, 3], &c).parts(), &[3, 1]);
        assert_eq!(pat(&[0, 1, 2], &c).parts(), &[3]);
        assert_eq!(pat(&[0, 3, 5], &c).parts(), &[1, 1, 1]);
    }

    #[test]
    fn colouring_invariants() {
        assert!(Colouring::new(vec![0, 2], 3).is_err());
        assert!(Colouring::new(vec![0, 3], 3).is_err());
        let c = Colouring::normalized(&[5, 5, 2, 9]);
        assert_eq!(c.colours(), &[0, 0, 1, 2]);
        assert_eq!(c.k(), 3);
        assert_eq!(c.class_sizes(), vec![2, 1, 1]);
    }

    #[test]
    fn monochromatic_and_rainbow_validity() {
        let h = build_complete(5, 3, BuildLimits::default()).unwrap();
        let mono = Colouring::monochromatic(5);
        let rainbow = Colouring::rainbow(5);
        let with_m = set(&[&[3], &[2, 1]]);
        let with_r = set(&[&[2, 1], &[1, 1, 1]]);
        assert!(is_valid(&h, &mono, &with_m).unwrap().is_valid());
        assert!(!is_valid(&h, &mono, &with_r).unwrap().is_valid());
        assert!(is_valid(&h, &rainbow, &with_r).unwrap().is_valid());
        assert!(!is_valid(&h, &rainbow, &with_m).unwrap().is_valid());
        assert!(is_valid(&h, &Colouring::monochromatic(4), &with_m).is_err());
        assert!(is_valid(&h, &mono, &set(&[&[4]])).is_err());
    }

    #[test]
    fn l_colourings() {
        let h = build_complete(4, 3, BuildLimits::default()).unwrap();
        let q = set(&[&[2, 1]]);
        let c = Colouring::new(vec![0, 0, 1, 1], 2).unwrap();
        let uniform = uniform_constraints(&h, &q);
        assert_eq!(is_valid_l(&h, &c, &uniform).unwrap(), is_valid(&h, &c, &q).unwrap());

        let mono = Colouring::monochromatic(4);
        let all_d = mixed_constraints(&h, |_| EdgeKind::D).unwrap();
        match is_valid_l(&h, &mono, &all_d).unwrap() {
            Validity::Violation { edge, pattern } => {
                assert_eq!(edge, vec![0, 1, 2]);
                assert!(pattern.is_monochromatic());
            }
            Validity::Valid => panic!("monochromatic D-edge accepted"),
        }
        let all_c = mixed_constraints(&h, |_| EdgeKind::C).unwrap();
        assert!(!is_valid_l(&h, &Colouring::rainbow(4), &all_c).unwrap().is_valid());

        let mut partial = uniform.clone();
        partial.remove(&vec![0, 1, 2]);
        assert!(is_valid_l(&h, &c, &partial).is_err());
    }

    #[test]
    fn completion_rule() {
        let q = set(&[&[3, 1]]);
        let comp = Completion::new(&q, 2);
        assert!(comp.completable(&[]));
        assert!(comp.completable(&[2, 1]));
        assert!(!comp.completable(&[2, 2]));
        assert!(!comp.completable(&[1, 1, 1]));
        assert!(comp.completable(&[3, 1]));
        assert!(!comp.completable(&[4]));
        // no pattern fits in a single colour
        let comp1 = Completion::new(&q, 1);
        assert!(!comp1.completable(&[1]));
    }

    #[test]
    fn search_small_cases() {
        let h = build_complete(4, 3, BuildLimits::default()).unwrap();
        let q = enumerate_partitions(3).unwrap();
        for k in 1..=4 {
            let w = exists_k_colouring(&h, k, &q, &mut Unlimited).unwrap();
            let w = w.into_witness().expect("P(3) admits every k");
            assert_eq!(w.k(), k);
            assert!(is_valid(&h, &w, &q).unwrap().is_valid());
        }
        assert_eq!(
            exists_k_colouring(&h, 5, &q, &mut Unlimited).unwrap(),
            Decision::Infeasible
        );
    }

    #[test]
    fn out_of_budget_is_unknown() {
        let h = build_complete(9, 3, BuildLimits::default()).unwrap();
        let q = set(&[&[3], &[1, 1, 1]]);
        let d = exists_k_colouring(&h, 3, &q, &mut crate::NodeLimit::new(5)).unwrap();
        assert!(d.is_unknown());
    }

    #[test]
    fn chromatic_numbers() {
        let lim = BuildLimits::default();
        let k43 = build_complete(4, 3, lim).unwrap();
        let chi = classical_chromatic_number(&k43, &mut Unlimited).unwrap();
        assert_eq!(chi.witness().unwrap().k(), 2);
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            classical_chromatic_number(&single, &mut Unlimited).unwrap().witness().unwrap().k(),
            2
        );
        let empty = Hypergraph::new(3, 5, Vec::<Vec<u32>>::new()).unwrap();
        assert_eq!(
            classical_chromatic_number(&empty, &mut Unlimited).unwrap().witness().unwrap().k(),
            1
        );
        let s = SigmaStructure::new(3, 3, 3, set(&[&[2, 1]])).unwrap();
        let h = build_sigma_explicit(&s, lim).unwrap();
        assert_eq!(
            classical_chromatic_number(&h, &mut Unlimited).unwrap().witness().unwrap().k(),
            3
        );
    }

    #[test]
    fn spectrum_gap_bookkeeping() {
        let s = Spectrum {
            feasible: vec![2, 4],
            unknown: vec![],
            probed_max: 6,
        };
        assert_eq!(s.gaps(), vec![3]);
        assert_eq!(s.has_gap(), Verdict::True);
        assert_eq!(s.lower(), Some(2));
        assert_eq!(s.upper(), Some(4));
        let s = Spectrum {
            feasible: vec![2, 4],
            unknown: vec![3],
            probed_max: 6,
        };
        assert!(s.gaps().is_empty());
        assert_eq!(s.has_gap(), Verdict::Unknown);
        let s = Spectrum {
            feasible: vec![],
            unknown: vec![],
            probed_max: 6,
        };
        assert_eq!(s.has_gap(), Verdict::False);
        assert_eq!(s.status(3), Verdict::False);
        assert_eq!(s.status(7), Verdict::Unknown);
    }
}
