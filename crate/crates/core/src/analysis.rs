//! Claim-level procedures built on the engines: tight colourability, the
//! recolouring steps behind "robust families have no gaps", gap searches over
//! Sigma-hypergraph grids, the gap constructions for non-robust families, and
//! the Ramsey bundle check.

use alloc::string::String;
use alloc::vec::Vec;

use crate::colouring::{exists_k_colouring, is_valid, spectrum, Colouring, Spectrum};
use crate::hypergraph::{build_complete, build_ramsey, BuildLimits, Hypergraph, SigmaStructure};
use crate::partitions::{classify_robust, enumerate_partitions, monochromatic_chain, Partition, PatternSet};
use crate::sigma::{enumerate_valid_distributions, sigma_exists_k, sigma_spectrum, DistributionMatrix};
use crate::{Budget, Decision, Error, Result, Verdict};

/// Outcome of checking the four tightness conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightReport {
    pub spectrum: Spectrum,
    /// The single feasible colour count, when there is one. Otherwise the
    /// least feasible count, which conditions 2 and 3 are then checked at.
    pub k: Option<u32>,
    /// The canonical distribution found at `k`.
    pub matrix: Option<DistributionMatrix>,
    pub spectrum_singleton: Verdict,
    pub unique_up_to_relabel: Verdict,
    pub equal_class_sizes: Verdict,
    /// Whether `Σ`-colourability dies after dropping each pattern of `Q`.
    pub minimal_detail: Vec<(Partition, Verdict)>,
    pub minimal_over_q: Verdict,
    pub verdict: Verdict,
}

/// Checks tight `Q`-colourability of `H(n, r, q | Σ)`:
///
/// 1. the spectrum is a single value `k`;
/// 2. the `k`-colouring is unique up to exchanging colours (as a distribution);
/// 3. its colour classes all have the same size;
/// 4. for each `π ∈ Q`, no colouring survives with `Q \ {π}`.
///
/// Undecided sub-questions make the matching flag `Unknown`, never `False`.
pub fn check_tight<B: Budget>(
    s: &SigmaStructure,
    q: &PatternSet,
    mut new_budget: impl FnMut() -> B,
) -> Result<TightReport> {
    let spectrum = sigma_spectrum(s, q, s.vertex_count(), &mut new_budget)?;
    let spectrum_singleton = match spectrum.feasible.len() {
        0 | 1 if spectrum.is_complete() => Verdict::from_bool(spectrum.feasible.len() == 1),
        0 | 1 => Verdict::Unknown,
        _ => Verdict::False,
    };
    let k = spectrum.lower();

    let (mut unique, mut equal, mut matrix) = (Verdict::False, Verdict::False, None);
    if let Some(k) = k {
        let e = enumerate_valid_distributions(s, q, k, 2, &mut new_budget())?;
        unique = match (e.matrices.len(), e.complete) {
            (1, true) => Verdict::True,
            (n, _) if n >= 2 => Verdict::False,
            _ => Verdict::Unknown,
        };
        if let Some(m) = e.matrices.first() {
            let totals = m.colour_totals();
            equal = Verdict::from_bool(totals.windows(2).all(|w| w[0] == w[1]));
            matrix = Some(m.clone());
        } else {
            // a witness exists at k but the enumeration ran dry first
            equal = Verdict::Unknown;
        }
    }

    let mut minimal_detail = Vec::new();
    let mut minimal = Verdict::True;
    for pi in q {
        let smaller = q.without(pi);
        let sp = sigma_spectrum(s, &smaller, s.vertex_count(), &mut new_budget)?;
        let v = if !sp.feasible.is_empty() {
            Verdict::False
        } else if sp.is_complete() {
            Verdict::True
        } else {
            Verdict::Unknown
        };
        minimal = minimal.and(v);
        minimal_detail.push((pi.clone(), v));
    }

    let verdict = spectrum_singleton.and(unique).and(equal).and(minimal);
    Ok(TightReport {
        spectrum,
        k,
        matrix,
        spectrum_singleton,
        unique_up_to_relabel: unique,
        equal_class_sizes: equal,
        minimal_detail,
        minimal_over_q: minimal,
        verdict,
    })
}

fn require_valid(h: &Hypergraph, c: &Colouring, q: &PatternSet) -> Result<()> {
    if !is_valid(h, c, q)?.is_valid() {
        return Err(Error::invalid("the input colouring is not a valid Q-colouring"));
    }
    Ok(())
}

fn ensure_valid(h: &Hypergraph, c: Colouring, q: &PatternSet, step: &str) -> Result<Colouring> {
    if !is_valid(h, &c, q)?.is_valid() {
        return Err(Error::Postcondition(alloc::format!("{step} produced an invalid colouring")));
    }
    Ok(c)
}

/// Merges the top two colours of a valid colouring. Valid output is
/// guaranteed when `q` is reduction-closed, and checked.
pub fn recolour_merge_top(c: &Colouring, h: &Hypergraph, q: &PatternSet) -> Result<Colouring> {
    if !classify_robust(q)?.reduction_closed {
        return Err(Error::invalid("Q is not reduction-closed"));
    }
    if c.k() < 2 {
        return Err(Error::invalid("need at least two colours to merge"));
    }
    require_valid(h, c, q)?;
    let top = c.k() - 1;
    let colours = c.colours().iter().map(|&x| if x == top { top - 1 } else { x }).collect();
    let merged = Colouring::new(colours, top)?;
    ensure_valid(h, merged, q, "merging the top colours")
}

/// Moves the least vertex whose colour is shared onto a fresh colour `k`.
/// Valid output is guaranteed when `q` is expansion-closed, and checked.
pub fn recolour_split(c: &Colouring, h: &Hypergraph, q: &PatternSet) -> Result<Colouring> {
    if !classify_robust(q)?.expansion_closed {
        return Err(Error::invalid("Q is not expansion-closed"));
    }
    require_valid(h, c, q)?;
    let sizes = c.class_sizes();
    let v = c
        .colours()
        .iter()
        .position(|&x| sizes[x as usize] >= 2)
        .ok_or_else(|| Error::invalid("every colour is used exactly once"))?;
    let mut colours = c.colours().to_vec();
    colours[v] = c.k();
    let split = Colouring::new(colours, c.k() + 1)?;
    ensure_valid(h, split, q, "splitting a colour")
}

/// Vertices `0..k-1` get colours `0..k-1`; everything else gets colour
/// `k - 1`. Every edge pattern then has the form `(r - j, 1, ..., 1)`.
pub fn simply_closed_colouring(h: &Hypergraph, k: u32) -> Result<Colouring> {
    let n = h.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid(alloc::format!("k = {k} outside 1..={n}")));
    }
    let colours = (0..n).map(|v| v.min(k - 1)).collect();
    Colouring::new(colours, k)
}

/// A hypergraph a claim is checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    /// Complete `r`-uniform hypergraph on `n` vertices.
    Complete { n: u32, r: u32 },
    /// `H(n, r, q | Σ)`.
    Sigma { n: u32, r: u32, q: u32, sigma: PatternSet },
    /// Ramsey bundle `H(n, r, p)` with at most `k` colours.
    Ramsey { n: u32, r: u32, p: u32, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Colouring(Colouring),
    Distribution(DistributionMatrix),
}

/// One membership question: is `k` in the spectrum?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub k: u32,
    pub expect_feasible: bool,
    /// Whether the expectation held.
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: String,
    pub instance: Instance,
    pub patterns: PatternSet,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl ClaimReport {
    fn new(claim: &str, instance: Instance, patterns: PatternSet, checks: Vec<Check>) -> Self {
        let verdict = checks.iter().fold(Verdict::True, |v, c| v.and(c.verdict));
        ClaimReport {
            claim: claim.into(),
            instance,
            patterns,
            checks,
            verdict,
        }
    }
}

fn check<T>(k: u32, expect_feasible: bool, d: Decision<T>, wrap: impl FnOnce(T) -> Witness) -> Check {
    let (verdict, witness) = match d {
        Decision::Found(w) => (Verdict::from_bool(expect_feasible), Some(wrap(w))),
        Decision::Infeasible => (Verdict::from_bool(!expect_feasible), None),
        Decision::Unknown => (Verdict::Unknown, None),
    };
    Check {
        k,
        expect_feasible,
        verdict,
        witness,
    }
}

fn explicit_checks<B: Budget>(
    h: &Hypergraph,
    q: &PatternSet,
    expectations: &[(u32, bool)],
    new_budget: &mut impl FnMut() -> B,
) -> Result<Vec<Check>> {
    expectations
        .iter()
        .map(|&(k, want)| Ok(check(k, want, exists_k_colouring(h, k, q, &mut new_budget())?, Witness::Colouring)))
        .collect()
}

fn sigma_checks<B: Budget>(
    s: &SigmaStructure,
    q: &PatternSet,
    expectations: &[(u32, bool)],
    new_budget: &mut impl FnMut() -> B,
) -> Result<Vec<Check>> {
    expectations
        .iter()
        .map(|&(k, want)| Ok(check(k, want, sigma_exists_k(s, q, k, &mut new_budget())?, Witness::Distribution)))
        .collect()
}

/// Which gap construction a pattern set qualifies for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `M, R ∈ Q`, `Q` not simply closed.
    BothEnds,
    /// `R ∈ Q`, `M ∉ Q`, `Q` not expansion-closed.
    RainbowOnly,
    /// `M ∈ Q`, `R ∉ Q`, `Q` not reduction-closed.
    MonochromeOnly,
}

impl Construction {
    pub fn qualifies(self, q: &PatternSet) -> Result<bool> {
        let r = q.r();
        let has_m = q.contains(&Partition::monochromatic(r));
        let has_r = q.contains(&Partition::rainbow(r));
        let c = classify_robust(q)?;
        Ok(match self {
            Construction::BothEnds => has_m && has_r && !monochromatic_chain(r).is_subset(q),
            Construction::RainbowOnly => has_r && !has_m && !c.expansion_closed,
            Construction::MonochromeOnly => has_m && !has_r && !c.reduction_closed,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::BothEnds => "M and R allowed, not simply closed: spectrum has a gap",
            Construction::RainbowOnly => "R allowed, M forbidden, not expansion-closed: spectrum has a gap",
            Construction::MonochromeOnly => "M allowed, R forbidden, not reduction-closed: spectrum has a gap",
        }
    }
}

/// The smallest qualifying `Q ⊆ P(r)`; among equal sizes, the one whose
/// members (each as a non-increasing part list, listed in ascending order)
/// compare least lexicographically.
pub fn smallest_qualifying(construction: Construction, r: u32) -> Result<Option<PatternSet>> {
    let all: Vec<Partition> = enumerate_partitions(r)?.iter().cloned().collect();
    if all.len() > 20 {
        return Err(Error::Resource(alloc::format!("P({r}) is too large to search exhaustively")));
    }
    let mut best: Option<(usize, Vec<Vec<u32>>, PatternSet)> = None;
    for mask in 1u32..(1 << all.len()) {
        let members: Vec<Partition> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
        let q = PatternSet::new(r, members.iter().cloned())?;
        if !construction.qualifies(&q)? {
            continue;
        }
        let mut key: Vec<Vec<u32>> = members.iter().map(|p| p.parts().to_vec()).collect();
        key.sort();
        let better = match &best {
            None => true,
            Some((size, k, _)) => (members.len(), &key) < (*size, k),
        };
        if better {
            best = Some((members.len(), key, q));
        }
    }
    Ok(best.map(|b| b.2))
}

/// Builds the gap constructions for the smallest qualifying `Q` of each kind
/// at uniformity `r` and checks the claimed spectrum memberships. Kinds with
/// no qualifying `Q` are left out.
pub fn verify_lemma_constructions<B: Budget>(r: u32, mut new_budget: impl FnMut() -> B) -> Result<Vec<ClaimReport>> {
    if !(2..=5).contains(&r) {
        return Err(Error::invalid("the constructions are checked for 2 <= r <= 5"));
    }
    let limits = BuildLimits::default();
    let (r2, r3) = (r * r, r * r * r);
    let mut out = Vec::new();

    if let Some(q) = smallest_qualifying(Construction::BothEnds, r)? {
        let name = Construction::BothEnds.name();
        let k = build_complete(r2, r, limits)?;
        let checks = explicit_checks(&k, &q, &[(1, true), (r2, true), (r, false)], &mut new_budget)?;
        out.push(ClaimReport::new(name, Instance::Complete { n: r2, r }, q.clone(), checks));
        for (n, size) in [(r2, r), (r, r2)] {
            let s = SigmaStructure::new(n, r, size, q.clone())?;
            let checks = sigma_checks(&s, &q, &[(1, true), (r3, true), (r, false)], &mut new_budget)?;
            let instance = Instance::Sigma {
                n,
                r,
                q: size,
                sigma: q.clone(),
            };
            out.push(ClaimReport::new(name, instance, q.clone(), checks));
        }
    }
    if let Some(q) = smallest_qualifying(Construction::RainbowOnly, r)? {
        let s = SigmaStructure::new(r, r, r2, q.clone())?;
        let checks = sigma_checks(&s, &q, &[(r, true), (r3, true), (r + 1, false)], &mut new_budget)?;
        let instance = Instance::Sigma {
            n: r,
            r,
            q: r2,
            sigma: q.clone(),
        };
        out.push(ClaimReport::new(Construction::RainbowOnly.name(), instance, q, checks));
    }
    if let Some(q) = smallest_qualifying(Construction::MonochromeOnly, r)? {
        let s = SigmaStructure::new(r2, r, r, q.clone())?;
        let checks = sigma_checks(&s, &q, &[(1, true), (r2, true), (r2 - 1, false)], &mut new_budget)?;
        let instance = Instance::Sigma {
            n: r2,
            r,
            q: r,
            sigma: q.clone(),
        };
        out.push(ClaimReport::new(Construction::MonochromeOnly.name(), instance, q, checks));
    }
    Ok(out)
}

/// Parameter tuples for [`gap_witness_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapGrid {
    /// `(n, q)` class shapes.
    pub shapes: Vec<(u32, u32)>,
    pub sigmas: Vec<PatternSet>,
}

impl GapGrid {
    /// All shapes with `1 ≤ n ≤ n_max`, `1 ≤ q ≤ q_max` and every non-empty
    /// `Σ ⊆ P(r)`.
    pub fn rectangle(r: u32, n_max: u32, q_max: u32) -> Result<Self> {
        let all: Vec<Partition> = enumerate_partitions(r)?.iter().cloned().collect();
        if all.len() > 16 {
            return Err(Error::Resource(alloc::format!("too many edge-type sets for r = {r}")));
        }
        let sigmas = (1u32..(1 << all.len()))
            .map(|mask| {
                PatternSet::new(r, (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()))
                    .expect("same r")
            })
            .collect();
        let shapes = (1..=n_max).flat_map(|n| (1..=q_max).map(move |q| (n, q))).collect();
        Ok(GapGrid { shapes, sigmas })
    }

    /// Tuples in grid order, skipping those where some edge type of `Σ`
    /// cannot occur (`n < s(Σ)` or `q < Δ(Σ)`).
    pub fn tuples(&self) -> impl Iterator<Item = (u32, u32, &PatternSet)> + '_ {
        self.shapes.iter().flat_map(move |&(n, q)| {
            self.sigmas.iter().filter_map(move |sigma| {
                let parts = sigma.max_num_parts().ok()? as u32;
                let size = sigma.max_part().ok()?;
                (n >= parts && q >= size).then_some((n, q, sigma))
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapHit {
    pub n: u32,
    pub q: u32,
    pub sigma: PatternSet,
    pub spectrum: Spectrum,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapSearch {
    pub hits: Vec<GapHit>,
    /// Tuples whose spectrum stayed partly undecided and showed no proven gap.
    pub inconclusive: Vec<GapHit>,
    pub examined: usize,
}

/// Spectrum of one grid tuple, probed up to `n·q`.
pub fn gap_tuple<B: Budget>(
    n: u32,
    size: u32,
    sigma: &PatternSet,
    q: &PatternSet,
    new_budget: impl FnMut() -> B,
) -> Result<GapHit> {
    let s = SigmaStructure::new(n, q.r(), size, sigma.clone())?;
    let spectrum = sigma_spectrum(&s, q, s.vertex_count(), new_budget)?;
    Ok(GapHit {
        n,
        q: size,
        sigma: sigma.clone(),
        spectrum,
    })
}

/// Collects one tuple's result into a search summary.
pub fn record_gap(search: &mut GapSearch, hit: GapHit) {
    search.examined += 1;
    match hit.spectrum.has_gap() {
        Verdict::True => search.hits.push(hit),
        Verdict::Unknown => search.inconclusive.push(hit),
        Verdict::False => {}
    }
}

/// Every grid tuple whose `Q`-spectrum has a proven gap, in grid order.
pub fn gap_witness_search<B: Budget>(
    q: &PatternSet,
    grid: &GapGrid,
    mut new_budget: impl FnMut() -> B,
) -> Result<GapSearch> {
    let mut search = GapSearch::default();
    for (n, size, sigma) in grid.tuples() {
        if sigma.r() != q.r() {
            return Err(Error::invalid("edge types and patterns partition different r"));
        }
        record_gap(&mut search, gap_tuple(n, size, sigma, q, &mut new_budget)?);
    }
    Ok(search)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyOutcome {
    /// `True` when no colouring with at most `k` colours exists.
    pub verdict: Verdict,
    pub witness: Option<Colouring>,
}

/// Whether the bundle hypergraph `H(n, r, p)` has no valid colouring using
/// at most `k` colours. Counts from 1 to `k` are each tried exactly.
pub fn ramsey_check<B: Budget>(
    n: u32,
    r: u32,
    p: u32,
    k: u32,
    q: &PatternSet,
    limits: BuildLimits,
    mut new_budget: impl FnMut() -> B,
) -> Result<RamseyOutcome> {
    if q.contains(&Partition::monochromatic(q.r())) {
        return Err(Error::invalid("Q must not contain the monochromatic pattern"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let h = build_ramsey(n, r, p, limits)?;
    if q.r() != h.r() {
        return Err(Error::invalid(alloc::format!(
            "the bundle hypergraph is {}-uniform but Q partitions {}",
            h.r(),
            q.r()
        )));
    }
    let mut verdict = Verdict::True;
    for j in 1..=k.min(h.vertex_count()) {
        match exists_k_colouring(&h, j, q, &mut new_budget())? {
            Decision::Found(c) => {
                return Ok(RamseyOutcome {
                    verdict: Verdict::False,
                    witness: Some(c),
                })
            }
            Decision::Unknown => verdict = Verdict::Unknown,
            Decision::Infeasible => {}
        }
    }
    Ok(RamseyOutcome { verdict, witness: None })
}

/// Spectrum of an explicit hypergraph, probed over every colour count.
pub fn full_spectrum<B: Budget>(h: &Hypergraph, q: &PatternSet, new_budget: impl FnMut() -> B) -> Result<Spectrum> {
    spectrum(h, q, h.vertex_count(), new_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{build_family, Family};
    use crate::Unlimited;
    use alloc::vec;

    fn set(parts: &[&[u32]]) -> PatternSet {
        PatternSet::from_parts(parts.iter().map(|x| x.to_vec())).unwrap()
    }

    #[test]
    fn tight_negative_case() {
        let s = SigmaStructure::new(4, 4, 1, set(&[&[1, 1, 1, 1]])).unwrap();
        let rep = check_tight(&s, &set(&[&[3, 1]]), || Unlimited).unwrap();
        assert_eq!(rep.spectrum.feasible, vec![2]);
        let s = SigmaStructure::new(4, 4, 3, set(&[&[1, 1, 1, 1]])).unwrap();
        let rep = check_tight(&s, &set(&[&[3, 1]]), || Unlimited).unwrap();
        assert_eq!(rep.spectrum.feasible, vec![2, 3, 4]);
        assert_eq!(rep.spectrum_singleton, Verdict::False);
        assert_eq!(rep.verdict, Verdict::False);
    }

    #[test]
    fn merge_split_and_simple() {
        let lim = BuildLimits::default();
        let h = build_complete(4, 3, lim).unwrap();
        let all = enumerate_partitions(3).unwrap();
        let c = Colouring::new(vec![0, 1, 2, 2], 3).unwrap();
        let merged = recolour_merge_top(&c, &h, &all).unwrap();
        assert_eq!(merged.k(), 2);
        assert!(recolour_merge_top(&Colouring::monochromatic(4), &h, &all).is_err());

        let q = set(&[&[2, 1], &[1, 1, 1]]);
        let c = Colouring::new(vec![0, 1, 2, 2], 3).unwrap();
        let split = recolour_split(&c, &h, &q).unwrap();
        assert_eq!(split.colours(), &[0, 1, 3, 2]);
        assert_eq!(split.class_sizes(), vec![1; 4]);
        assert!(recolour_split(&Colouring::rainbow(4), &h, &q).is_err());

        let h = build_complete(5, 3, lim).unwrap();
        let c = simply_closed_colouring(&h, 3).unwrap();
        assert!(is_valid(&h, &c, &monochromatic_chain(3)).unwrap().is_valid());
        assert_eq!(simply_closed_colouring(&h, 1).unwrap(), Colouring::monochromatic(5));
        assert_eq!(simply_closed_colouring(&h, 5).unwrap(), Colouring::rainbow(5));
    }

    #[test]
    fn qualifying_sets() {
        assert_eq!(
            smallest_qualifying(Construction::BothEnds, 3).unwrap(),
            Some(set(&[&[3], &[1, 1, 1]]))
        );
        assert_eq!(smallest_qualifying(Construction::RainbowOnly, 3).unwrap(), None);
        assert_eq!(smallest_qualifying(Construction::MonochromeOnly, 3).unwrap(), None);
        assert_eq!(
            smallest_qualifying(Construction::RainbowOnly, 4).unwrap(),
            Some(set(&[&[2, 2], &[1, 1, 1, 1]]))
        );
        assert_eq!(
            smallest_qualifying(Construction::MonochromeOnly, 4).unwrap(),
            Some(set(&[&[4], &[2, 1, 1]]))
        );
    }

    #[test]
    fn ramsey_small() {
        let q = build_family(Family::ClassicalHypergraph, 3).unwrap();
        let lim = BuildLimits::default();
        assert_eq!(ramsey_check(6, 2, 3, 2, &q, lim, || Unlimited).unwrap().verdict, Verdict::True);
        let five = ramsey_check(5, 2, 3, 2, &q, lim, || Unlimited).unwrap();
        assert_eq!(five.verdict, Verdict::False);
        assert!(five.witness.is_some());
        let all = enumerate_partitions(3).unwrap();
        assert!(ramsey_check(5, 2, 3, 2, &all, lim, || Unlimited).is_err());
    }
}
