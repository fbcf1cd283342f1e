//! Clique numbers of Sigma-hypergraphs.
//!
//! A clique with `b_i` vertices in class `i` exists exactly when every way of
//! drawing `a_i ≤ b_i` vertices per class (with `Σ a_i = r`) yields an edge
//! type in `Σ`. Such a capacity vector makes `Σ` *k-full* for `k = Σ b_i`.
//! Cliques are closed under taking subsets, so k-fullness is monotone in `k`
//! and the clique number is the last `k` before the first failure.
//!
//! Vertex sets smaller than `r` count as cliques (they contain no `r`-subset
//! to violate), so the clique number is never below `min(|V|, r - 1)`.

use alloc::vec::Vec;

use crate::hypergraph::{Hypergraph, SigmaStructure};
use crate::partitions::{Partition, PatternSet};
use crate::{Combinations, Error, Result};

/// Capacities certifying that a family is k-full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFullWitness {
    /// Patterns actually produced by some draw; a subset of the family.
    pub f: PatternSet,
    /// Non-increasing positive capacities.
    pub b: Vec<u32>,
    pub k: u32,
}

/// The support patterns of every draw `0 ≤ a_i ≤ b_i` with `Σ a_i = r`,
/// stopping at the first one outside `allowed`. Returns `None` on failure.
fn draw_patterns(b: &[u32], r: u32, allowed: &PatternSet) -> Option<PatternSet> {
    fn go(b: &[u32], i: usize, left: u32, picked: &mut Vec<u32>, allowed: &PatternSet, out: &mut PatternSet) -> bool {
        if left == 0 {
            let p = Partition::new(picked.clone()).expect("draw sums to r > 0");
            if !allowed.contains(&p) {
                return false;
            }
            out.insert(p).expect("same r");
            return true;
        }
        if i == b.len() {
            return true;
        }
        let room: u32 = b[i..].iter().sum();
        if room < left {
            return true;
        }
        for a in 0..=b[i].min(left) {
            if a > 0 {
                picked.push(a);
            }
            let ok = go(b, i + 1, left - a, picked, allowed, out);
            if a > 0 {
                picked.pop();
            }
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = PatternSet::empty(r);
    go(b, 0, r, &mut Vec::new(), allowed, &mut out).then_some(out)
}

/// Visits partitions of `k` with at most `max_len` parts, each at most
/// `max_part`, largest first. Stops when `f` returns `true`.
fn capacity_vectors(k: u32, max_len: u32, max_part: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    fn go(left: u32, max: u32, slots: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
        if left == 0 {
            return f(cur);
        }
        if slots == 0 || (slots as u64) * (max as u64) < left as u64 {
            return false;
        }
        for x in (1..=max.min(left)).rev() {
            cur.push(x);
            let stop = go(left - x, x, slots - 1, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(k, max_part, max_len, &mut Vec::new(), f)
}

/// Whether `f` is k-full with at most `n_cap` capacities, each at most
/// `q_cap`. Capacity vectors are tried in reverse lexicographic order.
pub fn is_k_full(f: &PatternSet, k: u32, n_cap: u32, q_cap: u32) -> Result<Option<KFullWitness>> {
    if f.is_empty() {
        return Err(Error::invalid("the family must be non-empty"));
    }
    if k < f.r() {
        return Err(Error::invalid(alloc::format!("k = {k} is below r = {}", f.r())));
    }
    let mut found = None;
    capacity_vectors(k, n_cap, q_cap, &mut |b| match draw_patterns(b, f.r(), f) {
        Some(used) => {
            found = Some(KFullWitness {
                f: used,
                b: b.to_vec(),
                k,
            });
            true
        }
        None => false,
    });
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega {
    pub omega: u32,
    /// Absent when `omega < r`: no draw exists and no capacities are needed.
    pub witness: Option<KFullWitness>,
}

fn largest_full(sigma: &PatternSet, n_cap: u32, q_cap: u32, k_limit: u32, trivial: u32) -> Result<Omega> {
    let mut best = Omega {
        omega: trivial,
        witness: None,
    };
    let mut k = sigma.r();
    while k <= k_limit {
        match is_k_full(sigma, k, n_cap, q_cap)? {
            Some(w) => best = Omega { omega: k, witness: Some(w) },
            None => break,
        }
        k += 1;
    }
    Ok(best)
}

/// Clique number of `H(n, r, q | Σ)`, which needs `n ≥ s(Σ)` and `q ≥ Δ(Σ)`.
///
/// The search stops at `(r - 1)^2` when neither the monochromatic nor the
/// rainbow type is in `Σ`, and at `n·q` otherwise.
pub fn omega_sigma(s: &SigmaStructure) -> Result<Omega> {
    let sigma = s.sigma();
    if sigma.is_empty() {
        return Err(Error::invalid("Σ must be non-empty"));
    }
    let longest = sigma.max_num_parts()? as u32;
    if s.n() < longest {
        return Err(Error::invalid(alloc::format!(
            "n = {} is below s(Σ) = {longest}",
            s.n()
        )));
    }
    let biggest = sigma.max_part()?;
    if s.q() < biggest {
        return Err(Error::invalid(alloc::format!(
            "q = {} is below Δ(Σ) = {biggest}",
            s.q()
        )));
    }
    let r = s.r();
    let total = s.n() * s.q();
    let mut limit = total;
    if !sigma.contains(&Partition::monochromatic(r)) && !sigma.contains(&Partition::rainbow(r)) {
        limit = limit.min((r - 1) * (r - 1));
    }
    largest_full(sigma, s.n(), s.q(), limit, (r - 1).min(total))
}

/// Largest `k ≤ k_limit` for which `Σ` is k-full with no caps on the number
/// or size of capacities.
pub fn omega_uncapped(sigma: &PatternSet, k_limit: u32) -> Result<Omega> {
    if sigma.is_empty() {
        return Err(Error::invalid("Σ must be non-empty"));
    }
    largest_full(sigma, k_limit, k_limit, k_limit, sigma.r() - 1)
}

/// Default vertex cap for [`brute_force_clique`].
pub const DEFAULT_CLIQUE_CAP: u32 = 40;

/// Exact clique number of an explicit hypergraph by growing vertex sets in
/// increasing order, pruning branches that cannot beat the best so far.
pub fn brute_force_clique(h: &Hypergraph, vertex_cap: u32) -> Result<u32> {
    let n = h.vertex_count();
    if n > vertex_cap {
        return Err(Error::Resource(alloc::format!(
            "{n} vertices exceeds the clique search cap of {vertex_cap}"
        )));
    }
    let r = h.r();
    if r == 0 {
        return Ok(n);
    }
    let mut best = n.min(r - 1);
    let mut clique = Vec::new();
    grow(h, 0, &mut clique, &mut best);
    Ok(best)
}

fn extends(h: &Hypergraph, clique: &[u32], v: u32) -> bool {
    let r = h.r();
    if (clique.len() as u32) + 1 < r {
        return true;
    }
    let mut edge = Vec::with_capacity(r as usize);
    for subset in Combinations::new(clique.len() as u32, r - 1) {
        edge.clear();
        edge.extend(subset.iter().map(|&i| clique[i as usize]));
        edge.push(v);
        if !h.contains_edge(&edge) {
            return false;
        }
    }
    true
}

fn grow(h: &Hypergraph, from: u32, clique: &mut Vec<u32>, best: &mut u32) {
    let n = h.vertex_count();
    *best = (*best).max(clique.len() as u32);
    for v in from..n {
        if clique.len() as u32 + (n - v) <= *best {
            return;
        }
        if extends(h, clique, v) {
            clique.push(v);
            grow(h, v + 1, clique, best);
            clique.pop();
        }
    }
}
