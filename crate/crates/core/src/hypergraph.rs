//! Explicit `r`-uniform hypergraphs and their constructors.
//!
//! Vertices are dense indices `0..vertex_count`. Edges are kept sorted
//! internally and the edge list is sorted lexicographically, so two
//! hypergraphs with the same edge set compare equal.

use alloc::vec::Vec;

use crate::partitions::{Partition, PatternSet};
use crate::{binomial, Combinations, Error, Result};

/// Default cap on materialized edges.
pub const DEFAULT_MAX_EDGES: u128 = 10_000_000;

/// Resource caps for explicit construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    /// Largest number of edges (or candidate subsets scanned) a constructor
    /// may produce before refusing.
    pub max_edges: u128,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl BuildLimits {
    fn check(&self, what: &str, count: u128) -> Result<()> {
        if count > self.max_edges {
            return Err(Error::Resource(alloc::format!(
                "{what} needs {count} edges, over the cap of {}",
                self.max_edges
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: u32,
    vertex_count: u32,
    /// Edges flattened with stride `r`.
    edges: Vec<u32>,
}

impl Hypergraph {
    /// Validates and normalizes an edge list. Duplicate edges are dropped.
    pub fn new(r: u32, vertex_count: u32, edges: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        Self::with_duplicate_count(r, vertex_count, edges).map(|(h, _)| h)
    }

    /// Like [`Hypergraph::new`], also reporting how many duplicate edges were dropped.
    pub fn with_duplicate_count(
        r: u32,
        vertex_count: u32,
        edges: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<(Self, usize)> {
        if r == 0 {
            return Err(Error::invalid("uniformity must be positive"));
        }
        let mut list: Vec<Vec<u32>> = Vec::new();
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.len() != r as usize {
                return Err(Error::invalid(alloc::format!(
                    "edge {i} has {} vertices in a {r}-uniform hypergraph",
                    e.len()
                )));
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::invalid(alloc::format!(
                    "edge {i} uses vertex {v} but there are only {vertex_count} vertices"
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(alloc::format!("edge {i} repeats a vertex")));
            }
            list.push(e);
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        let dups = before - list.len();
        Ok((Self::from_sorted(r, vertex_count, list), dups))
    }

    /// Edges must already be individually sorted, globally sorted and distinct.
    fn from_sorted(r: u32, vertex_count: u32, edges: Vec<Vec<u32>>) -> Self {
        let mut flat = Vec::with_capacity(edges.len() * r as usize);
        for e in edges {
            flat.extend_from_slice(&e);
        }
        Hypergraph {
            r,
            vertex_count,
            edges: flat,
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r as usize
    }

    pub fn edges(&self) -> core::slice::ChunksExact<'_, u32> {
        self.edges.chunks_exact(self.r as usize)
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        let r = self.r as usize;
        &self.edges[i * r..(i + 1) * r]
    }

    /// Membership test for a sorted vertex list.
    pub fn contains_edge(&self, sorted: &[u32]) -> bool {
        if sorted.len() != self.r as usize {
            return false;
        }
        let (mut lo, mut hi) = (0usize, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(sorted) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = alloc::vec![0u32; self.vertex_count as usize];
        for &v in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    /// For every vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = alloc::vec![Vec::new(); self.vertex_count as usize];
        for (i, e) in self.edges().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }
}

/// An implicit Sigma-hypergraph `H(n, r, q | Σ)`.
///
/// There are `n` classes of `q` vertices; vertex `v` lies in class `v / q`.
/// An `r`-subset is an edge when the sizes of its non-empty intersections
/// with the classes form a partition in `Σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaStructure {
    n: u32,
    r: u32,
    q: u32,
    sigma: PatternSet,
}

impl SigmaStructure {
    pub fn new(n: u32, r: u32, q: u32, sigma: PatternSet) -> Result<Self> {
        if n == 0 || q == 0 || r == 0 {
            return Err(Error::invalid("n, r and q must be positive"));
        }
        if sigma.r() != r {
            return Err(Error::invalid(alloc::format!(
                "edge types are partitions of {} but r = {r}",
                sigma.r()
            )));
        }
        if (n as u64) * (q as u64) > u32::MAX as u64 {
            return Err(Error::invalid("n * q overflows the vertex index type"));
        }
        Ok(SigmaStructure { n, r, q, sigma })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn sigma(&self) -> &PatternSet {
        &self.sigma
    }

    pub fn vertex_count(&self) -> u32 {
        self.n * self.q
    }

    pub fn class_of(&self, v: u32) -> u32 {
        v / self.q
    }

    /// Whether an edge of type `sigma` fits into this structure.
    pub fn realizable(&self, sigma: &Partition) -> bool {
        sigma.num_parts() <= self.n as usize && sigma.largest() <= self.q
    }

    /// Edge types in `Σ` that no `r`-subset can have here.
    pub fn unrealizable_types(&self) -> Vec<Partition> {
        self.sigma.iter().filter(|s| !self.realizable(s)).cloned().collect()
    }

    /// Number of edges of type `sigma` (zero if unrealizable).
    pub fn edges_of_type(&self, sigma: &Partition) -> u128 {
        if !self.realizable(sigma) {
            return 0;
        }
        // ordered choices of distinct classes, divided by the permutations of equal parts
        let s = sigma.num_parts() as u64;
        let mut placements: u128 = 1;
        for i in 0..s {
            placements = placements.saturating_mul((self.n as u64 - i) as u128);
        }
        let mut runs = sigma.parts().chunk_by(|a, b| a == b);
        for run in runs.by_ref() {
            for m in 1..=run.len() as u128 {
                placements /= m;
            }
        }
        let mut total = placements;
        for &a in sigma.parts() {
            total = total.saturating_mul(binomial(self.q as u64, a as u64));
        }
        total
    }

    pub fn edge_count(&self) -> u128 {
        self.sigma
            .iter()
            .map(|s| self.edges_of_type(s))
            .fold(0u128, |a, b| a.saturating_add(b))
    }
}

/// `K(n, r)`: every `r`-subset of `n` vertices is an edge.
pub fn build_complete(n: u32, r: u32, limits: BuildLimits) -> Result<Hypergraph> {
    if r == 0 || n < r {
        return Err(Error::invalid(alloc::format!(
            "complete hypergraph needs n >= r >= 1 (got n = {n}, r = {r})"
        )));
    }
    limits.check("complete hypergraph", binomial(n as u64, r as u64))?;
    Ok(Hypergraph::from_sorted(r, n, Combinations::new(n, r).collect()))
}

/// Materializes every edge of a Sigma-hypergraph.
///
/// Parts of equal size are assigned to increasing class indices, so each edge
/// is generated exactly once.
pub fn build_sigma_explicit(s: &SigmaStructure, limits: BuildLimits) -> Result<Hypergraph> {
    limits.check("sigma-hypergraph", s.edge_count())?;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for sigma in s.sigma().iter().filter(|x| s.realizable(x)) {
        let parts = sigma.parts();
        let mut classes = Vec::with_capacity(parts.len());
        assign_classes(s, parts, &mut classes, &mut edges);
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_sorted(s.r(), s.vertex_count(), edges))
}

fn assign_classes(s: &SigmaStructure, parts: &[u32], classes: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let i = classes.len();
    if i == parts.len() {
        let mut edge = Vec::with_capacity(s.r() as usize);
        emit_subsets(s, parts, classes, 0, &mut edge, out);
        return;
    }
    let start = if i > 0 && parts[i] == parts[i - 1] {
        classes[i - 1] + 1
    } else {
        0
    };
    for c in start..s.n() {
        if classes.contains(&c) {
            continue;
        }
        classes.push(c);
        assign_classes(s, parts, classes, out);
        classes.pop();
    }
}

fn emit_subsets(
    s: &SigmaStructure,
    parts: &[u32],
    classes: &[u32],
    i: usize,
    edge: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if i == parts.len() {
        let mut e = edge.clone();
        e.sort_unstable();
        out.push(e);
        return;
    }
    let base = classes[i] * s.q();
    for pick in Combinations::new(s.q(), parts[i]) {
        let len = edge.len();
        edge.extend(pick.iter().map(|&x| base + x));
        emit_subsets(s, parts, classes, i + 1, edge, out);
        edge.truncate(len);
    }
}

/// The edge type of a vertex subset: the partition formed by its non-empty
/// class intersections.
pub fn edge_type(s: &SigmaStructure, edge: &[u32]) -> Result<Partition> {
    if edge.len() != s.r() as usize {
        return Err(Error::invalid(alloc::format!(
            "edge has {} vertices, expected {}",
            edge.len(),
            s.r()
        )));
    }
    let mut sorted = edge.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("edge repeats a vertex"));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= s.vertex_count()) {
        return Err(Error::invalid(alloc::format!("vertex {v} is outside the structure")));
    }
    Ok(intersection_pattern(sorted.iter().map(|&v| s.class_of(v))))
}

/// Partition formed by how many items fall into each group label.
fn intersection_pattern(labels: impl Iterator<Item = u32>) -> Partition {
    let mut labels: Vec<u32> = labels.collect();
    labels.sort_unstable();
    Partition::from_counts(labels.chunk_by(|a, b| a == b).map(|run| run.len() as u32))
}

/// Shape of the grid hypergraph: `rows × cols` cells of `cell_size` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridShape {
    pub rows: u32,
    pub cols: u32,
    pub cell_size: u32,
}

impl GridShape {
    pub fn vertex_count(&self) -> u32 {
        self.rows * self.cols * self.cell_size
    }

    /// `(row, col)` of a vertex. Cells are laid out row by row.
    pub fn cell_of(&self, v: u32) -> (u32, u32) {
        let cell = v / self.cell_size;
        (cell / self.cols, cell % self.cols)
    }

    pub fn vertex(&self, row: u32, col: u32, slot: u32) -> u32 {
        (row * self.cols + col) * self.cell_size + slot
    }
}

/// Grid hypergraph: an `r`-subset is an edge when its row-intersection sizes
/// form a partition in `row_patterns` and its column-intersection sizes form a
/// partition in `col_patterns`.
pub fn build_grid(
    shape: GridShape,
    row_patterns: &PatternSet,
    col_patterns: &PatternSet,
    r: u32,
    limits: BuildLimits,
) -> Result<Hypergraph> {
    if shape.rows == 0 || shape.cols == 0 || shape.cell_size == 0 || r == 0 {
        return Err(Error::invalid("grid dimensions and r must be positive"));
    }
    if row_patterns.r() != r || col_patterns.r() != r {
        return Err(Error::invalid("row/column patterns must be partitions of r"));
    }
    let n = shape.vertex_count();
    if n < r {
        return Err(Error::invalid("grid has fewer than r vertices"));
    }
    limits.check("grid candidate scan", binomial(n as u64, r as u64))?;
    let edges = Combinations::new(n, r)
        .filter(|e| {
            let rows = intersection_pattern(e.iter().map(|&v| shape.cell_of(v).0));
            let cols = intersection_pattern(e.iter().map(|&v| shape.cell_of(v).1));
            row_patterns.contains(&rows) && col_patterns.contains(&cols)
        })
        .collect();
    Ok(Hypergraph::from_sorted(r, n, edges))
}

/// Ramsey bundle hypergraph `H(n, r, p)`.
///
/// Vertices are the `r`-subsets of `0..n` (indexed by lexicographic rank).
/// Each `p`-subset `S` of `0..n` contributes one edge made of all `r`-subsets
/// of `S`, so the hypergraph is `C(p, r)`-uniform with `C(n, p)` edges.
pub fn build_ramsey(n: u32, r: u32, p: u32, limits: BuildLimits) -> Result<Hypergraph> {
    if r == 0 || p <= r || n < p {
        return Err(Error::invalid(alloc::format!(
            "ramsey bundle needs n >= p >= r + 1 and r >= 1 (got n = {n}, r = {r}, p = {p})"
        )));
    }
    let vertices = binomial(n as u64, r as u64);
    let uniformity = binomial(p as u64, r as u64);
    if vertices > u32::MAX as u128 || uniformity > u32::MAX as u128 {
        return Err(Error::Resource("ramsey bundle too large to index".into()));
    }
    limits.check("ramsey bundle", binomial(n as u64, p as u64))?;
    let mut edges = Vec::new();
    for bundle in Combinations::new(n, p) {
        let mut edge: Vec<u32> = Combinations::new(p, r)
            .map(|local| {
                let global: Vec<u32> = local.iter().map(|&i| bundle[i as usize]).collect();
                crate::combin::rank_combination(n, &global) as u32
            })
            .collect();
        edge.sort_unstable();
        edges.push(edge);
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_sorted(uniformity as u32, vertices as u32, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sigma(n: u32, r: u32, q: u32, parts: &[&[u32]]) -> SigmaStructure {
        let set = PatternSet::from_parts(parts.iter().map(|p| p.to_vec())).unwrap();
        SigmaStructure::new(n, r, q, set).unwrap()
    }

    fn lim() -> BuildLimits {
        BuildLimits::default()
    }

    #[test]
    fn normalization() {
        let (h, dups) =
            Hypergraph::with_duplicate_count(3, 4, vec![vec![2, 1, 0], vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(dups, 1);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edge(0), &[0, 1, 2]);
        assert!(h.contains_edge(&[1, 2, 3]));
        assert!(!h.contains_edge(&[0, 2, 3]));
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 1]]).is_err());
    }

    #[test]
    fn complete() {
        assert_eq!(build_complete(4, 3, lim()).unwrap().edge_count(), 4);
        assert_eq!(build_complete(9, 3, lim()).unwrap().edge_count(), 84);
        assert_eq!(build_complete(5, 5, lim()).unwrap().edge_count(), 1);
        assert!(build_complete(2, 3, lim()).is_err());
        let err = build_complete(40, 10, lim()).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn sigma_edge_counts() {
        let s = sigma(2, 3, 2, &[&[2, 1]]);
        assert_eq!(build_sigma_explicit(&s, lim()).unwrap().edge_count(), 4);
        assert_eq!(s.edge_count(), 4);
        let s = sigma(3, 3, 3, &[&[2, 1]]);
        assert_eq!(build_sigma_explicit(&s, lim()).unwrap().edge_count(), 54);
        assert_eq!(s.edge_count(), 54);
        let s = sigma(4, 3, 2, &[&[1, 1, 1]]);
        assert_eq!(build_sigma_explicit(&s, lim()).unwrap().edge_count(), 32);
        assert_eq!(s.edge_count(), 32);
    }

    #[test]
    fn unrealizable_types_are_flagged() {
        let s = sigma(2, 4, 2, &[&[4], &[1, 1, 1, 1], &[2, 2]]);
        assert_eq!(s.unrealizable_types().len(), 2);
        let h = build_sigma_explicit(&s, lim()).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edge(0), &[0, 1, 2, 3]);
    }

    #[test]
    fn explicit_cap() {
        let s = sigma(3, 3, 3, &[&[2, 1]]);
        let err = build_sigma_explicit(&s, BuildLimits { max_edges: 10 }).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn edge_types() {
        let s = sigma(2, 3, 2, &[&[2, 1]]);
        assert_eq!(edge_type(&s, &[0, 1, 2]).unwrap().parts(), &[2, 1]);
        let s = sigma(3, 3, 3, &[&[3]]);
        assert!(edge_type(&s, &[3, 4, 5]).unwrap().is_monochromatic());
        assert!(edge_type(&s, &[0, 3, 6]).unwrap().is_rainbow());
        assert!(edge_type(&s, &[0, 3]).is_err());
        assert!(edge_type(&s, &[0, 3, 9]).is_err());
    }

    #[test]
    fn grid_instance() {
        let q = PatternSet::from_parts([vec![3, 1]]).unwrap();
        let shape = GridShape {
            rows: 4,
            cols: 2,
            cell_size: 2,
        };
        let h = build_grid(shape, &q, &q, 4, lim()).unwrap();
        assert_eq!(h.vertex_count(), 16);
        // three vertices in row 0, one in row 1; three in column 0, one in column 1
        let in_edge = [
            shape.vertex(0, 0, 0),
            shape.vertex(0, 0, 1),
            shape.vertex(0, 1, 0),
            shape.vertex(1, 0, 0),
        ];
        let mut e = in_edge.to_vec();
        e.sort_unstable();
        assert!(h.contains_edge(&e));
        // rows split 2+2
        let row_22 = [
            shape.vertex(0, 0, 0),
            shape.vertex(0, 0, 1),
            shape.vertex(1, 0, 0),
            shape.vertex(1, 1, 0),
        ];
        let mut e = row_22.to_vec();
        e.sort_unstable();
        assert!(!h.contains_edge(&e));
    }

    #[test]
    fn ramsey_bundles() {
        for (n, r, p, v, e, u) in [(6, 2, 3, 15, 20, 3), (5, 2, 3, 10, 10, 3), (6, 2, 4, 15, 15, 6)] {
            let h = build_ramsey(n, r, p, lim()).unwrap();
            assert_eq!(h.vertex_count(), v);
            assert_eq!(h.edge_count(), e);
            assert_eq!(h.r(), u);
        }
        assert!(build_ramsey(6, 2, 2, lim()).is_err());
        assert!(build_ramsey(3, 2, 4, lim()).is_err());
    }
}
