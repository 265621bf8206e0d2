//! Simplicial complexes: downward-closed set families on `[0, n)`.
//!
//! A [`Complex`] always contains the empty set and every singleton of its
//! declared ground set; larger edges are exactly the subsets of its
//! generating (inclusion-maximal) edges. The generating set is the compact
//! representation; the full closed family is materialized eagerly when small
//! enough, which makes edge membership a hash probe instead of a scan.

use crate::error::Error;
use crate::hypergraph::UniformHypergraph;
use crate::set::{VertexSet, MAX_VERTICES};
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Materialize the closed family only if the closure size estimate
/// (sum of 2^|g| over generators) stays below this.
const MATERIALIZE_BUDGET: u64 = 1 << 22;

/// The inclusion-maximal edges of a complex: every maximal edge of size >= 2,
/// plus a singleton for each vertex not covered by any larger edge.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingSet {
    n: usize,
    maximal: Vec<VertexSet>,
}

impl GeneratingSet {
    /// Reduce an arbitrary collection of sets to an antichain of maximal
    /// elements (adding singletons for uncovered vertices). The boolean is
    /// true if any input set was dropped as redundant (a duplicate or a
    /// subset of another input set).
    pub fn reduce<I: IntoIterator<Item = VertexSet>>(
        n: usize,
        sets: I,
    ) -> Result<(Self, bool), Error> {
        if n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        let full = VertexSet::full(n);
        let mut input: Vec<VertexSet> = Vec::new();
        for s in sets {
            if !s.is_subset_of(full) {
                return Err(Error::VertexOutOfRange {
                    vertex: s.difference(full).min_vertex().unwrap(),
                    n,
                });
            }
            if !s.is_empty() {
                input.push(s);
            }
        }
        let before = input.len();
        // Larger sets first so each survivor only needs checking against
        // already-kept sets; within one size, lexicographic order makes
        // duplicates adjacent.
        input.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut kept: Vec<VertexSet> = Vec::new();
        // Equal-size distinct sets never contain one another, so only the
        // prefix of strictly larger kept sets matters — a uniform family
        // (the common bulk input) reduces in linear time.
        let mut larger_end = 0;
        let mut current_len = usize::MAX;
        for s in input {
            if s.len() < current_len {
                larger_end = kept.len();
                current_len = s.len();
            }
            if kept.last() == Some(&s) {
                continue;
            }
            if !kept[..larger_end].iter().any(|m| s.is_subset_of(*m)) {
                kept.push(s);
            }
        }
        let reduced = kept.len() < before;
        let covered = kept
            .iter()
            .fold(VertexSet::EMPTY, |acc, s| acc.union(*s));
        for v in full.difference(covered).iter() {
            kept.push(VertexSet::singleton(v));
        }
        kept.sort_unstable();
        Ok((GeneratingSet { n, maximal: kept }, reduced))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Maximal edges in lexicographic order.
    pub fn maximal(&self) -> &[VertexSet] {
        &self.maximal
    }

    pub fn max_edge_size(&self) -> usize {
        self.maximal.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    fn closure_size_estimate(&self) -> u64 {
        self.maximal
            .iter()
            .map(|s| 1u64 << s.len().min(62))
            .sum()
    }
}

impl fmt::Display for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<[{}]: ", self.n)?;
        for (i, s) in self.maximal.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone)]
pub struct Complex {
    gens: GeneratingSet,
    // Full closed family (including the empty set and all singletons),
    // sorted lexicographically. Absent when too large to materialize.
    family: Option<Vec<VertexSet>>,
    // Same family as a hash set; membership is the hot path of clique
    // censuses and embedding searches.
    member: Option<FxHashSet<VertexSet>>,
}

impl Complex {
    /// The downward closure of `sets` on ground set `[0, n)`.
    pub fn downward_closure<I: IntoIterator<Item = VertexSet>>(
        n: usize,
        sets: I,
    ) -> Result<Self, Error> {
        let (gens, _) = GeneratingSet::reduce(n, sets)?;
        Ok(Complex::from_generating_set(gens))
    }

    pub fn from_generating_set(gens: GeneratingSet) -> Self {
        let (family, member) = if gens.closure_size_estimate() <= MATERIALIZE_BUDGET {
            let mut seen: FxHashSet<VertexSet> = FxHashSet::default();
            seen.insert(VertexSet::EMPTY);
            for v in 0..gens.n {
                seen.insert(VertexSet::singleton(v));
            }
            for g in &gens.maximal {
                for s in g.all_subsets() {
                    seen.insert(s);
                }
            }
            let mut family: Vec<VertexSet> = seen.iter().copied().collect();
            family.sort_unstable();
            (Some(family), Some(seen))
        } else {
            (None, None)
        };
        Complex {
            gens,
            family,
            member,
        }
    }

    /// The trivial complex on `[0, n)`: just the empty set and singletons.
    pub fn trivial(n: usize) -> Result<Self, Error> {
        Complex::downward_closure(n, std::iter::empty())
    }

    /// The full simplex: every subset of `[0, n)`.
    pub fn simplex(n: usize) -> Result<Self, Error> {
        Complex::downward_closure(n, [VertexSet::full(n)])
    }

    pub fn n(&self) -> usize {
        self.gens.n
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.gens
    }

    /// `dim = (largest edge size) - 1`; the trivial complex has dimension 0.
    pub fn dimension(&self) -> usize {
        self.gens.max_edge_size().saturating_sub(1)
    }

    pub fn is_materialized(&self) -> bool {
        self.family.is_some()
    }

    /// Edge membership. The empty set and all singletons of the ground set
    /// are always edges.
    pub fn is_edge(&self, s: VertexSet) -> bool {
        if s.is_empty() {
            return true;
        }
        if !s.is_subset_of(VertexSet::full(self.n())) {
            return false;
        }
        if s.len() == 1 {
            return true;
        }
        match &self.member {
            Some(fam) => fam.contains(&s),
            None => self.gens.maximal.iter().any(|g| s.is_subset_of(*g)),
        }
    }

    /// Number of edges of each size, `m_0 = 1` and `m_1 = n` included.
    pub fn edge_counts(&self) -> Result<BTreeMap<usize, u64>, Error> {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        match &self.family {
            Some(fam) => {
                for e in fam {
                    *counts.entry(e.len()).or_insert(0) += 1;
                }
            }
            None => {
                counts.insert(0, 1);
                counts.insert(1, self.n() as u64);
                for r in 2..=self.gens.max_edge_size() {
                    counts.insert(r, self.layer_edges(r)?.len() as u64);
                }
            }
        }
        counts.retain(|_, c| *c > 0);
        Ok(counts)
    }

    /// Total number of edges (the empty set counts).
    pub fn total_edges(&self) -> Result<u64, Error> {
        Ok(self.edge_counts()?.values().sum())
    }

    /// The `r`-th layer as an `r`-uniform hypergraph (`r >= 1`).
    pub fn layer(&self, r: usize) -> Result<UniformHypergraph, Error> {
        if r == 0 {
            return Err(Error::InvalidParameter(
                "layer index must be >= 1 (layer 0 is just the empty set)".into(),
            ));
        }
        UniformHypergraph::new(self.n(), r, self.layer_edges(r)?)
    }

    fn layer_edges(&self, r: usize) -> Result<Vec<VertexSet>, Error> {
        if r == 1 {
            return Ok((0..self.n()).map(VertexSet::singleton).collect());
        }
        match &self.family {
            Some(fam) => Ok(fam.iter().copied().filter(|e| e.len() == r).collect()),
            None => {
                let mut seen: HashSet<VertexSet> = HashSet::new();
                for g in &self.gens.maximal {
                    if g.len() >= r {
                        for s in g.subsets_of_size(r) {
                            seen.insert(s);
                            if seen.len() as u64 > MATERIALIZE_BUDGET {
                                return Err(Error::TooLarge(format!(
                                    "layer {r} has more than {MATERIALIZE_BUDGET} edges"
                                )));
                            }
                        }
                    }
                }
                let mut out: Vec<VertexSet> = seen.into_iter().collect();
                out.sort_unstable();
                Ok(out)
            }
        }
    }

    /// All edges, sorted, if the family is materialized.
    pub fn edges(&self) -> Option<&[VertexSet]> {
        self.family.as_deref()
    }

    /// Adjacency masks of the 2-layer: `adj[v]` holds the vertices `u` with
    /// `{u, v}` an edge. Useful as a cheap containment filter.
    pub fn two_layer_adjacency(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for g in &self.gens.maximal {
            if g.len() >= 2 {
                for pair in g.subsets_of_size(2) {
                    let mut it = pair.iter();
                    let (u, v) = (it.next().unwrap(), it.next().unwrap());
                    adj[u] = adj[u].insert(v);
                    adj[v] = adj[v].insert(u);
                }
            }
        }
        adj
    }

    /// Apply a vertex relabeling.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n()
            )));
        }
        Complex::downward_closure(
            self.n(),
            self.gens.maximal.iter().map(|g| g.relabel(perm)),
        )
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Complex {}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "closure{}", self.gens)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_drops_dominated_sets() {
        let (gens, reduced) = GeneratingSet::reduce(
            5,
            [
                VertexSet::of(&[0, 1, 2]),
                VertexSet::of(&[0, 1]),
                VertexSet::of(&[3, 4]),
            ],
        )
        .unwrap();
        assert!(reduced);
        assert_eq!(
            gens.maximal(),
            &[VertexSet::of(&[0, 1, 2]), VertexSet::of(&[3, 4])]
        );
    }

    #[test]
    fn uncovered_vertices_become_singleton_generators() {
        let (gens, reduced) =
            GeneratingSet::reduce(4, [VertexSet::of(&[1, 2])]).unwrap();
        assert!(!reduced);
        assert_eq!(
            gens.maximal(),
            &[
                VertexSet::of(&[0]),
                VertexSet::of(&[1, 2]),
                VertexSet::of(&[3])
            ]
        );
    }

    #[test]
    fn closure_membership_and_counts() {
        let c = Complex::downward_closure(
            4,
            [VertexSet::of(&[0, 1, 2]), VertexSet::of(&[2, 3])],
        )
        .unwrap();
        assert_eq!(c.dimension(), 2);
        assert!(c.is_edge(VertexSet::EMPTY));
        assert!(c.is_edge(VertexSet::of(&[3])));
        assert!(c.is_edge(VertexSet::of(&[0, 2])));
        assert!(!c.is_edge(VertexSet::of(&[0, 3])));
        assert!(!c.is_edge(VertexSet::of(&[0, 1, 3])));
        let counts = c.edge_counts().unwrap();
        assert_eq!(counts[&0], 1);
        assert_eq!(counts[&1], 4);
        assert_eq!(counts[&2], 4); // {0,1},{0,2},{1,2},{2,3}
        assert_eq!(counts[&3], 1);
        assert_eq!(c.total_edges().unwrap(), 10);
    }

    #[test]
    fn layer_is_uniform() {
        let c = Complex::downward_closure(
            5,
            [VertexSet::of(&[0, 1, 2]), VertexSet::of(&[2, 3, 4])],
        )
        .unwrap();
        let l2 = c.layer(2).unwrap();
        assert_eq!(l2.k(), 2);
        assert_eq!(l2.edge_count(), 6);
    }
}
