//! `k`-uniform hypergraphs on a labeled ground set `[0, n)`.
//!
//! Edges are stored sorted (lexicographically) and deduplicated; membership
//! is a binary search. Isolated vertices are allowed: `n` is declared, not
//! inferred from the edges.

use crate::error::Error;
use crate::set::{VertexSet, MAX_VERTICES};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniformHypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl UniformHypergraph {
    /// Build from an edge list. Edges must all have size `k`, lie inside
    /// `[0, n)`, and be distinct.
    pub fn new<I: IntoIterator<Item = VertexSet>>(
        n: usize,
        k: usize,
        edges: I,
    ) -> Result<Self, Error> {
        if n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        if k == 0 {
            return Err(Error::InvalidParameter("edge size k must be >= 1".into()));
        }
        let full = VertexSet::full(n);
        let mut list: Vec<VertexSet> = Vec::new();
        for e in edges {
            if e.len() != k {
                return Err(Error::WrongEdgeSize {
                    edge: e.to_string(),
                    actual: e.len(),
                    expected: k,
                });
            }
            if !e.is_subset_of(full) {
                return Err(Error::VertexOutOfRange {
                    vertex: e.difference(full).min_vertex().unwrap(),
                    n,
                });
            }
            list.push(e);
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge {
                    edge: w[0].to_string(),
                });
            }
        }
        Ok(UniformHypergraph { n, k, edges: list })
    }

    /// The complete `k`-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self, Error> {
        UniformHypergraph::new(n, k, VertexSet::full(n).subsets_of_size(k))
    }

    /// No edges at all.
    pub fn empty(n: usize, k: usize) -> Result<Self, Error> {
        UniformHypergraph::new(n, k, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of edges containing every vertex of `s`.
    pub fn degree_of_set(&self, s: VertexSet) -> usize {
        self.edges.iter().filter(|e| s.is_subset_of(**e)).count()
    }

    /// Per-vertex edge degrees.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Union of all edges; vertices outside are isolated.
    pub fn support(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |acc, e| acc.union(*e))
    }

    /// Apply a vertex relabeling (`perm` must be a permutation of `[0, n)`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        UniformHypergraph::new(self.n, self.k, self.edges.iter().map(|e| e.relabel(perm)))
    }

    /// Remove the given edges (ignoring absentees), keeping `n` and `k`.
    pub fn without_edges(&self, remove: &[VertexSet]) -> Self {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !remove.contains(e))
            .collect::<Vec<_>>();
        UniformHypergraph {
            n: self.n,
            k: self.k,
            edges,
        }
    }
}

impl fmt::Display for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph on [{}]: {{", self.k, self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let e = VertexSet::of(&[0, 1, 2]);
        assert!(UniformHypergraph::new(5, 2, [e]).is_err());
        assert!(UniformHypergraph::new(2, 3, [e]).is_err());
        assert!(UniformHypergraph::new(5, 3, [e, e]).is_err());
    }

    #[test]
    fn complete_graph_edge_count() {
        let g = UniformHypergraph::complete(6, 3).unwrap();
        assert_eq!(g.edge_count(), 20);
        assert!(g.contains_edge(VertexSet::of(&[1, 3, 5])));
        assert_eq!(g.degree_of_set(VertexSet::of(&[1, 3])), 4);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = UniformHypergraph::new(
            4,
            2,
            [VertexSet::of(&[0, 1]), VertexSet::of(&[1, 2])],
        )
        .unwrap();
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.contains_edge(VertexSet::of(&[2, 3])));
        assert!(h.contains_edge(VertexSet::of(&[1, 2])));
    }
}
