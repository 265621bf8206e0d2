//! Canonical forms and isomorphism testing for small set systems.
//!
//! The canonical form of a hypergraph (or of a complex, via its generating
//! set) is the minimal relabeled edge-list encoding over all vertex
//! permutations. The search assigns labels one vertex at a time and compares
//! partial encodings against the best complete one found so far, so whole
//! branches are discarded as soon as their prefix is beaten. Two further
//! prunes keep regular structures tractable: at every node only candidates
//! producing the minimal immediate edge group survive, and candidates
//! related to an explored sibling by a transposition that is an automorphism
//! of the whole system are skipped.
//!
//! This is exact but factorial in the worst case; the default limit is 12
//! vertices [`DEFAULT_CANON_LIMIT`], which covers every witness and pattern
//! this crate produces.

use crate::complex::Complex;
use crate::error::Error;
use crate::hypergraph::UniformHypergraph;
use crate::set::VertexSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

pub const DEFAULT_CANON_LIMIT: usize = 12;

/// An isomorphism-invariant encoding: equal forms iff isomorphic objects
/// (of the same kind).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Stable short fingerprint, suitable as a cache key component.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(&self.bytes);
        let out = hasher.finalize();
        out.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.digest())
    }
}

pub fn canonical_form_uniform(g: &UniformHypergraph) -> Result<CanonicalForm, Error> {
    canonical_form_uniform_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_uniform_with_limit(
    g: &UniformHypergraph,
    limit: usize,
) -> Result<CanonicalForm, Error> {
    let groups = canonical_groups(g.n(), g.edges(), limit)?;
    Ok(serialize_groups(b'U', g.n(), g.k(), &groups))
}

/// Canonical form of a complex, computed on its generating set (complexes
/// are isomorphic exactly when their generating sets are).
pub fn canonical_form_complex(c: &Complex) -> Result<CanonicalForm, Error> {
    canonical_form_complex_with_limit(c, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_complex_with_limit(
    c: &Complex,
    limit: usize,
) -> Result<CanonicalForm, Error> {
    let groups = canonical_groups(c.n(), c.generating_set().maximal(), limit)?;
    Ok(serialize_groups(b'C', c.n(), 0, &groups))
}

pub fn isomorphic_uniform(a: &UniformHypergraph, b: &UniformHypergraph) -> Result<bool, Error> {
    if a.n() != b.n() || a.k() != b.k() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form_uniform(a)? == canonical_form_uniform(b)?)
}

pub fn isomorphic_complex(a: &Complex, b: &Complex) -> Result<bool, Error> {
    if a.n() != b.n() {
        return Ok(false);
    }
    let mut sa: Vec<usize> = a.generating_set().maximal().iter().map(|s| s.len()).collect();
    let mut sb: Vec<usize> = b.generating_set().maximal().iter().map(|s| s.len()).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }
    Ok(canonical_form_complex(a)? == canonical_form_complex(b)?)
}

fn serialize_groups(tag: u8, n: usize, k: usize, groups: &[Vec<VertexSet>]) -> CanonicalForm {
    let mut bytes = vec![tag, n as u8, k as u8];
    for group in groups {
        bytes.extend_from_slice(&(group.len() as u16).to_le_bytes());
        for e in group {
            bytes.push(e.len() as u8);
            for v in e.iter() {
                bytes.push(v as u8);
            }
        }
    }
    CanonicalForm { bytes }
}

// Groups with more edges sort first (adjacent-to-prefix vertices are
// preferred early, which gives the search discrimination), then by the
// relabeled edges themselves.
fn cmp_groups(a: &[VertexSet], b: &[VertexSet]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

struct CanonSearch<'a> {
    n: usize,
    sets: &'a [VertexSet],
    incidence: Vec<Vec<usize>>,
    swap_aut: Vec<Vec<bool>>,
    label_of: Vec<usize>,
    assigned: VertexSet,
    groups: Vec<Vec<VertexSet>>,
    // Comparison of the current path prefix against `best`, per depth.
    path_ord: Vec<Ordering>,
    best: Option<Vec<Vec<VertexSet>>>,
}

impl<'a> CanonSearch<'a> {
    fn new(n: usize, sets: &'a [VertexSet]) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, s) in sets.iter().enumerate() {
            for v in s.iter() {
                incidence[v].push(i);
            }
        }
        let set_lookup: HashSet<VertexSet> = sets.iter().copied().collect();
        let mut swap_aut = vec![vec![false; n]; n];
        for v in 0..n {
            for w in v + 1..n {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(v, w);
                let ok = sets
                    .iter()
                    .all(|s| set_lookup.contains(&s.relabel(&perm)));
                swap_aut[v][w] = ok;
                swap_aut[w][v] = ok;
            }
        }
        CanonSearch {
            n,
            sets,
            incidence,
            swap_aut,
            label_of: vec![usize::MAX; n],
            assigned: VertexSet::EMPTY,
            groups: Vec::new(),
            path_ord: Vec::new(),
            best: None,
        }
    }

    /// Relabeled edges completed by assigning `v` the next label, assuming
    /// `self.assigned`/`label_of` describe the current prefix.
    fn immediate_group(&self, v: usize, label: usize) -> Vec<VertexSet> {
        let with_v = self.assigned.insert(v);
        let mut group = Vec::new();
        for &i in &self.incidence[v] {
            let s = self.sets[i];
            if s.is_subset_of(with_v) {
                let mut mask = VertexSet::EMPTY;
                for u in s.iter() {
                    let l = if u == v { label } else { self.label_of[u] };
                    mask = mask.insert(l);
                }
                group.push(mask);
            }
        }
        group.sort_unstable();
        group
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.n {
            let better = match &self.best {
                None => true,
                // If the whole path compared Equal we found the same
                // encoding; only a strictly smaller prefix replaces best.
                Some(_) => self.path_ord.iter().any(|o| *o == Ordering::Less),
            };
            if better {
                self.best = Some(self.groups.clone());
                // The new best *is* the current path, so the prefix now
                // compares Equal at every depth.
                for o in self.path_ord.iter_mut() {
                    *o = Ordering::Equal;
                }
            }
            return;
        }

        // Candidates with the minimal immediate group; others cannot start a
        // minimal completion from this prefix.
        let mut cands: Vec<(usize, Vec<VertexSet>)> = Vec::new();
        for v in 0..self.n {
            if self.assigned.contains(v) {
                continue;
            }
            let group = self.immediate_group(v, depth);
            match cands.first() {
                None => cands.push((v, group)),
                Some((_, g0)) => match cmp_groups(&group, g0) {
                    Ordering::Less => {
                        cands.clear();
                        cands.push((v, group));
                    }
                    Ordering::Equal => cands.push((v, group)),
                    Ordering::Greater => {}
                },
            }
        }

        let mut explored: Vec<usize> = Vec::new();
        for (v, group) in cands {
            // A transposition automorphism with an explored sibling makes
            // this subtree a mirror image of an earlier one.
            if explored.iter().any(|&w| self.swap_aut[v][w]) {
                continue;
            }
            explored.push(v);

            // Re-read on every iteration: a child that replaced `best`
            // resets the whole path to Equal.
            let parent_ord = self.path_ord.last().copied().unwrap_or(Ordering::Equal);
            let ord = if parent_ord == Ordering::Less {
                Ordering::Less
            } else {
                match &self.best {
                    None => Ordering::Equal,
                    Some(best) => cmp_groups(&group, &best[depth]),
                }
            };
            if ord == Ordering::Greater {
                continue;
            }

            self.label_of[v] = depth;
            self.assigned = self.assigned.insert(v);
            self.groups.push(group);
            self.path_ord.push(ord);

            self.dfs(depth + 1);

            self.path_ord.pop();
            self.groups.pop();
            self.assigned = self.assigned.remove(v);
            self.label_of[v] = usize::MAX;
        }
    }
}

/// Minimal group encoding of a set system over all vertex relabelings.
fn canonical_groups(
    n: usize,
    sets: &[VertexSet],
    limit: usize,
) -> Result<Vec<Vec<VertexSet>>, Error> {
    if n > limit {
        return Err(Error::TooLarge(format!(
            "canonicalization supports up to {limit} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = CanonSearch::new(n, sets);
    search.dfs(0);
    Ok(search.best.expect("canonical search explored no ordering"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[[usize; 2]]) -> UniformHypergraph {
        UniformHypergraph::new(n, 2, edges.iter().map(|e| VertexSet::of(e))).unwrap()
    }

    #[test]
    fn relabeled_path_is_isomorphic() {
        let a = graph(4, &[[0, 1], [1, 2], [2, 3]]);
        let b = graph(4, &[[2, 0], [0, 3], [3, 1]]);
        assert!(isomorphic_uniform(&a, &b).unwrap());
    }

    #[test]
    fn path_and_star_differ() {
        let path = graph(4, &[[0, 1], [1, 2], [2, 3]]);
        let star = graph(4, &[[0, 1], [0, 2], [0, 3]]);
        assert!(!isomorphic_uniform(&path, &star).unwrap());
    }

    #[test]
    fn complete_hypergraph_is_fast_despite_symmetry() {
        let g = UniformHypergraph::complete(12, 3).unwrap();
        let c = canonical_form_uniform(&g).unwrap();
        let perm: Vec<usize> = (0..12).rev().collect();
        let h = g.relabel(&perm).unwrap();
        assert_eq!(c, canonical_form_uniform(&h).unwrap());
    }

    #[test]
    fn complexes_compare_via_generating_sets() {
        let a = Complex::downward_closure(
            4,
            [VertexSet::of(&[0, 1, 2]), VertexSet::of(&[2, 3])],
        )
        .unwrap();
        let b = a.relabel(&[3, 1, 0, 2]).unwrap();
        assert!(isomorphic_complex(&a, &b).unwrap());
        // Path vs star: same generator sizes, different structure.
        let path = Complex::downward_closure(
            4,
            [
                VertexSet::of(&[0, 1]),
                VertexSet::of(&[1, 2]),
                VertexSet::of(&[2, 3]),
            ],
        )
        .unwrap();
        let star = Complex::downward_closure(
            4,
            [
                VertexSet::of(&[0, 1]),
                VertexSet::of(&[0, 2]),
                VertexSet::of(&[0, 3]),
            ],
        )
        .unwrap();
        assert!(!isomorphic_complex(&path, &star).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let g = UniformHypergraph::empty(13, 2).unwrap();
        assert!(canonical_form_uniform(&g).is_err());
        assert!(canonical_form_uniform_with_limit(&g, 13).is_ok());
    }
}
