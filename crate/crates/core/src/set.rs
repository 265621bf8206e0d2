//! Fixed-width vertex sets.
//!
//! A [`VertexSet`] packs a subset of `[0, 128)` into a `u128`, so the usual
//! set algebra (union, intersection, subset tests) is a handful of word
//! operations. All hypergraph and complex code in this crate stores edges as
//! `VertexSet`s.
//!
//! The `Ord` implementation is *lexicographic on the sorted vertex sequence*
//! (`{0,2} < {1}`, and a set precedes its proper supersets), not numeric on
//! the underlying mask. Tie-breaking rules elsewhere in the crate ("the
//! lexicographically least (k-1)-set", canonical edge-list encodings) rely on
//! this order.

use crate::error::Error;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES, "vertex {v} out of range");
        VertexSet(1u128 << v)
    }

    pub fn from_bits(bits: u128) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Build from vertex ids, rejecting out-of-range vertices.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Result<VertexSet, Error> {
        let mut mask = 0u128;
        for v in vs {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            mask |= 1u128 << v;
        }
        Ok(VertexSet(mask))
    }

    /// Convenience constructor for literal sets; panics on out-of-range ids.
    pub fn of(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied()).expect("vertex out of range")
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES);
        if n == 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(self.0 | 1u128 << v)
    }

    pub fn remove(self, v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(self.0 & !(1u128 << v))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset_of(self, other: VertexSet) -> bool {
        other.is_subset_of(self)
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Apply a vertex relabeling: vertex `v` becomes `perm[v]`.
    /// `perm` must be defined on every member.
    pub fn relabel(self, perm: &[usize]) -> VertexSet {
        let mut out = 0u128;
        for v in self.iter() {
            out |= 1u128 << perm[v];
        }
        VertexSet(out)
    }

    /// All subsets of this set with exactly `r` elements, in lexicographic
    /// order of their sorted vertex sequences.
    pub fn subsets_of_size(self, r: usize) -> Vec<VertexSet> {
        let verts = self.to_vec();
        if r > verts.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(r);
        subsets_rec(&verts, 0, r, &mut chosen, &mut out);
        out
    }

    /// All subsets (including the empty set), ascending by size then lex.
    pub fn all_subsets(self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for r in 0..=self.len() {
            out.extend(self.subsets_of_size(r));
        }
        out
    }
}

fn subsets_rec(
    verts: &[usize],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    if remaining == 0 {
        out.push(VertexSet::of(chosen));
        return;
    }
    // Not enough vertices left to finish the subset.
    for i in start..=verts.len().saturating_sub(remaining) {
        chosen.push(verts[i]);
        subsets_rec(verts, i + 1, remaining - 1, chosen, out);
        chosen.pop();
    }
}

/// All `r`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn all_k_subsets(n: usize, r: usize) -> Vec<VertexSet> {
    VertexSet::full(n).subsets_of_size(r)
}

pub struct BitIter(u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &VertexSet) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // The lowest differing bit decides: whoever holds it has the smaller
        // vertex at the first differing position -- unless the other set has
        // no vertices from that point on, making it a proper prefix.
        let d = (self.0 ^ other.0).trailing_zeros();
        if self.0 >> d & 1 == 1 {
            if other.0 >> d == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> d == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &VertexSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VertexSet;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of vertex ids")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<VertexSet, A::Error> {
                let mut mask = 0u128;
                while let Some(v) = seq.next_element::<usize>()? {
                    if v >= MAX_VERTICES {
                        return Err(serde::de::Error::custom(format!(
                            "vertex {v} out of range"
                        )));
                    }
                    mask |= 1u128 << v;
                }
                Ok(VertexSet(mask))
            }
        }
        deserializer.deserialize_seq(V)
    }
}
