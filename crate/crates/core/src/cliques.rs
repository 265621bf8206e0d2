//! Generalized cliques of a complex, and labeled/unlabeled copy counting.
//!
//! For a uniformity parameter `k`, a vertex set `T` is a clique when it is a
//! single vertex, an edge of the complex, or — once `|T| >= k` — when every
//! `k`-subset of `T` is an edge. Cliques form a downward-closed family
//! themselves (minus the empty set), which is what makes the simple
//! max-vertex-extension enumeration below exhaustive.

use crate::complex::Complex;
use crate::error::Error;
use crate::set::{VertexSet, MAX_VERTICES};
use serde::Serialize;
use std::collections::BTreeMap;

/// Whether `t` is a `k`-clique of `c`.
pub fn is_clique(c: &Complex, t: VertexSet, k: usize) -> bool {
    let s = t.len();
    if s == 0 {
        return false;
    }
    if let Some(mx) = t.max_vertex() {
        if mx >= c.n() {
            return false;
        }
    }
    if s == 1 {
        return true;
    }
    if s <= k {
        return c.is_edge(t);
    }
    t.subsets_of_size(k).into_iter().all(|e| c.is_edge(e))
}

/// Clique census of a complex for one uniformity parameter.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueCount {
    /// Uniformity parameter the census was taken for.
    pub k: usize,
    /// Number of cliques of each order (order 1 = vertices).
    pub by_order: BTreeMap<usize, u64>,
    /// Cliques of order at least `k`.
    pub total_geq_k: u64,
    /// All cliques, order 1 up.
    pub total_all: u64,
}

/// Count all `k`-cliques of `c`, grouped by order.
pub fn count_cliques(c: &Complex, k: usize) -> Result<CliqueCount, Error> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "clique counting needs uniformity k >= 2".into(),
        ));
    }
    let mut by_order: BTreeMap<usize, u64> = BTreeMap::new();
    by_order.insert(1, c.n() as u64);
    match c.edges() {
        Some(family) => census_materialized(c.n(), family, k, &mut by_order),
        None => census_by_probing(c, k, &mut by_order),
    }
    by_order.retain(|_, count| *count > 0);
    let total_geq_k = by_order
        .iter()
        .filter(|(s, _)| **s >= k)
        .map(|(_, c)| *c)
        .sum();
    let total_all = by_order.values().sum();
    Ok(CliqueCount {
        k,
        by_order,
        total_geq_k,
        total_all,
    })
}

/// Census over a materialized family. Cliques of order `s <= k` are exactly
/// the size-`s` edges and are read off the family; larger cliques are grown
/// with candidate bitmasks: `ext` maps each (k-1)-set `S` to the vertices
/// `u` with `S + u` an edge, and a clique's candidate set is the
/// intersection of `ext` over its (k-1)-subsets. Extending by `u` only adds
/// the constraints through `u`, so candidates narrow incrementally — the
/// hypergraph version of bitset clique enumeration.
fn census_materialized(
    n: usize,
    family: &[VertexSet],
    k: usize,
    by_order: &mut BTreeMap<usize, u64>,
) {
    let mut ext: rustc_hash::FxHashMap<VertexSet, VertexSet> =
        rustc_hash::FxHashMap::default();
    // Sizes 2..=k are cliques by definition; larger edges are also cliques
    // but the growth below reaches them, so counting them here would double.
    for e in family {
        let s = e.len();
        if (2..=k).contains(&s) {
            *by_order.entry(s).or_default() += 1;
        }
        if s == k {
            for u in e.iter() {
                let slot = ext.entry(e.remove(u)).or_insert(VertexSet::EMPTY);
                *slot = slot.insert(u);
            }
        }
    }
    let above = |u: usize| VertexSet::full(n).difference(VertexSet::full(u + 1));

    let mut stack: Vec<(VertexSet, VertexSet)> = Vec::new();
    for e in family.iter().filter(|e| e.len() == k) {
        let mut cand = above(e.max_vertex().unwrap());
        for s in e.subsets_of_size(k - 1) {
            cand = cand.intersection(ext.get(&s).copied().unwrap_or(VertexSet::EMPTY));
            if cand.is_empty() {
                break;
            }
        }
        if !cand.is_empty() {
            stack.push((*e, cand));
        }
    }
    while let Some((t, cand)) = stack.pop() {
        for u in cand.iter() {
            let tu = t.insert(u);
            *by_order.entry(tu.len()).or_default() += 1;
            let narrowed = narrow_candidates(&ext, t, u, cand.intersection(above(u)), k);
            if !narrowed.is_empty() {
                stack.push((tu, narrowed));
            }
        }
    }
}

/// Candidates for `t + u` given `cand` ⊇ the still-valid candidates above
/// `u`: AND in `ext[S' + u]` for every (k-2)-subset `S'` of `t`, walking
/// combinations without allocating.
fn narrow_candidates(
    ext: &rustc_hash::FxHashMap<VertexSet, VertexSet>,
    t: VertexSet,
    u: usize,
    mut cand: VertexSet,
    k: usize,
) -> VertexSet {
    if cand.is_empty() {
        return cand;
    }
    let m = t.len();
    let k2 = k - 2;
    let mut vs = [0usize; MAX_VERTICES];
    let mut i = 0;
    for v in t.iter() {
        vs[i] = v;
        i += 1;
    }
    let mut idx = [0usize; MAX_VERTICES];
    for (j, slot) in idx.iter_mut().enumerate().take(k2) {
        *slot = j;
    }
    loop {
        let mut s = VertexSet::singleton(u);
        for &j in &idx[..k2] {
            s = s.insert(vs[j]);
        }
        cand = cand.intersection(ext.get(&s).copied().unwrap_or(VertexSet::EMPTY));
        if cand.is_empty() {
            return cand;
        }
        let mut j = k2;
        loop {
            if j == 0 {
                return cand;
            }
            j -= 1;
            if idx[j] != j + m - k2 {
                break;
            }
        }
        idx[j] += 1;
        for x in j + 1..k2 {
            idx[x] = idx[x - 1] + 1;
        }
    }
}

/// Fallback census when the family is too large to materialize: grow
/// cliques by maximum vertex, probing edge membership set by set.
fn census_by_probing(c: &Complex, k: usize, by_order: &mut BTreeMap<usize, u64>) {
    let mut stack: Vec<VertexSet> = (0..c.n()).map(VertexSet::singleton).collect();
    while let Some(t) = stack.pop() {
        let mx = t.max_vertex().unwrap();
        for u in mx + 1..c.n() {
            let tu = t.insert(u);
            if extends_clique(c, t, u, tu, k) {
                *by_order.entry(tu.len()).or_default() += 1;
                stack.push(tu);
            }
        }
    }
}

/// All `k`-cliques of order at least `min_order`, lexicographically sorted.
/// Meant for inspection of small complexes; the census above is the tool for
/// bulk counting.
pub fn list_cliques(
    c: &Complex,
    k: usize,
    min_order: usize,
) -> Result<Vec<VertexSet>, Error> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "clique listing needs uniformity k >= 2".into(),
        ));
    }
    let mut out: Vec<VertexSet> = Vec::new();
    let mut stack: Vec<VertexSet> = (0..c.n()).map(VertexSet::singleton).collect();
    if min_order <= 1 {
        out.extend(stack.iter().copied());
    }
    while let Some(t) = stack.pop() {
        let mx = t.max_vertex().unwrap();
        for u in mx + 1..c.n() {
            let tu = t.insert(u);
            if extends_clique(c, t, u, tu, k) {
                if tu.len() >= min_order {
                    out.push(tu);
                }
                stack.push(tu);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

// `t` is known to be a clique; decide whether `tu = t + u` still is. Only the
// subsets involving `u` need rechecking.
// `t` is a clique and `tu = t + u`: every k-subset of `tu` avoiding `u` is
// already certified, so only those through `u` need checking. The
// combination walk is allocation-free; this is the hot loop of a census.
fn extends_clique(c: &Complex, t: VertexSet, u: usize, tu: VertexSet, k: usize) -> bool {
    if tu.len() <= k {
        return c.is_edge(tu);
    }
    let mut vs = [0usize; MAX_VERTICES];
    let mut m = 0;
    for v in t.iter() {
        vs[m] = v;
        m += 1;
    }
    let r = k - 1;
    let mut idx = [0usize; MAX_VERTICES];
    for (j, slot) in idx.iter_mut().enumerate().take(r) {
        *slot = j;
    }
    loop {
        let mut s = VertexSet::singleton(u);
        for &i in &idx[..r] {
            s = s.insert(vs[i]);
        }
        if !c.is_edge(s) {
            return false;
        }
        // Advance to the next r-combination of indices in [0, m).
        let mut j = r;
        loop {
            if j == 0 {
                return true;
            }
            j -= 1;
            if idx[j] != j + m - r {
                break;
            }
        }
        idx[j] += 1;
        for x in j + 1..r {
            idx[x] = idx[x - 1] + 1;
        }
    }
}

/// Number of injective maps from the pattern's ground set into the host's
/// that send every pattern edge to a host edge.
pub fn count_embeddings(host: &Complex, pattern: &Complex) -> Result<u64, Error> {
    let np = pattern.n();
    let nh = host.n();
    if np > nh {
        return Ok(0);
    }
    // Checking the maximal edges suffices: hosts are downward closed.
    let gens: Vec<Vec<usize>> = pattern
        .generating_set()
        .maximal()
        .iter()
        .map(|g| g.to_vec())
        .collect();
    // gens_at[v] = generators whose maximum assigned vertex is v, so each
    // generator is checked exactly once, as soon as it is fully mapped...
    // except we check *prefixes* too: a partial image must already be a host
    // edge (downward closure makes that a valid pruning test).
    let mut image = vec![0usize; np];
    let mut used = VertexSet::EMPTY;
    let mut count = 0u64;
    embed_dfs(host, &gens, 0, &mut image, &mut used, &mut count);
    Ok(count)
}

fn embed_dfs(
    host: &Complex,
    gens: &[Vec<usize>],
    v: usize,
    image: &mut Vec<usize>,
    used: &mut VertexSet,
    count: &mut u64,
) {
    if v == image.len() {
        *count += 1;
        return;
    }
    'targets: for target in 0..host.n() {
        if used.contains(target) {
            continue;
        }
        image[v] = target;
        for g in gens {
            if !g.contains(&v) {
                continue;
            }
            let partial = VertexSet::from_vertices(
                g.iter().filter(|w| **w <= v).map(|w| image[*w]),
            )
            .unwrap();
            if !host.is_edge(partial) {
                continue 'targets;
            }
        }
        *used = used.insert(target);
        embed_dfs(host, gens, v + 1, image, used, count);
        *used = used.remove(target);
    }
}

/// Order of the automorphism group of a complex.
pub fn automorphism_count(c: &Complex) -> Result<u64, Error> {
    count_embeddings(c, c)
}

/// Number of unlabeled copies of `pattern` inside `host`:
/// embeddings divided by pattern automorphisms.
pub fn count_copies(host: &Complex, pattern: &Complex) -> Result<u64, Error> {
    let embeddings = count_embeddings(host, pattern)?;
    let aut = automorphism_count(pattern)?;
    debug_assert_eq!(embeddings % aut, 0);
    Ok(embeddings / aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::hypergraph::UniformHypergraph;

    fn closure_of(g: &UniformHypergraph) -> Complex {
        Complex::downward_closure(g.n(), g.edges().iter().copied()).unwrap()
    }

    #[test]
    fn simplex_cliques_are_all_nonempty_subsets() {
        let c = closure_of(&UniformHypergraph::complete(6, 3).unwrap());
        let census = count_cliques(&c, 3).unwrap();
        for s in 1..=6usize {
            let binom = [6u64, 15, 20, 15, 6, 1][s - 1];
            assert_eq!(census.by_order[&s], binom);
        }
        assert_eq!(census.total_all, 63);
        assert_eq!(census.total_geq_k, 42);
    }

    #[test]
    fn single_center_star_cliques() {
        let c = closure_of(&constructions::star(6, 3, 1).unwrap());
        let census = count_cliques(&c, 3).unwrap();
        assert_eq!(census.total_geq_k, 10);
        assert_eq!(census.by_order.get(&4), None);
    }

    #[test]
    fn wide_center_graph_star_cliques() {
        let c = closure_of(&constructions::star(30, 2, 4).unwrap());
        let census = count_cliques(&c, 2).unwrap();
        assert_eq!(census.total_geq_k, 401);
    }

    #[test]
    fn two_edge_path_census() {
        let c = closure_of(&constructions::linear_path(3, 2).unwrap());
        let census = count_cliques(&c, 3).unwrap();
        assert_eq!(census.by_order[&1], 5);
        assert_eq!(census.by_order[&2], 6);
        assert_eq!(census.by_order[&3], 2);
        assert_eq!(census.by_order.get(&4), None);
        assert_eq!(census.total_geq_k, 2);
    }

    #[test]
    fn is_clique_spot_checks() {
        let c = closure_of(&constructions::star(6, 3, 1).unwrap());
        assert!(is_clique(&c, VertexSet::of(&[4]), 3));
        assert!(is_clique(&c, VertexSet::of(&[0, 3, 5]), 3));
        assert!(!is_clique(&c, VertexSet::of(&[1, 3, 5]), 3));
        // Pairs below the uniformity are cliques when they are edges.
        assert!(is_clique(&c, VertexSet::of(&[3, 5]), 3));
        assert!(!is_clique(&c, VertexSet::EMPTY, 3));
        assert!(!is_clique(&c, VertexSet::of(&[6]), 3));
    }

    #[test]
    fn matching_copies_in_complete_host() {
        let host = closure_of(&UniformHypergraph::complete(6, 3).unwrap());
        let pattern = closure_of(&constructions::matching(3, 2).unwrap());
        assert_eq!(automorphism_count(&pattern).unwrap(), 72);
        assert_eq!(count_embeddings(&host, &pattern).unwrap(), 720);
        assert_eq!(count_copies(&host, &pattern).unwrap(), 10);
    }

    #[test]
    fn pattern_larger_than_host_has_no_copies() {
        let host = closure_of(&UniformHypergraph::complete(5, 3).unwrap());
        let pattern = closure_of(&constructions::matching(3, 2).unwrap());
        assert_eq!(count_copies(&host, &pattern).unwrap(), 0);
    }
}
