//! Structural analysis of uniform hypergraphs: edge-degenerate orderings,
//! fullness, the peeling procedure that removes low-degree `(k-1)`-sets, and
//! intersection-profile bounds.

use crate::cliques::count_cliques;
use crate::complex::Complex;
use crate::error::Error;
use crate::formulas::binomial;
use crate::hypergraph::UniformHypergraph;
use crate::set::VertexSet;
use num_bigint::BigUint;
use std::collections::{BTreeMap, BTreeSet};

/// Largest edge count for which the ordering search runs (the subset DP is
/// exponential in the number of edges).
pub const MAX_DEGENERACY_EDGES: usize = 12;

/// Check the defining property directly: `order` lists all edge indices once,
/// and each edge's intersection with the union of its predecessors fits
/// inside some single predecessor.
pub fn is_edge_degenerate_ordering(h: &UniformHypergraph, order: &[usize]) -> bool {
    let m = h.edge_count();
    if order.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &i in order {
        if i >= m || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let edges = h.edges();
    let mut union = VertexSet::EMPTY;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 {
            let overlap = edges[i].intersection(union);
            if !order[..pos]
                .iter()
                .any(|&j| overlap.is_subset_of(edges[j]))
            {
                return false;
            }
        }
        union = union.union(edges[i]);
    }
    true
}

/// Find an edge ordering where every edge meets the union of its
/// predecessors inside a single earlier edge, or report that none exists.
///
/// Subset dynamic program: whether a *set* of edges admits such an ordering
/// only depends on the set, so reachability over the `2^m` subsets decides
/// it, and predecessor links recover a witness ordering.
pub fn edge_degenerate_ordering(
    h: &UniformHypergraph,
) -> Result<Option<Vec<usize>>, Error> {
    let m = h.edge_count();
    if m > MAX_DEGENERACY_EDGES {
        return Err(Error::TooLarge(format!(
            "{m} edges; degeneracy search is limited to {MAX_DEGENERACY_EDGES}"
        )));
    }
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    let edges = h.edges();
    let full: usize = (1 << m) - 1;
    let mut union = vec![VertexSet::EMPTY; 1 << m];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        union[mask] = union[mask & (mask - 1)].union(edges[low]);
    }
    // pred[mask] = edge appended last to reach mask; usize::MAX = unreached.
    let mut pred = vec![usize::MAX; 1 << m];
    for i in 0..m {
        pred[1 << i] = i;
    }
    for mask in 1..=full {
        if pred[mask] == usize::MAX {
            continue;
        }
        for e in 0..m {
            if mask & (1 << e) != 0 || pred[mask | (1 << e)] != usize::MAX {
                continue;
            }
            let overlap = edges[e].intersection(union[mask]);
            let ok = (0..m)
                .any(|j| mask & (1 << j) != 0 && overlap.is_subset_of(edges[j]));
            if ok {
                pred[mask | (1 << e)] = e;
            }
        }
    }
    if pred[full] == usize::MAX {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(m);
    let mut mask = full;
    while mask != 0 {
        let e = pred[mask];
        order.push(e);
        mask &= !(1 << e);
    }
    order.reverse();
    debug_assert!(is_edge_degenerate_ordering(h, &order));
    Ok(Some(order))
}

/// Every `(k-1)`-set of vertices lies in no edge at all or in at least `l`.
pub fn is_l_full(g: &UniformHypergraph, l: usize) -> Result<bool, Error> {
    if l < 1 {
        return Err(Error::InvalidParameter("fullness needs l >= 1".into()));
    }
    Ok(VertexSet::full(g.n())
        .subsets_of_size(g.k() - 1)
        .into_iter()
        .all(|t| {
            let d = g.degree_of_set(t);
            d == 0 || d >= l
        }))
}

/// One peel step: the deleted `(k-1)`-set, how many edges went with it, and
/// which cliques of the closure disappeared.
#[derive(Debug, Clone)]
pub struct PeelIteration {
    pub deleted: VertexSet,
    pub edges_removed: usize,
    pub destroyed_by_order: BTreeMap<usize, u64>,
}

/// Outcome of [`peel`]. `remaining` is always `l`-full.
#[derive(Debug, Clone)]
pub struct PeelReport {
    pub remaining: UniformHypergraph,
    pub iterations: Vec<PeelIteration>,
    /// Cliques of order `>= k` destroyed across all iterations.
    pub total_destroyed_geq_k: u64,
    pub fullness: usize,
    /// The clique order whose per-iteration loss the proof bounds.
    pub clique_order: usize,
    /// `C(l-1, r-k+1)` — no single iteration may destroy more order-`r`
    /// cliques than this.
    pub per_iteration_bound: BigUint,
}

/// Repeatedly delete all edges through the lexicographically least
/// `(k-1)`-set of degree between 1 and `l-1`, until the graph is `l`-full.
///
/// The deleted set's degree caps the cliques lost: an order-`r` clique
/// through a `(k-1)`-set survives on its edges through that set, so at most
/// `C(l-1, r-k+1)` of them can die per step. The report records actual
/// losses per order so that bound can be checked externally.
pub fn peel(g: &UniformHypergraph, l: usize, r: usize) -> Result<PeelReport, Error> {
    if l < 1 {
        return Err(Error::InvalidParameter("peel needs l >= 1".into()));
    }
    if r < g.k() {
        return Err(Error::InvalidParameter(
            "peel clique order must be at least the uniformity".into(),
        ));
    }
    let k = g.k();
    let mut current = g.clone();
    let mut census = closure_census(&current)?;
    let mut iterations = Vec::new();
    loop {
        let target = VertexSet::full(current.n())
            .subsets_of_size(k - 1)
            .into_iter()
            .find(|t| {
                let d = current.degree_of_set(*t);
                d >= 1 && d <= l - 1
            });
        let Some(t) = target else { break };
        let removed: Vec<VertexSet> = current
            .edges()
            .iter()
            .copied()
            .filter(|e| t.is_subset_of(*e))
            .collect();
        current = current.without_edges(&removed);
        let after = closure_census(&current)?;
        let mut destroyed_by_order = BTreeMap::new();
        for (order, count) in &census {
            let lost = count - after.get(order).unwrap_or(&0);
            if lost > 0 {
                destroyed_by_order.insert(*order, lost);
            }
        }
        census = after;
        iterations.push(PeelIteration {
            deleted: t,
            edges_removed: removed.len(),
            destroyed_by_order,
        });
    }
    let total_destroyed_geq_k = iterations
        .iter()
        .flat_map(|it| &it.destroyed_by_order)
        .filter(|(order, _)| **order >= k)
        .map(|(_, c)| *c)
        .sum();
    Ok(PeelReport {
        remaining: current,
        iterations,
        total_destroyed_geq_k,
        fullness: l,
        clique_order: r,
        per_iteration_bound: binomial(l as u64 - 1, (r - k + 1) as u64),
    })
}

fn closure_census(g: &UniformHypergraph) -> Result<BTreeMap<usize, u64>, Error> {
    let c = Complex::downward_closure(g.n(), g.edges().iter().copied())?;
    Ok(count_cliques(&c, g.k())?.by_order)
}

/// The set of pairwise intersection sizes over distinct edges.
pub fn intersection_profile(g: &UniformHypergraph) -> BTreeSet<usize> {
    let edges = g.edges();
    let mut profile = BTreeSet::new();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[..i] {
            profile.insert(e.intersection(*f).len());
        }
    }
    profile
}

/// The intersection-profile edge bound: a family whose pairwise
/// intersection sizes all lie in a set `L` has at most `C(n, |L|)` edges.
#[derive(Debug, Clone)]
pub struct ProfileBound {
    pub profile: BTreeSet<usize>,
    pub bound: BigUint,
    pub edge_count: u64,
    pub holds: bool,
}

/// Evaluate the bound for `g`'s own profile. `holds` is always true — a
/// false here would mean a counting bug, not a counterexample.
pub fn rw_bound_holds(g: &UniformHypergraph) -> ProfileBound {
    let profile = intersection_profile(g);
    let bound = binomial(g.n() as u64, profile.len() as u64);
    let edge_count = g.edge_count() as u64;
    let holds = BigUint::from(edge_count) <= bound;
    ProfileBound {
        profile,
        bound,
        edge_count,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::containment::contains_uniform;
    use crate::{Budget, SearchOutcome};

    #[test]
    fn matchings_paths_are_degenerate() {
        for h in [
            constructions::matching(3, 2).unwrap(),
            constructions::matching(2, 3).unwrap(),
            constructions::linear_path(3, 3).unwrap(),
            constructions::tight_path(3, 3).unwrap(),
            constructions::tight_path(4, 3).unwrap(),
            constructions::star(5, 2, 1).unwrap(),
        ] {
            let order = edge_degenerate_ordering(&h).unwrap().expect("ordering");
            assert!(is_edge_degenerate_ordering(&h, &order));
        }
    }

    #[test]
    fn linear_cycles_are_not_degenerate() {
        for t in 3..=5 {
            let c = constructions::linear_cycle(3, t).unwrap();
            assert_eq!(edge_degenerate_ordering(&c).unwrap(), None);
        }
    }

    #[test]
    fn triple_stars_are_not_degenerate() {
        // Unlike graph stars, the 3-uniform full star on 4 vertices admits
        // no valid ordering: the last triple meets the union of the others
        // in itself, and distinct triples never nest.
        let s = constructions::star(4, 3, 1).unwrap();
        assert_eq!(edge_degenerate_ordering(&s).unwrap(), None);
    }

    #[test]
    fn checker_rejects_bad_orderings() {
        let h = constructions::tight_path(3, 3).unwrap();
        assert!(!is_edge_degenerate_ordering(&h, &[0, 1]));
        assert!(!is_edge_degenerate_ordering(&h, &[0, 0, 1]));
        // Edges sorted lex are {0,1,2}, {1,2,3}, {2,3,4}; starting at the
        // two ends leaves the middle edge with a spread-out overlap.
        assert!(!is_edge_degenerate_ordering(&h, &[0, 2, 1]));
        assert!(is_edge_degenerate_ordering(&h, &[0, 1, 2]));
    }

    #[test]
    fn fullness_examples() {
        let k34 = UniformHypergraph::complete(4, 3).unwrap();
        assert!(is_l_full(&k34, 2).unwrap());
        assert!(!is_l_full(&k34, 3).unwrap());
        let star = constructions::star(5, 2, 1).unwrap();
        assert!(!is_l_full(&star, 2).unwrap());
        let empty = UniformHypergraph::empty(5, 3).unwrap();
        assert!(is_l_full(&empty, 7).unwrap());
    }

    #[test]
    fn peel_star_cascades_to_empty() {
        let g = constructions::star(6, 2, 1).unwrap();
        let report = peel(&g, 2, 2).unwrap();
        assert_eq!(report.iterations.len(), 5);
        assert_eq!(report.remaining.edge_count(), 0);
        assert!(is_l_full(&report.remaining, 2).unwrap());
        for it in &report.iterations {
            let lost = it.destroyed_by_order.get(&2).copied().unwrap_or(0);
            assert!(BigUint::from(lost) <= report.per_iteration_bound);
        }
        assert_eq!(report.total_destroyed_geq_k, 5);
    }

    #[test]
    fn peel_leaves_full_graph_alone() {
        let g = UniformHypergraph::complete(4, 3).unwrap();
        let report = peel(&g, 2, 3).unwrap();
        assert!(report.iterations.is_empty());
        assert_eq!(report.remaining.edge_count(), 4);
        let empty = UniformHypergraph::empty(4, 3).unwrap();
        assert!(peel(&empty, 3, 3).unwrap().iterations.is_empty());
    }

    #[test]
    fn peel_edge_conservation() {
        let g = constructions::star(7, 3, 2).unwrap();
        let report = peel(&g, 3, 3).unwrap();
        let removed: usize = report.iterations.iter().map(|i| i.edges_removed).sum();
        assert_eq!(removed + report.remaining.edge_count(), g.edge_count());
        assert!(is_l_full(&report.remaining, 3).unwrap());
    }

    #[test]
    fn profiles() {
        assert_eq!(
            intersection_profile(&constructions::matching(3, 2).unwrap())
                .into_iter()
                .collect::<Vec<_>>(),
            vec![0]
        );
        assert_eq!(
            intersection_profile(&constructions::tight_path(3, 2).unwrap())
                .into_iter()
                .collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(
            intersection_profile(&UniformHypergraph::complete(4, 3).unwrap())
                .into_iter()
                .collect::<Vec<_>>(),
            vec![2]
        );
    }

    #[test]
    fn profile_bound_examples() {
        let m = rw_bound_holds(&constructions::matching(3, 2).unwrap());
        assert_eq!(m.bound, BigUint::from(6u32));
        assert_eq!(m.edge_count, 2);
        assert!(m.holds);

        let k4 = rw_bound_holds(&UniformHypergraph::complete(4, 2).unwrap());
        assert_eq!(m.profile.len(), 1);
        assert_eq!(k4.profile.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(k4.bound, BigUint::from(6u32));
        assert_eq!(k4.edge_count, 6);
        assert!(k4.holds);

        let single = UniformHypergraph::new(3, 3, [VertexSet::of(&[0, 1, 2])]).unwrap();
        let s = rw_bound_holds(&single);
        assert!(s.profile.is_empty());
        assert_eq!(s.bound, BigUint::from(1u32));
        assert!(s.holds);
    }

    #[test]
    fn degenerate_pattern_found_in_full_host() {
        // A 2-edge tight path is edge-degenerate on 4 vertices; a host in
        // which every pair has degree 4 must contain it.
        let q = constructions::tight_path(3, 2).unwrap();
        assert!(edge_degenerate_ordering(&q).unwrap().is_some());
        let host = UniformHypergraph::complete(6, 3).unwrap();
        assert!(is_l_full(&host, 4).unwrap());
        let out = contains_uniform(&host, &q, &Budget::unlimited()).unwrap();
        assert!(matches!(out, SearchOutcome::Found(_)));
    }
}
