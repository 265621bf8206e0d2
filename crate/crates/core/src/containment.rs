//! Containment predicates: complex-in-complex embedding, Berge copies, and
//! membership in the forbidden family of a pattern.
//!
//! All searches are complete up to the supplied [`Budget`]: an answer of
//! `Absent` means the whole space was exhausted, and `BudgetExhausted` is a
//! distinct third outcome rather than a disguised "no".

use crate::canonical::DEFAULT_CANON_LIMIT;
use crate::complex::Complex;
use crate::error::Error;
use crate::hypergraph::UniformHypergraph;
use crate::set::VertexSet;
use crate::{Budget, SearchOutcome};

/// Injective vertex map witnessing that a pattern complex sits inside a host:
/// `map[v]` is the host image of pattern vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-verify the witness from scratch: injectivity, range, and every
    /// maximal pattern edge landing on a host edge.
    pub fn verify(&self, host: &Complex, pattern: &Complex) -> Result<(), Error> {
        if self.map.len() != pattern.n() {
            return Err(Error::BadWitness(format!(
                "embedding maps {} vertices, pattern has {}",
                self.map.len(),
                pattern.n()
            )));
        }
        let mut seen = VertexSet::EMPTY;
        for &u in &self.map {
            if u >= host.n() {
                return Err(Error::BadWitness(format!(
                    "image vertex {u} outside host ground set [{}]",
                    host.n()
                )));
            }
            if seen.contains(u) {
                return Err(Error::BadWitness(format!("image vertex {u} repeated")));
            }
            seen = seen.insert(u);
        }
        for g in pattern.generating_set().maximal() {
            let image = g.relabel(&self.map);
            if !host.is_edge(image) {
                return Err(Error::BadWitness(format!(
                    "pattern edge {g} maps to {image}, not a host edge"
                )));
            }
        }
        Ok(())
    }
}

fn reject_isolated(pattern: &Complex) -> Result<(), Error> {
    if let Some(g) = pattern
        .generating_set()
        .maximal()
        .iter()
        .find(|g| g.len() < 2)
    {
        return Err(Error::InvalidParameter(format!(
            "pattern has isolated vertex {g}; containment patterns must cover \
             every vertex by an edge of size >= 2"
        )));
    }
    Ok(())
}

/// Search for an embedding of `pattern` into `host`.
///
/// Pattern vertices are assigned in decreasing generator-degree order;
/// partial images of generators are required to be host edges at every step
/// (sound because hosts are downward closed), and 2-layer degrees give a
/// cheap per-vertex candidate filter.
pub fn contains_complex(
    host: &Complex,
    pattern: &Complex,
    budget: &Budget,
) -> Result<SearchOutcome<Embedding>, Error> {
    if pattern.n() > DEFAULT_CANON_LIMIT {
        return Err(Error::TooLarge(format!(
            "pattern on {} vertices; embedding search is limited to {}",
            pattern.n(),
            DEFAULT_CANON_LIMIT
        )));
    }
    reject_isolated(pattern)?;
    if pattern.n() > host.n() {
        return Ok(SearchOutcome::Absent);
    }

    let gens: Vec<VertexSet> = pattern.generating_set().maximal().to_vec();
    let mut order: Vec<usize> = (0..pattern.n()).collect();
    let degree = |v: usize| gens.iter().filter(|g| g.contains(v)).count();
    order.sort_by_key(|v| (usize::MAX - degree(*v), *v));

    // For the step assigning v, precompute the generators containing v
    // together with the mask of pattern vertices already placed by then.
    let checks: Vec<Vec<VertexSet>> = order
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let placed = VertexSet::from_vertices(order[..=i].iter().copied()).unwrap();
            gens.iter()
                .filter(|g| g.contains(*v))
                .map(|g| g.intersection(placed))
                .collect()
        })
        .collect();

    let pat_deg2 = two_layer_degrees(pattern);
    let host_deg2 = two_layer_degrees(host);

    let mut state = EmbedState {
        host,
        order: &order,
        checks: &checks,
        pat_deg2: &pat_deg2,
        host_deg2: &host_deg2,
        image: vec![0usize; pattern.n()],
        used: VertexSet::EMPTY,
        nodes: 0,
        budget,
    };
    match state.dfs(0) {
        Dfs::Found => Ok(SearchOutcome::Found(Embedding { map: state.image })),
        Dfs::NotFound => Ok(SearchOutcome::Absent),
        Dfs::Out => Ok(SearchOutcome::BudgetExhausted),
    }
}

fn two_layer_degrees(c: &Complex) -> Vec<usize> {
    c.two_layer_adjacency().iter().map(|a| a.len()).collect()
}

enum Dfs {
    Found,
    NotFound,
    Out,
}

struct EmbedState<'a> {
    host: &'a Complex,
    order: &'a [usize],
    checks: &'a [Vec<VertexSet>],
    pat_deg2: &'a [usize],
    host_deg2: &'a [usize],
    image: Vec<usize>,
    used: VertexSet,
    nodes: u64,
    budget: &'a Budget,
}

impl EmbedState<'_> {
    fn dfs(&mut self, step: usize) -> Dfs {
        if step == self.order.len() {
            return Dfs::Found;
        }
        let v = self.order[step];
        'targets: for target in 0..self.host.n() {
            if self.used.contains(target) {
                continue;
            }
            self.nodes += 1;
            if self.budget.exhausted(self.nodes) {
                return Dfs::Out;
            }
            if self.host_deg2[target] < self.pat_deg2[v] {
                continue;
            }
            self.image[v] = target;
            for check in &self.checks[step] {
                // Image of the already-placed part of a generator through v.
                let mapped = VertexSet::from_vertices(
                    check.iter().map(|w| {
                        if w == v {
                            target
                        } else {
                            self.image[w]
                        }
                    }),
                )
                .unwrap();
                if !self.host.is_edge(mapped) {
                    continue 'targets;
                }
            }
            self.used = self.used.insert(target);
            match self.dfs(step + 1) {
                Dfs::NotFound => {}
                other => return other,
            }
            self.used = self.used.remove(target);
        }
        Dfs::NotFound
    }
}

/// Whether the edge list `big` is a Berge copy of `pattern` under the
/// *identity* vertex labeling: a bijection `f` between the edge sets with
/// `e ⊆ f(e)` for every pattern edge. Edge-count mismatch is a plain `false`.
pub fn is_berge_copy(big: &[VertexSet], pattern: &UniformHypergraph) -> Result<bool, Error> {
    if pattern.edge_count() > 8 {
        return Err(Error::TooLarge(
            "Berge matching check is limited to 8 pattern edges".into(),
        ));
    }
    for (i, e) in big.iter().enumerate() {
        if big[..i].contains(e) {
            return Err(Error::DuplicateEdge {
                edge: format!("{e}"),
            });
        }
    }
    if big.len() != pattern.edge_count() {
        return Ok(false);
    }
    // Bipartite matching pattern-edge -> big-edge along the subset relation.
    let m = big.len();
    let adj: Vec<Vec<usize>> = pattern
        .edges()
        .iter()
        .map(|e| {
            (0..m)
                .filter(|j| e.is_subset_of(big[*j]))
                .collect()
        })
        .collect();
    let mut matched: Vec<Option<usize>> = vec![None; m];
    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        matched: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for &j in &adj[i] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if matched[j].is_none()
                || augment(matched[j].unwrap(), adj, matched, visited)
            {
                matched[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..m {
        let mut visited = vec![false; m];
        if !augment(i, &adj, &mut matched, &mut visited) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Berge containment via the closure route: the host contains a Berge copy
/// of `pattern` exactly when it contains the downward closure of `pattern`
/// as a complex.
pub fn berge_contains(
    host: &Complex,
    pattern: &UniformHypergraph,
    budget: &Budget,
) -> Result<SearchOutcome<Embedding>, Error> {
    let closed = Complex::downward_closure(pattern.n(), pattern.edges().iter().copied())?;
    contains_complex(host, &closed, budget)
}

/// Berge containment by direct search: pick pairwise distinct host edges
/// `f(e)` and an injective vertex map `ψ` with `ψ(e) ⊆ f(e)` for every
/// pattern edge. Exists for cross-validation of [`berge_contains`]; the two
/// always agree.
pub fn berge_contains_direct(
    host: &Complex,
    pattern: &UniformHypergraph,
    budget: &Budget,
) -> Result<SearchOutcome<()>, Error> {
    if pattern.n() > DEFAULT_CANON_LIMIT {
        return Err(Error::TooLarge(format!(
            "pattern on {} vertices; Berge search is limited to {}",
            pattern.n(),
            DEFAULT_CANON_LIMIT
        )));
    }
    let support: VertexSet = pattern
        .edges()
        .iter()
        .fold(VertexSet::EMPTY, |a, e| a.union(*e));
    if support.len() != pattern.n() {
        return Err(Error::InvalidParameter(
            "Berge pattern must cover every vertex by an edge".into(),
        ));
    }
    let host_edges: Vec<VertexSet> = match host.edges() {
        Some(es) => es
            .iter()
            .copied()
            .filter(|e| e.len() >= pattern.k())
            .collect(),
        None => {
            return Err(Error::TooLarge(
                "direct Berge search needs a materialized host".into(),
            ))
        }
    };
    let mut state = BergeState {
        host_edges: &host_edges,
        pattern_edges: pattern.edges(),
        image: vec![usize::MAX; pattern.n()],
        used_vertices: VertexSet::EMPTY,
        used_edges: vec![false; host_edges.len()],
        nodes: 0,
        budget,
    };
    match state.dfs(0) {
        Dfs::Found => Ok(SearchOutcome::Found(())),
        Dfs::NotFound => Ok(SearchOutcome::Absent),
        Dfs::Out => Ok(SearchOutcome::BudgetExhausted),
    }
}

struct BergeState<'a> {
    host_edges: &'a [VertexSet],
    pattern_edges: &'a [VertexSet],
    image: Vec<usize>,
    used_vertices: VertexSet,
    used_edges: Vec<bool>,
    nodes: u64,
    budget: &'a Budget,
}

impl BergeState<'_> {
    fn dfs(&mut self, edge_idx: usize) -> Dfs {
        if edge_idx == self.pattern_edges.len() {
            return Dfs::Found;
        }
        let e = self.pattern_edges[edge_idx];
        for j in 0..self.host_edges.len() {
            if self.used_edges[j] {
                continue;
            }
            self.nodes += 1;
            if self.budget.exhausted(self.nodes) {
                return Dfs::Out;
            }
            let target = self.host_edges[j];
            // Already-placed vertices of e must sit inside the target edge.
            let placed: Vec<usize> =
                e.iter().filter(|v| self.image[*v] != usize::MAX).collect();
            if placed.iter().any(|v| !target.contains(self.image[*v])) {
                continue;
            }
            let free: Vec<usize> =
                e.iter().filter(|v| self.image[*v] == usize::MAX).collect();
            let room = target.difference(self.used_vertices);
            if room.len() < free.len() {
                continue;
            }
            self.used_edges[j] = true;
            let out = self.assign_free(&free, 0, room, edge_idx);
            self.used_edges[j] = false;
            match out {
                Dfs::NotFound => {}
                other => return other,
            }
        }
        Dfs::NotFound
    }

    // Place the not-yet-mapped vertices of the current pattern edge into the
    // unused part of its chosen host edge, then move on to the next edge.
    fn assign_free(
        &mut self,
        free: &[usize],
        i: usize,
        room: VertexSet,
        edge_idx: usize,
    ) -> Dfs {
        if i == free.len() {
            return self.dfs(edge_idx + 1);
        }
        for u in room.iter() {
            self.image[free[i]] = u;
            self.used_vertices = self.used_vertices.insert(u);
            let out = self.assign_free(free, i + 1, room.remove(u), edge_idx);
            self.used_vertices = self.used_vertices.remove(u);
            self.image[free[i]] = usize::MAX;
            match out {
                Dfs::NotFound => {}
                other => return other,
            }
        }
        Dfs::NotFound
    }
}

/// Sub-hypergraph containment between uniform hypergraphs: an injective
/// vertex map sending every pattern edge to a host edge. Not induced —
/// extra host edges are fine. Isolated pattern vertices are allowed here
/// (they only consume distinct images).
pub fn contains_uniform(
    host: &UniformHypergraph,
    pattern: &UniformHypergraph,
    budget: &Budget,
) -> Result<SearchOutcome<Embedding>, Error> {
    if pattern.n() > DEFAULT_CANON_LIMIT {
        return Err(Error::TooLarge(format!(
            "pattern on {} vertices; embedding search is limited to {}",
            pattern.n(),
            DEFAULT_CANON_LIMIT
        )));
    }
    if pattern.n() > host.n() {
        return Ok(SearchOutcome::Absent);
    }
    if pattern.edge_count() > 0 && pattern.k() != host.k() {
        return Ok(SearchOutcome::Absent);
    }
    let mut order: Vec<usize> = (0..pattern.n()).collect();
    let pat_degrees = pattern.degrees();
    order.sort_by_key(|v| (usize::MAX - pat_degrees[*v], *v));
    let mut pos = vec![0usize; pattern.n()];
    for (i, v) in order.iter().enumerate() {
        pos[*v] = i;
    }
    // Edges are checked at the step where their last vertex gets an image.
    let mut due: Vec<Vec<VertexSet>> = vec![Vec::new(); pattern.n()];
    for e in pattern.edges() {
        let last = e.iter().max_by_key(|v| pos[*v]).unwrap();
        due[pos[last]].push(*e);
    }
    let host_degrees = host.degrees();

    struct State<'a> {
        host: &'a UniformHypergraph,
        order: &'a [usize],
        due: &'a [Vec<VertexSet>],
        pat_degrees: &'a [usize],
        host_degrees: &'a [usize],
        image: Vec<usize>,
        used: VertexSet,
        nodes: u64,
        budget: &'a Budget,
    }
    impl State<'_> {
        fn dfs(&mut self, step: usize) -> Dfs {
            if step == self.order.len() {
                return Dfs::Found;
            }
            let v = self.order[step];
            'targets: for target in 0..self.host.n() {
                if self.used.contains(target) {
                    continue;
                }
                self.nodes += 1;
                if self.budget.exhausted(self.nodes) {
                    return Dfs::Out;
                }
                if self.host_degrees[target] < self.pat_degrees[v] {
                    continue;
                }
                self.image[v] = target;
                for e in &self.due[step] {
                    let mapped = e.relabel(&self.image);
                    if !self.host.contains_edge(mapped) {
                        continue 'targets;
                    }
                }
                self.used = self.used.insert(target);
                match self.dfs(step + 1) {
                    Dfs::NotFound => {}
                    other => return other,
                }
                self.used = self.used.remove(target);
            }
            Dfs::NotFound
        }
    }

    let mut state = State {
        host,
        order: &order,
        due: &due,
        pat_degrees: &pat_degrees,
        host_degrees: &host_degrees,
        image: vec![0usize; pattern.n()],
        used: VertexSet::EMPTY,
        nodes: 0,
        budget,
    };
    match state.dfs(0) {
        Dfs::Found => Ok(SearchOutcome::Found(Embedding { map: state.image })),
        Dfs::NotFound => Ok(SearchOutcome::Absent),
        Dfs::Out => Ok(SearchOutcome::BudgetExhausted),
    }
}

/// Membership of a `k`-uniform hypergraph in the forbidden family of a
/// pattern complex: the closure of `g` contains the pattern. The pattern's
/// dimension must match the uniformity (`k = dim + 1`).
pub fn in_forbidden_family(
    g: &UniformHypergraph,
    pattern: &Complex,
    budget: &Budget,
) -> Result<SearchOutcome<Embedding>, Error> {
    if g.k() != pattern.dimension() + 1 {
        return Err(Error::InvalidParameter(format!(
            "uniformity {} does not match pattern dimension {} + 1",
            g.k(),
            pattern.dimension()
        )));
    }
    let closed = Complex::downward_closure(g.n(), g.edges().iter().copied())?;
    contains_complex(&closed, pattern, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn closure_of(g: &UniformHypergraph) -> Complex {
        Complex::downward_closure(g.n(), g.edges().iter().copied()).unwrap()
    }

    #[test]
    fn case_iv_in_full_simplex() {
        let host = closure_of(&UniformHypergraph::complete(4, 3).unwrap());
        let pattern = constructions::case_iv(3).unwrap();
        let out = contains_complex(&host, &pattern, &Budget::unlimited()).unwrap();
        match out {
            SearchOutcome::Found(emb) => emb.verify(&host, &pattern).unwrap(),
            other => panic!("expected embedding, got {other:?}"),
        }
    }

    #[test]
    fn no_triple_in_a_graph_host() {
        let host = closure_of(&UniformHypergraph::complete(5, 2).unwrap());
        let pattern =
            Complex::downward_closure(3, [VertexSet::of(&[0, 1, 2])]).unwrap();
        let out = contains_complex(&host, &pattern, &Budget::unlimited()).unwrap();
        assert!(out.is_absent());
    }

    #[test]
    fn matching_in_linear_cycle() {
        let host = closure_of(&constructions::linear_cycle(3, 4).unwrap());
        let pattern = closure_of(&constructions::matching(3, 2).unwrap());
        let out = contains_complex(&host, &pattern, &Budget::unlimited()).unwrap();
        assert!(out.is_found());
    }

    #[test]
    fn isolated_pattern_vertices_rejected() {
        let host = closure_of(&UniformHypergraph::complete(4, 2).unwrap());
        let pattern = Complex::downward_closure(3, [VertexSet::of(&[0, 1])]).unwrap();
        assert!(matches!(
            contains_complex(&host, &pattern, &Budget::unlimited()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let host = closure_of(&UniformHypergraph::complete(8, 3).unwrap());
        let pattern = closure_of(&constructions::matching(3, 2).unwrap());
        let out = contains_complex(&host, &pattern, &Budget::nodes(2)).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn berge_copy_identity_and_enlargement() {
        let p2 = UniformHypergraph::new(
            3,
            2,
            [VertexSet::of(&[0, 1]), VertexSet::of(&[1, 2])],
        )
        .unwrap();
        assert!(is_berge_copy(p2.edges(), &p2).unwrap());
        let big = [VertexSet::of(&[0, 1, 3]), VertexSet::of(&[1, 2])];
        assert!(is_berge_copy(&big, &p2).unwrap());

        let m22 = constructions::matching(2, 2).unwrap();
        let small = [VertexSet::of(&[0, 1]), VertexSet::of(&[0, 2])];
        assert!(!is_berge_copy(&small, &m22).unwrap());
        // Edge-count mismatch is false, not an error.
        assert!(!is_berge_copy(&[VertexSet::of(&[0, 1])], &m22).unwrap());
    }

    #[test]
    fn berge_routes_agree_on_fixed_cases() {
        let budget = Budget::unlimited();
        let cases: Vec<(Complex, UniformHypergraph, bool)> = vec![
            (
                closure_of(&constructions::matching(3, 2).unwrap()),
                constructions::matching(2, 2).unwrap(),
                true,
            ),
            (
                closure_of(&UniformHypergraph::complete(4, 2).unwrap()),
                UniformHypergraph::complete(3, 2).unwrap(),
                true,
            ),
            (
                Complex::downward_closure(2, [VertexSet::of(&[0, 1])]).unwrap(),
                UniformHypergraph::new(
                    3,
                    2,
                    [VertexSet::of(&[0, 1]), VertexSet::of(&[1, 2])],
                )
                .unwrap(),
                false,
            ),
        ];
        for (host, pattern, expect) in &cases {
            let via_closure = berge_contains(host, pattern, &budget)
                .unwrap()
                .decided()
                .unwrap();
            let direct = berge_contains_direct(host, pattern, &budget)
                .unwrap()
                .decided()
                .unwrap();
            assert_eq!(via_closure, *expect);
            assert_eq!(direct, *expect);
        }
    }

    #[test]
    fn forbidden_family_membership() {
        let pattern = closure_of(&constructions::matching(3, 2).unwrap());
        let budget = Budget::unlimited();
        let cycle = constructions::linear_cycle(3, 4).unwrap();
        assert!(in_forbidden_family(&cycle, &pattern, &budget)
            .unwrap()
            .is_found());
        let matching = constructions::matching(3, 2).unwrap();
        assert!(in_forbidden_family(&matching, &pattern, &budget)
            .unwrap()
            .is_found());
        let single = UniformHypergraph::new(3, 3, [VertexSet::of(&[0, 1, 2])]).unwrap();
        assert!(in_forbidden_family(&single, &pattern, &budget)
            .unwrap()
            .is_absent());
        // Dimension mismatch is an error, not a false.
        let graph = UniformHypergraph::complete(4, 2).unwrap();
        assert!(in_forbidden_family(&graph, &pattern, &budget).is_err());
    }
}
