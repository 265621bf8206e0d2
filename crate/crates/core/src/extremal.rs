//! Exact extremal searches at desk scale: maximum edge count of a
//! pattern-free complex, maximum clique counts over forbidden-free uniform
//! hypergraphs, and maximum copy counts, all with re-verifiable witnesses.
//!
//! Determinism contract: for a fixed instance and node budget, the optimum,
//! the witness, and the explored-node count are identical across runs and
//! across worker-thread counts. Parallel work is therefore organized in
//! fixed waves — chunks of the mask space, or batches of subtree tasks —
//! merged in a fixed order, with the incumbent advanced only at wave
//! boundaries. Wall-clock deadlines are the one nondeterministic cut-off;
//! node budgets are checked at wave boundaries only.

use crate::canonical::{canonical_form_complex, canonical_form_uniform, DEFAULT_CANON_LIMIT};
use crate::cliques::{count_cliques, count_copies};
use crate::complex::Complex;
use crate::containment::{contains_complex, contains_uniform};
use crate::error::Error;
use crate::formulas::CountMode;
use crate::hypergraph::UniformHypergraph;
use crate::set::VertexSet;
use crate::{Budget, SearchOutcome};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{HashMap, HashSet};
use std::time::Instant;

/// Exhaustive mask scans handle at most this many candidate edges.
pub const EXHAUSTIVE_MAX_EDGES: usize = 21;
/// Mask-based branch-and-bound handles at most one machine word of edges.
const MASK_BNB_MAX_EDGES: usize = 64;
/// Number of leading decisions used to split a branch-and-bound tree into
/// parallel tasks.
const SPLIT_DECISIONS: usize = 12;
/// Subtree tasks per scheduling wave (fixed: part of the determinism
/// contract, never derived from the thread count).
const TASK_WAVE: usize = 16;
/// Masks per exhaustive chunk.
const CHUNK_MASKS: u64 = 1 << 16;
/// Chunks per scheduling wave.
const CHUNK_WAVE: usize = 64;

/// A fully described search instance.
#[derive(Debug, Clone)]
pub enum Instance {
    /// Maximize total edge count (empty set and singletons included) over
    /// `pattern`-free complexes on `n` vertices.
    MaxEdges { n: usize, pattern: Complex },
    /// Maximize the clique census total over `k`-uniform hypergraphs on `n`
    /// vertices containing no member of `forbidden` as a sub-copy.
    MaxCliques {
        n: usize,
        k: usize,
        forbidden: Vec<UniformHypergraph>,
        mode: CountMode,
    },
    /// Maximize the number of sub-copies of `target` over `forbidden`-free
    /// `k`-uniform hypergraphs.
    MaxCopies {
        n: usize,
        k: usize,
        target: UniformHypergraph,
        forbidden: UniformHypergraph,
    },
}

impl Instance {
    /// Stable identity of the instance: canonical forms of the patterns,
    /// the ground-set size, and the mode, hashed together. Relabeling a
    /// pattern does not change the key.
    pub fn key(&self) -> Result<String, Error> {
        let mut h = Sha256::new();
        match self {
            Instance::MaxEdges { n, pattern } => {
                h.update(b"max-edges");
                h.update((*n as u64).to_le_bytes());
                h.update(complex_id(pattern)?);
            }
            Instance::MaxCliques {
                n,
                k,
                forbidden,
                mode,
            } => {
                h.update(b"max-cliques");
                h.update((*n as u64).to_le_bytes());
                h.update((*k as u64).to_le_bytes());
                h.update(match mode {
                    CountMode::All => [0u8],
                    CountMode::GeqK => [1u8],
                });
                // Forbidden lists are unordered; hash a sorted digest list.
                let mut ids: Vec<Vec<u8>> = forbidden
                    .iter()
                    .map(uniform_id)
                    .collect::<Result<_, _>>()?;
                ids.sort();
                for id in ids {
                    h.update(id);
                }
            }
            Instance::MaxCopies {
                n,
                k,
                target,
                forbidden,
            } => {
                h.update(b"max-copies");
                h.update((*n as u64).to_le_bytes());
                h.update((*k as u64).to_le_bytes());
                h.update(uniform_id(target)?);
                h.update(uniform_id(forbidden)?);
            }
        }
        let digest = h.finalize();
        Ok(digest.iter().take(16).map(|b| format!("{b:02x}")).collect())
    }
}

fn uniform_id(g: &UniformHypergraph) -> Result<Vec<u8>, Error> {
    if g.n() <= DEFAULT_CANON_LIMIT {
        Ok(canonical_form_uniform(g)?.digest().into_bytes())
    } else {
        let mut h = Sha256::new();
        h.update(format!("{g}"));
        Ok(h.finalize().to_vec())
    }
}

fn complex_id(c: &Complex) -> Result<Vec<u8>, Error> {
    if c.n() <= DEFAULT_CANON_LIMIT {
        Ok(canonical_form_complex(c)?.digest().into_bytes())
    } else {
        let mut h = Sha256::new();
        h.update(format!("{c}"));
        Ok(h.finalize().to_vec())
    }
}

/// The extremal object found by a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    Complex(crate::complex::GeneratingSet),
    Uniform(UniformHypergraph),
}

impl Witness {
    /// Canonical-form digest of the witness, for cross-run comparison.
    pub fn canonical_digest(&self) -> Result<String, Error> {
        match self {
            Witness::Complex(gens) => {
                let c = Complex::from_generating_set(gens.clone());
                Ok(canonical_form_complex(&c)?.digest())
            }
            Witness::Uniform(g) => Ok(canonical_form_uniform(g)?.digest()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    /// The whole space was covered; `optimum` is the true maximum.
    Exact,
    /// The budget ran out; `optimum` is only a lower bound.
    LowerBoundOnly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub instance_key: String,
    pub optimum: u64,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub wall_seconds: f64,
    pub status: SearchStatus,
}

/// Maximum total edge count of a `pattern`-free complex on `n` vertices.
pub fn max_edges_pattern_free(
    n: usize,
    pattern: &Complex,
    budget: &Budget,
    threads: usize,
) -> Result<SearchResult, Error> {
    solve(
        &Instance::MaxEdges {
            n,
            pattern: pattern.clone(),
        },
        budget,
        threads,
    )
}

/// Maximum clique census total over forbidden-free `k`-uniform hypergraphs.
pub fn max_cliques_forbidden(
    n: usize,
    k: usize,
    forbidden: &[UniformHypergraph],
    mode: CountMode,
    budget: &Budget,
    threads: usize,
) -> Result<SearchResult, Error> {
    solve(
        &Instance::MaxCliques {
            n,
            k,
            forbidden: forbidden.to_vec(),
            mode,
        },
        budget,
        threads,
    )
}

/// Maximum number of sub-copies of `target` over `forbidden`-free hosts.
pub fn max_copies(
    n: usize,
    k: usize,
    target: &UniformHypergraph,
    forbidden: &UniformHypergraph,
    budget: &Budget,
    threads: usize,
) -> Result<SearchResult, Error> {
    solve(
        &Instance::MaxCopies {
            n,
            k,
            target: target.clone(),
            forbidden: forbidden.clone(),
        },
        budget,
        threads,
    )
}

/// Solve any instance. `threads = 0` uses the global thread pool.
pub fn solve(instance: &Instance, budget: &Budget, threads: usize) -> Result<SearchResult, Error> {
    let start = Instant::now();
    let key = instance.key()?;
    let (optimum, witness, nodes, exact) = match instance {
        Instance::MaxEdges { n, pattern } => {
            let out = edge_bnb(*n, pattern, budget, threads)?;
            (
                out.0,
                Witness::Complex(
                    Complex::downward_closure(*n, out.1.into_iter())?
                        .generating_set()
                        .clone(),
                ),
                out.2,
                out.3,
            )
        }
        Instance::MaxCliques {
            n,
            k,
            forbidden,
            mode,
        } => {
            let tables = MaskTables::for_cliques(*n, *k, forbidden, *mode)?;
            let out = tables.maximize(budget, threads)?;
            (
                out.0,
                Witness::Uniform(tables.hypergraph_of(out.1)?),
                out.2,
                out.3,
            )
        }
        Instance::MaxCopies {
            n,
            k,
            target,
            forbidden,
        } => {
            let tables =
                MaskTables::for_copies(*n, *k, target, std::slice::from_ref(forbidden))?;
            let out = tables.maximize(budget, threads)?;
            (
                out.0,
                Witness::Uniform(tables.hypergraph_of(out.1)?),
                out.2,
                out.3,
            )
        }
    };
    Ok(SearchResult {
        instance_key: key,
        optimum,
        witness,
        nodes_explored: nodes,
        wall_seconds: start.elapsed().as_secs_f64(),
        status: if exact {
            SearchStatus::Exact
        } else {
            SearchStatus::LowerBoundOnly
        },
    })
}

/// Recompute freeness and the objective of a result's witness from scratch,
/// through the containment and clique modules rather than the search code.
pub fn verify_witness(result: &SearchResult, instance: &Instance) -> Result<bool, Error> {
    if result.instance_key != instance.key()? {
        return Ok(false);
    }
    let unlimited = Budget::unlimited();
    match (instance, &result.witness) {
        (Instance::MaxEdges { n, pattern }, Witness::Complex(gens)) => {
            let complex = Complex::from_generating_set(gens.clone());
            if complex.n() != *n {
                return Ok(false);
            }
            if contains_complex(&complex, pattern, &unlimited)?.is_found() {
                return Ok(false);
            }
            Ok(complex.total_edges()? == result.optimum)
        }
        (
            Instance::MaxCliques {
                n,
                k,
                forbidden,
                mode,
            },
            Witness::Uniform(g),
        ) => {
            if g.n() != *n || g.k() != *k {
                return Ok(false);
            }
            for f in forbidden {
                if contains_uniform(g, f, &unlimited)?.is_found() {
                    return Ok(false);
                }
            }
            let census = count_cliques(&closure_of(g)?, *k)?;
            let total = match mode {
                CountMode::All => census.total_all,
                CountMode::GeqK => census.total_geq_k,
            };
            Ok(total == result.optimum)
        }
        (
            Instance::MaxCopies {
                n,
                k,
                target,
                forbidden,
            },
            Witness::Uniform(g),
        ) => {
            if g.n() != *n || g.k() != *k {
                return Ok(false);
            }
            if contains_uniform(g, forbidden, &unlimited)?.is_found() {
                return Ok(false);
            }
            let copies = count_copies(&closure_of(g)?, &closure_of(target)?)?;
            Ok(copies == result.optimum)
        }
        _ => Ok(false),
    }
}

fn closure_of(g: &UniformHypergraph) -> Result<Complex, Error> {
    Complex::downward_closure(g.n(), g.edges().iter().copied())
}

fn thread_pool(threads: usize) -> Result<Option<rayon::ThreadPool>, Error> {
    if threads == 0 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

fn run_in_pool<T: Send>(
    pool: &Option<rayon::ThreadPool>,
    f: impl FnOnce() -> T + Send,
) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

// ---------------------------------------------------------------------------
// Mask problems: uniform hypergraphs as bitmasks over the C(n, k) edge slots.

enum MaskObjective {
    Cliques {
        mode: CountMode,
        n: u64,
        /// Masks of the k-subsets of each vertex set of order >= k; a clique
        /// needs them all.
        need: Vec<u64>,
        /// For each vertex set of order 2..k: mask of the edges containing
        /// it; such a set is a clique when any one is present.
        sup: Vec<u64>,
    },
    Copies {
        /// One mask per sub-copy of the target (a copy counts when all its
        /// edges are present). Repeats encode targets with isolated
        /// vertices, one entry per vertex placement.
        copies: Vec<u64>,
    },
}

struct MaskTables {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
    /// A mask is forbidden when it covers any of these.
    forbidden_copies: Vec<u64>,
    objective: MaskObjective,
}

impl MaskTables {
    fn candidate_edges(n: usize, k: usize) -> Result<Vec<VertexSet>, Error> {
        if k < 2 || k > n {
            return Err(Error::InvalidParameter(
                "uniform search needs 2 <= k <= n".into(),
            ));
        }
        Ok(VertexSet::full(n).subsets_of_size(k))
    }

    fn for_cliques(
        n: usize,
        k: usize,
        forbidden: &[UniformHypergraph],
        mode: CountMode,
    ) -> Result<MaskTables, Error> {
        let edges = Self::candidate_edges(n, k)?;
        if edges.len() > MASK_BNB_MAX_EDGES {
            return Err(Error::TooLarge(format!(
                "C({n},{k}) = {} candidate edges; the clique search handles \
                 at most {MASK_BNB_MAX_EDGES}",
                edges.len()
            )));
        }
        let index = edge_index(&edges);
        let mut need = Vec::new();
        let mut sup = Vec::new();
        for t in all_vertex_sets(n) {
            let order = t.len();
            if order < 2 {
                continue;
            }
            if order < k {
                let mut m = 0u64;
                for (i, e) in edges.iter().enumerate() {
                    if t.is_subset_of(*e) {
                        m |= 1 << i;
                    }
                }
                sup.push(m);
            } else {
                let mut m = 0u64;
                for sub in t.subsets_of_size(k) {
                    m |= 1 << index[&sub];
                }
                need.push(m);
            }
        }
        let forbidden_copies = forbidden_masks(n, forbidden, &index)?;
        Ok(MaskTables {
            n,
            k,
            edges,
            forbidden_copies,
            objective: MaskObjective::Cliques {
                mode,
                n: n as u64,
                need,
                sup,
            },
        })
    }

    fn for_copies(
        n: usize,
        k: usize,
        target: &UniformHypergraph,
        forbidden: &[UniformHypergraph],
    ) -> Result<MaskTables, Error> {
        let edges = Self::candidate_edges(n, k)?;
        if edges.len() > MASK_BNB_MAX_EDGES {
            return Err(Error::TooLarge(format!(
                "C({n},{k}) = {} candidate edges; the copy search handles \
                 at most {MASK_BNB_MAX_EDGES}",
                edges.len()
            )));
        }
        if target.k() != k {
            return Err(Error::InvalidParameter(
                "target uniformity must match the search uniformity".into(),
            ));
        }
        let index = edge_index(&edges);
        let copies = subcopies(n, target, &index)?
            .into_iter()
            .map(|(mask, _)| mask)
            .collect();
        let forbidden_copies = forbidden_masks(n, forbidden, &index)?;
        Ok(MaskTables {
            n,
            k,
            edges,
            forbidden_copies,
            objective: MaskObjective::Copies { copies },
        })
    }

    fn is_free(&self, mask: u64) -> bool {
        self.forbidden_copies.iter().all(|c| mask & c != *c)
    }

    fn eval(&self, mask: u64) -> u64 {
        match &self.objective {
            MaskObjective::Cliques { mode, n, need, sup } => {
                let mut total = need.iter().filter(|m| mask & **m == **m).count() as u64;
                if *mode == CountMode::All {
                    total += n;
                    total += sup.iter().filter(|m| mask & **m != 0).count() as u64;
                }
                total
            }
            MaskObjective::Copies { copies } => {
                copies.iter().filter(|c| mask & **c == **c).count() as u64
            }
        }
    }

    fn hypergraph_of(&self, mask: u64) -> Result<UniformHypergraph, Error> {
        let chosen = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e);
        UniformHypergraph::new(self.n, self.k, chosen)
    }

    /// (optimum, best mask, nodes, exact?): exhaustive scan when every mask
    /// fits the budgeted slot count, branch-and-bound otherwise.
    fn maximize(
        &self,
        budget: &Budget,
        threads: usize,
    ) -> Result<(u64, u64, u64, bool), Error> {
        if self.edges.len() <= EXHAUSTIVE_MAX_EDGES {
            self.maximize_exhaustive(budget, threads)
        } else {
            self.maximize_bnb(budget)
        }
    }

    /// Deterministic chunked scan of all masks.
    fn maximize_exhaustive(
        &self,
        budget: &Budget,
        threads: usize,
    ) -> Result<(u64, u64, u64, bool), Error> {
        let m = self.edges.len();
        let total: u64 = 1 << m;
        let chunks = total.div_ceil(CHUNK_MASKS);
        let pool = thread_pool(threads)?;
        let mut best: Option<(u64, u64)> = None;
        let mut nodes = 0u64;
        let mut exact = true;
        let mut next = 0u64;
        while next < chunks {
            if budget.exhausted(nodes.max(1)) {
                exact = false;
                break;
            }
            let wave_end = (next + CHUNK_WAVE as u64).min(chunks);
            let results: Vec<(Option<(u64, u64)>, u64)> = run_in_pool(&pool, || {
                use rayon::prelude::*;
                (next..wave_end)
                    .into_par_iter()
                    .map(|ci| self.scan_chunk(ci))
                    .collect()
            });
            for (chunk_best, chunk_nodes) in results {
                nodes += chunk_nodes;
                if let Some((value, mask)) = chunk_best {
                    if best.map_or(true, |(bv, _)| value > bv) {
                        best = Some((value, mask));
                    }
                }
            }
            next = wave_end;
        }
        // The empty mask is always scanned first (chunk 0), so a best always
        // exists once any chunk ran; guard anyway for a zero budget.
        let (value, mask) = best.unwrap_or((self.eval(0), 0));
        Ok((value, mask, nodes, exact))
    }

    fn scan_chunk(&self, chunk: u64) -> (Option<(u64, u64)>, u64) {
        let lo = chunk * CHUNK_MASKS;
        let hi = (lo + CHUNK_MASKS).min(1u64 << self.edges.len());
        let mut best: Option<(u64, u64)> = None;
        for mask in lo..hi {
            if !self.is_free(mask) {
                continue;
            }
            let value = self.eval(mask);
            if best.map_or(true, |(bv, _)| value > bv) {
                best = Some((value, mask));
            }
        }
        (best, hi - lo)
    }

    /// Sequential include/exclude branch-and-bound over the edge slots.
    /// The objective only grows under added edges, so evaluating the mask
    /// with every undecided slot switched on is a valid upper bound. A
    /// nonempty free hypergraph can always be relabeled to contain the
    /// lexicographically first edge, which roots the tree.
    fn maximize_bnb(&self, budget: &Budget) -> Result<(u64, u64, u64, bool), Error> {
        let m = self.edges.len();
        let mut copy_by_max: Vec<Vec<u64>> = vec![Vec::new(); m];
        for c in &self.forbidden_copies {
            debug_assert!(*c != 0);
            copy_by_max[63 - c.leading_zeros() as usize].push(*c);
        }
        // suffix[i] = every slot from i on.
        let suffix: Vec<u64> = (0..=m)
            .map(|i| ((1u128 << m) - (1u128 << i)) as u64)
            .collect();
        let mut nodes = 1u64;
        let mut best = (self.eval(0), 0u64);
        let mut aborted = false;
        if m > 0 && copy_by_max[0].iter().all(|c| *c != 1) {
            self.bnb_rec(
                1,
                1,
                &copy_by_max,
                &suffix,
                &mut best,
                &mut nodes,
                budget,
                &mut aborted,
            );
        }
        Ok((best.0, best.1, nodes, !aborted))
    }

    #[allow(clippy::too_many_arguments)]
    fn bnb_rec(
        &self,
        i: usize,
        mask: u64,
        copy_by_max: &[Vec<u64>],
        suffix: &[u64],
        best: &mut (u64, u64),
        nodes: &mut u64,
        budget: &Budget,
        aborted: &mut bool,
    ) {
        *nodes += 1;
        if *aborted || budget.exhausted(*nodes) {
            *aborted = true;
            return;
        }
        if self.eval(mask | suffix[i]) <= best.0 {
            return;
        }
        if i == self.edges.len() {
            let value = self.eval(mask);
            if value > best.0 {
                *best = (value, mask);
            }
            return;
        }
        let with = mask | 1 << i;
        if copy_by_max[i].iter().all(|c| with & c != *c) {
            self.bnb_rec(i + 1, with, copy_by_max, suffix, best, nodes, budget, aborted);
        }
        self.bnb_rec(i + 1, mask, copy_by_max, suffix, best, nodes, budget, aborted);
    }
}

fn edge_index(edges: &[VertexSet]) -> HashMap<VertexSet, usize> {
    edges.iter().enumerate().map(|(i, e)| (*e, i)).collect()
}

fn all_vertex_sets(n: usize) -> Vec<VertexSet> {
    VertexSet::full(n).all_subsets()
}

/// All distinct sub-copies of `f` in the complete `k`-graph on `[0, n)`,
/// as (edge mask, image vertex set) pairs — distinct placements of isolated
/// vertices count separately.
fn subcopies(
    n: usize,
    f: &UniformHypergraph,
    index: &HashMap<VertexSet, usize>,
) -> Result<Vec<(u64, VertexSet)>, Error> {
    if f.n() > n {
        return Ok(Vec::new());
    }
    let mut seen: HashSet<(u64, VertexSet)> = HashSet::new();
    let mut image = vec![0usize; f.n()];
    let mut used = VertexSet::EMPTY;
    fn rec(
        v: usize,
        n: usize,
        f: &UniformHypergraph,
        index: &HashMap<VertexSet, usize>,
        image: &mut Vec<usize>,
        used: &mut VertexSet,
        seen: &mut HashSet<(u64, VertexSet)>,
    ) {
        if v == f.n() {
            let mut mask = 0u64;
            for e in f.edges() {
                mask |= 1 << index[&e.relabel(image)];
            }
            seen.insert((mask, *used));
            return;
        }
        for target in 0..n {
            if used.contains(target) {
                continue;
            }
            image[v] = target;
            *used = used.insert(target);
            rec(v + 1, n, f, index, image, used, seen);
            *used = used.remove(target);
        }
    }
    rec(0, n, f, index, &mut image, &mut used, &mut seen);
    let mut out: Vec<(u64, VertexSet)> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn forbidden_masks(
    n: usize,
    forbidden: &[UniformHypergraph],
    index: &HashMap<VertexSet, usize>,
) -> Result<Vec<u64>, Error> {
    let mut masks: HashSet<u64> = HashSet::new();
    for f in forbidden {
        for (mask, _) in subcopies(n, f, index)? {
            masks.insert(mask);
        }
    }
    let mut out: Vec<u64> = masks.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Branch-and-bound over generating candidates of mixed sizes, for the
// pattern-free maximum-edge problem.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum CandState {
    Open,
    Included,
    Excluded,
    /// A subset was excluded, so this candidate can never be included.
    Dead,
}

struct EdgeProblem {
    n: usize,
    candidates: Vec<VertexSet>,
    index_of: HashMap<VertexSet, usize>,
    /// Candidate ids of the immediate (size+1) supersets; excluding a
    /// candidate makes these (and their supersets) unreachable.
    super_ids: Vec<Vec<usize>>,
    pattern_gens: Vec<VertexSet>,
    pattern_n: usize,
}

#[derive(Clone)]
struct EdgeState {
    state: Vec<CandState>,
    included: Vec<bool>,
    included_count: u64,
    open_count: u64,
}

struct EdgeBest {
    value: u64,
    included: Vec<VertexSet>,
}

impl EdgeProblem {
    fn build(n: usize, pattern: &Complex) -> Result<EdgeProblem, Error> {
        if pattern.n() > DEFAULT_CANON_LIMIT {
            return Err(Error::TooLarge(format!(
                "pattern on {} vertices; the search is limited to {}",
                pattern.n(),
                DEFAULT_CANON_LIMIT
            )));
        }
        if n > 16 {
            return Err(Error::TooLarge(
                "pattern-free edge search is limited to 16 vertices".into(),
            ));
        }
        let pattern_gens = pattern.generating_set().maximal().to_vec();
        if pattern_gens.iter().any(|g| g.len() < 2) {
            return Err(Error::InvalidParameter(
                "pattern has an isolated vertex; every vertex must lie in an \
                 edge of size >= 2"
                    .into(),
            ));
        }
        // Candidate sizes: a single edge of size s is allowed only while the
        // closure of one s-set on n vertices stays pattern-free; containment
        // is monotone in s, so the allowed sizes are a prefix.
        let unlimited = Budget::unlimited();
        let mut max_size = 1;
        for s in 2..=n {
            let single =
                Complex::downward_closure(n, [VertexSet::from_vertices(0..s).unwrap()])?;
            match contains_complex(&single, pattern, &unlimited)? {
                SearchOutcome::Found(_) => break,
                SearchOutcome::Absent => max_size = s,
                SearchOutcome::BudgetExhausted => unreachable!(),
            }
        }
        let mut candidates: Vec<VertexSet> = Vec::new();
        for s in 2..=max_size {
            candidates.extend(VertexSet::full(n).subsets_of_size(s));
        }
        let index_of = edge_index(&candidates);
        let mut super_ids: Vec<Vec<usize>> = vec![Vec::new(); candidates.len()];
        for (i, c) in candidates.iter().enumerate() {
            if c.len() == 2 {
                continue;
            }
            for s in c.subsets_of_size(c.len() - 1) {
                super_ids[index_of[&s]].push(i);
            }
        }
        Ok(EdgeProblem {
            n,
            candidates,
            index_of,
            super_ids,
            pattern_gens,
            pattern_n: pattern.n(),
        })
    }

    fn initial_state(&self) -> EdgeState {
        EdgeState {
            state: vec![CandState::Open; self.candidates.len()],
            included: vec![false; self.candidates.len()],
            included_count: 0,
            open_count: self.candidates.len() as u64,
        }
    }

    fn base_value(&self) -> u64 {
        1 + self.n as u64
    }

    fn is_edge_now(&self, included: &[bool], s: VertexSet) -> bool {
        match s.len() {
            0 => true,
            1 => s.max_vertex().unwrap() < self.n,
            _ => self
                .index_of
                .get(&s)
                .map(|i| included[*i])
                .unwrap_or(false),
        }
    }

    /// Does the current family contain the pattern through an embedding that
    /// maps some maximal pattern edge exactly onto `anchor`? Complete as an
    /// incremental check: each inclusion adds one set to the family, and any
    /// new copy must use it as a generator image.
    fn contains_anchored(&self, included: &[bool], anchor: VertexSet) -> bool {
        let anchor_verts = anchor.to_vec();
        for (gi, g) in self.pattern_gens.iter().enumerate() {
            if g.len() != anchor_verts.len() {
                continue;
            }
            let gen_verts = g.to_vec();
            // Try every bijection of the generator onto the anchor.
            let mut perm: Vec<usize> = (0..gen_verts.len()).collect();
            loop {
                let mut image = vec![usize::MAX; self.pattern_n];
                for (a, p) in perm.iter().enumerate() {
                    image[gen_verts[a]] = anchor_verts[*p];
                }
                if self.extend_embedding(included, &mut image, anchor, gi) {
                    return true;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        false
    }

    fn extend_embedding(
        &self,
        included: &[bool],
        image: &mut Vec<usize>,
        anchor: VertexSet,
        anchor_gen: usize,
    ) -> bool {
        // Check the already-determined parts of every generator before
        // spending time on the unassigned vertices.
        for (gi, g) in self.pattern_gens.iter().enumerate() {
            if gi == anchor_gen {
                continue;
            }
            let assigned = VertexSet::from_vertices(
                g.iter().filter(|v| image[*v] != usize::MAX).map(|v| image[v]),
            )
            .unwrap();
            if !self.is_edge_now(included, assigned) {
                return false;
            }
        }
        let mut used = anchor;
        self.assign_rest(included, image, &mut used, 0)
    }

    fn assign_rest(
        &self,
        included: &[bool],
        image: &mut Vec<usize>,
        used: &mut VertexSet,
        from: usize,
    ) -> bool {
        let Some(v) = (from..self.pattern_n).find(|v| image[*v] == usize::MAX) else {
            return true;
        };
        'targets: for target in 0..self.n {
            if used.contains(target) {
                continue;
            }
            image[v] = target;
            for g in &self.pattern_gens {
                if !g.contains(v) {
                    continue;
                }
                let assigned = VertexSet::from_vertices(
                    g.iter().filter(|w| image[*w] != usize::MAX).map(|w| image[w]),
                )
                .unwrap();
                if !self.is_edge_now(included, assigned) {
                    continue 'targets;
                }
            }
            *used = used.insert(target);
            if self.assign_rest(included, image, used, v + 1) {
                return true;
            }
            *used = used.remove(target);
        }
        image[v] = usize::MAX;
        false
    }

    /// Mark `i` excluded and cascade deadness upward. Returns the trail of
    /// candidates marked Dead (for undo).
    fn exclude(&self, st: &mut EdgeState, i: usize) -> Vec<usize> {
        st.state[i] = CandState::Excluded;
        st.open_count -= 1;
        let mut trail = Vec::new();
        let mut stack = self.super_ids[i].clone();
        while let Some(j) = stack.pop() {
            if st.state[j] == CandState::Open {
                st.state[j] = CandState::Dead;
                st.open_count -= 1;
                trail.push(j);
                stack.extend_from_slice(&self.super_ids[j]);
            }
        }
        trail
    }

    fn undo_exclude(&self, st: &mut EdgeState, i: usize, trail: Vec<usize>) {
        for j in trail {
            st.state[j] = CandState::Open;
            st.open_count += 1;
        }
        st.state[i] = CandState::Open;
        st.open_count += 1;
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    // Standard lexicographic successor.
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

struct EdgeSearchCtx<'a> {
    problem: &'a EdgeProblem,
    budget: &'a Budget,
}

enum EdgeDfs {
    Done,
    Aborted,
}

impl EdgeSearchCtx<'_> {
    /// Sequential DFS from decision index `i`. Updates `best` (strictly
    /// better values only) and counts nodes. `collect_at` splits off
    /// subtree tasks at that decision depth instead of descending.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        st: &mut EdgeState,
        i: usize,
        incumbent: &mut u64,
        best: &mut Option<EdgeBest>,
        nodes: &mut u64,
        collect_at: usize,
        tasks: &mut Vec<EdgeState>,
    ) -> EdgeDfs {
        *nodes += 1;
        if self.budget.deadline.is_some() && self.budget.exhausted(*nodes) {
            return EdgeDfs::Aborted;
        }
        let p = self.problem;
        let m = p.candidates.len();
        if p.base_value() + st.included_count + st.open_count <= *incumbent {
            return EdgeDfs::Done;
        }
        if i == m {
            let value = p.base_value() + st.included_count;
            if value > *incumbent {
                *incumbent = value;
                *best = Some(EdgeBest {
                    value,
                    included: p
                        .candidates
                        .iter()
                        .zip(&st.included)
                        .filter(|(_, inc)| **inc)
                        .map(|(c, _)| *c)
                        .collect(),
                });
            }
            return EdgeDfs::Done;
        }
        if i == collect_at {
            tasks.push(st.clone());
            return EdgeDfs::Done;
        }
        match st.state[i] {
            CandState::Dead => {
                let out = self.dfs(st, i + 1, incumbent, best, nodes, collect_at, tasks);
                return out;
            }
            CandState::Open => {}
            _ => unreachable!("decisions advance strictly left to right"),
        }

        // Include branch first: the leftmost leaf is the greedy complex.
        st.included[i] = true;
        let feasible = !p.contains_anchored(&st.included, p.candidates[i]);
        if feasible {
            st.state[i] = CandState::Included;
            st.included_count += 1;
            st.open_count -= 1;
            let out = self.dfs(st, i + 1, incumbent, best, nodes, collect_at, tasks);
            st.state[i] = CandState::Open;
            st.included_count -= 1;
            st.open_count += 1;
            st.included[i] = false;
            if matches!(out, EdgeDfs::Aborted) {
                return EdgeDfs::Aborted;
            }
        } else {
            st.included[i] = false;
        }

        let trail = p.exclude(st, i);
        let out = self.dfs(st, i + 1, incumbent, best, nodes, collect_at, tasks);
        p.undo_exclude(st, i, trail);
        if matches!(out, EdgeDfs::Aborted) {
            return EdgeDfs::Aborted;
        }
        EdgeDfs::Done
    }
}

/// Returns (optimum, included generating edges, nodes, exact?).
fn edge_bnb(
    n: usize,
    pattern: &Complex,
    budget: &Budget,
    threads: usize,
) -> Result<(u64, Vec<VertexSet>, u64, bool), Error> {
    let problem = EdgeProblem::build(n, pattern)?;
    let ctx = EdgeSearchCtx {
        problem: &problem,
        budget,
    };
    let m = problem.candidates.len();
    let mut nodes = 0u64;
    let mut incumbent = 0u64; // any leaf beats zero, so the first leaf lands
    let mut best: Option<EdgeBest> = None;
    let mut exact = true;

    // Phase 1: frontier enumeration. Runs the same DFS but parks every
    // subtree at the split depth as a task; shallow leaves are folded in
    // directly. The split depth is fixed, so the task list is identical
    // regardless of thread count.
    let split = SPLIT_DECISIONS.min(m);
    let mut tasks: Vec<EdgeState> = Vec::new();
    let mut st = problem.initial_state();
    let out = ctx.dfs(
        &mut st,
        0,
        &mut incumbent,
        &mut best,
        &mut nodes,
        split,
        &mut tasks,
    );
    if matches!(out, EdgeDfs::Aborted) {
        exact = false;
        tasks.clear();
    }

    // Phase 2: tasks in fixed-size waves; each task prunes against the
    // incumbent frozen at its wave start, results merge in task order.
    let pool = thread_pool(threads)?;
    let mut next = 0usize;
    while next < tasks.len() {
        if budget.max_nodes.map_or(false, |mx| nodes >= mx) {
            exact = false;
            break;
        }
        let wave_end = (next + TASK_WAVE).min(tasks.len());
        let frozen = incumbent;
        let results: Vec<(Option<EdgeBest>, u64, bool)> = run_in_pool(&pool, || {
            use rayon::prelude::*;
            tasks[next..wave_end]
                .par_iter()
                .map(|task| {
                    let mut local = task.clone();
                    let mut local_incumbent = frozen;
                    let mut local_best = None;
                    let mut local_nodes = 0u64;
                    let out = ctx.dfs(
                        &mut local,
                        split,
                        &mut local_incumbent,
                        &mut local_best,
                        &mut local_nodes,
                        usize::MAX,
                        &mut Vec::new(),
                    );
                    (local_best, local_nodes, matches!(out, EdgeDfs::Aborted))
                })
                .collect()
        });
        for (task_best, task_nodes, aborted) in results {
            nodes += task_nodes;
            if aborted {
                exact = false;
            }
            if let Some(b) = task_best {
                if b.value > incumbent {
                    incumbent = b.value;
                    best = Some(b);
                } else if best.is_none() {
                    best = Some(b);
                }
            }
        }
        next = wave_end;
    }

    let best = match best {
        Some(b) => b,
        // Candidate list empty or every branch pruned: the trivial complex.
        None => EdgeBest {
            value: problem.base_value(),
            included: Vec::new(),
        },
    };
    Ok((best.value, best.included, nodes, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn closure(g: &UniformHypergraph) -> Complex {
        Complex::downward_closure(g.n(), g.edges().iter().copied()).unwrap()
    }

    #[test]
    fn forbidding_any_pair_leaves_the_trivial_complex() {
        let pattern =
            Complex::downward_closure(2, [VertexSet::of(&[0, 1])]).unwrap();
        let r =
            max_edges_pattern_free(4, &pattern, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 5);
        assert_eq!(r.status, SearchStatus::Exact);
    }

    #[test]
    fn triangle_free_complex_on_four_vertices() {
        let pattern = closure(&UniformHypergraph::complete(3, 2).unwrap());
        let r =
            max_edges_pattern_free(4, &pattern, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 9);
        let instance = Instance::MaxEdges {
            n: 4,
            pattern: pattern.clone(),
        };
        assert!(verify_witness(&r, &instance).unwrap());
    }

    #[test]
    fn single_triple_pattern_on_four_vertices() {
        // Forbidding one triple keeps the 2-layer complete: 1 + 4 + 6.
        let pattern =
            Complex::downward_closure(3, [VertexSet::of(&[0, 1, 2])]).unwrap();
        let r =
            max_edges_pattern_free(4, &pattern, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 11);
    }

    #[test]
    fn matching_free_graph_cliques() {
        let m22 = constructions::matching(2, 2).unwrap();
        for (n, expect) in [(4, 4), (5, 4), (6, 5)] {
            let r = max_cliques_forbidden(
                n,
                2,
                &[m22.clone()],
                CountMode::GeqK,
                &Budget::unlimited(),
                1,
            )
            .unwrap();
            assert_eq!(r.optimum, expect, "n = {n}");
            assert_eq!(r.status, SearchStatus::Exact);
        }
    }

    #[test]
    fn disjoint_triple_free_optimum_on_six_is_the_five_clique() {
        // All triples inside five of the six vertices: no two disjoint
        // triples fit in five vertices, and the census is 10 + 5 + 1 = 16
        // cliques of order >= 3. This beats the one-center star's 10 on
        // ground sets this small (the star takes over from n = 8).
        let m32 = constructions::matching(3, 2).unwrap();
        let r = max_cliques_forbidden(
            6,
            3,
            &[m32],
            CountMode::GeqK,
            &Budget::unlimited(),
            1,
        )
        .unwrap();
        assert_eq!(r.optimum, 16);
        let k35 = UniformHypergraph::new(
            6,
            3,
            VertexSet::full(5).subsets_of_size(3),
        )
        .unwrap();
        let Witness::Uniform(w) = &r.witness else {
            panic!("uniform witness expected")
        };
        assert!(crate::canonical::isomorphic_uniform(w, &k35).unwrap());
    }

    #[test]
    fn triangle_free_pair_count_is_turan() {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let k2 = UniformHypergraph::complete(2, 2).unwrap();
        let r = max_copies(6, 2, &k2, &k3, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 9);
        let instance = Instance::MaxCopies {
            n: 6,
            k: 2,
            target: k2,
            forbidden: k3,
        };
        assert!(verify_witness(&r, &instance).unwrap());
    }

    #[test]
    fn k4_free_triangle_count_on_five() {
        let k4 = UniformHypergraph::complete(4, 2).unwrap();
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let r = max_copies(5, 2, &k3, &k4, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 4);
    }

    #[test]
    fn forbidding_the_target_itself_gives_zero() {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let r = max_copies(4, 2, &k3, &k3, &Budget::unlimited(), 1).unwrap();
        assert_eq!(r.optimum, 0);
    }

    #[test]
    fn determinism_across_thread_counts() {
        let m22 = constructions::matching(2, 2).unwrap();
        let pattern = constructions::case_iv(3).unwrap();
        let mut clique_runs = Vec::new();
        let mut edge_runs = Vec::new();
        for threads in [1, 2, 4] {
            let c = max_cliques_forbidden(
                6,
                2,
                &[m22.clone()],
                CountMode::GeqK,
                &Budget::unlimited(),
                threads,
            )
            .unwrap();
            clique_runs.push((c.optimum, c.nodes_explored, c.witness.clone()));
            let e =
                max_edges_pattern_free(5, &pattern, &Budget::unlimited(), threads)
                    .unwrap();
            edge_runs.push((e.optimum, e.nodes_explored, e.witness.clone()));
        }
        assert!(clique_runs.windows(2).all(|w| w[0] == w[1]));
        assert!(edge_runs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn branch_and_bound_matches_exhaustive_scan() {
        let m22 = constructions::matching(2, 2).unwrap();
        let k4 = UniformHypergraph::complete(4, 2).unwrap();
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let unlimited = Budget::unlimited();
        let t = MaskTables::for_cliques(5, 2, &[m22], CountMode::GeqK).unwrap();
        let ex = t.maximize_exhaustive(&unlimited, 1).unwrap();
        let bb = t.maximize_bnb(&unlimited).unwrap();
        assert_eq!(ex.0, 4);
        assert_eq!(bb.0, 4);
        let t = MaskTables::for_copies(5, 2, &k3, std::slice::from_ref(&k4)).unwrap();
        let ex = t.maximize_exhaustive(&unlimited, 1).unwrap();
        let bb = t.maximize_bnb(&unlimited).unwrap();
        assert_eq!(ex.0, bb.0);
        assert_eq!(ex.0, 4);
    }

    #[test]
    fn node_budget_reports_lower_bound() {
        let pattern = closure(&UniformHypergraph::complete(3, 2).unwrap());
        let r = max_edges_pattern_free(6, &pattern, &Budget::nodes(10), 1).unwrap();
        assert_eq!(r.status, SearchStatus::LowerBoundOnly);
        // Whatever was found is still a valid pattern-free complex.
        let instance = Instance::MaxEdges {
            n: 6,
            pattern: pattern.clone(),
        };
        assert!(verify_witness(&r, &instance).unwrap());
    }

    #[test]
    fn instance_keys_ignore_relabeling() {
        let p1 = UniformHypergraph::new(
            4,
            2,
            [VertexSet::of(&[0, 1]), VertexSet::of(&[1, 2])],
        )
        .unwrap();
        let p2 = UniformHypergraph::new(
            4,
            2,
            [VertexSet::of(&[2, 3]), VertexSet::of(&[1, 3])],
        )
        .unwrap();
        let key = |p: &UniformHypergraph| {
            Instance::MaxCliques {
                n: 6,
                k: 2,
                forbidden: vec![p.clone()],
                mode: CountMode::GeqK,
            }
            .key()
            .unwrap()
        };
        assert_eq!(key(&p1), key(&p2));
        let other = Instance::MaxCliques {
            n: 6,
            k: 2,
            forbidden: vec![p1.clone()],
            mode: CountMode::All,
        }
        .key()
        .unwrap();
        assert_ne!(key(&p1), other);
    }

    #[test]
    fn tampered_results_fail_verification() {
        let k3 = UniformHypergraph::complete(3, 2).unwrap();
        let pattern = closure(&k3);
        let instance = Instance::MaxEdges {
            n: 4,
            pattern: pattern.clone(),
        };
        let mut r = max_edges_pattern_free(4, &pattern, &Budget::unlimited(), 1).unwrap();
        r.optimum += 1;
        assert!(!verify_witness(&r, &instance).unwrap());
    }
}
