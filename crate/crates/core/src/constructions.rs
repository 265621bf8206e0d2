//! Named hypergraph and complex families: complete hypergraphs, matchings,
//! linear/tight paths and cycles, stars, Turán graphs, blow-ups, and the
//! fixed small complexes used as forbidden patterns and extremal witnesses
//! throughout the crate.
//!
//! Every constructor is deterministic, with a documented labeling, so edge
//! lists can be frozen in tests and regenerated byte-identically.

use crate::canonical::canonical_form_uniform;
use crate::complex::Complex;
use crate::error::Error;
use crate::hypergraph::UniformHypergraph;
use crate::set::VertexSet;
use std::fmt;
use std::str::FromStr;

fn require(cond: bool, msg: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// Complete `k`-uniform hypergraph on `t` vertices.
pub fn complete(k: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "complete(k, t) needs k >= 2")?;
    require(t >= k, "complete(k, t) needs t >= k")?;
    UniformHypergraph::complete(t, k)
}

/// Perfect matching with `t` pairwise disjoint `k`-edges on `k*t` vertices;
/// edge `i` is `{ik, .., ik+k-1}`.
pub fn matching(k: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "matching(k, t) needs k >= 2")?;
    require(t >= 1, "matching(k, t) needs t >= 1")?;
    let edges = (0..t).map(|i| VertexSet::from_vertices(i * k..(i + 1) * k).unwrap());
    UniformHypergraph::new(k * t, k, edges)
}

/// Linear (loose) path with `t` edges on `t(k-1)+1` vertices; consecutive
/// edges share exactly one vertex.
pub fn linear_path(k: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "linear_path(k, t) needs k >= 2")?;
    require(t >= 1, "linear_path(k, t) needs t >= 1")?;
    let edges =
        (0..t).map(|i| VertexSet::from_vertices(i * (k - 1)..i * (k - 1) + k).unwrap());
    UniformHypergraph::new(t * (k - 1) + 1, k, edges)
}

/// Linear (loose) cycle with `t` edges on `t(k-1)` vertices.
pub fn linear_cycle(k: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "linear_cycle(k, t) needs k >= 2")?;
    require(t >= 3, "linear_cycle(k, t) needs t >= 3")?;
    let n = t * (k - 1);
    let edges = (0..t).map(|i| {
        VertexSet::from_vertices((0..k).map(|j| (i * (k - 1) + j) % n)).unwrap()
    });
    UniformHypergraph::new(n, k, edges)
}

/// Tight path with `t` edges on `k+t-1` vertices; edge `i` is the window
/// `{i, .., i+k-1}`.
pub fn tight_path(k: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "tight_path(k, t) needs k >= 2")?;
    require(t >= 1, "tight_path(k, t) needs t >= 1")?;
    let edges = (0..t).map(|i| VertexSet::from_vertices(i..i + k).unwrap());
    UniformHypergraph::new(k + t - 1, k, edges)
}

/// Star: all `k`-sets of `[0, n)` meeting the center set `A = {0, .., l-1}`.
pub fn star(n: usize, k: usize, l: usize) -> Result<UniformHypergraph, Error> {
    require(k >= 2, "star(n, k, l) needs k >= 2")?;
    require(n >= k, "star(n, k, l) needs n >= k")?;
    require(l >= 1 && l <= n, "star(n, k, l) needs 1 <= l <= n")?;
    let center = VertexSet::from_vertices(0..l).unwrap();
    let edges = VertexSet::full(n)
        .subsets_of_size(k)
        .into_iter()
        .filter(|e| e.intersects(center));
    UniformHypergraph::new(n, k, edges)
}

/// Part sizes of the Turán graph `T(n, t)`: as equal as possible, with the
/// larger parts first.
pub fn turan_part_sizes(n: usize, t: usize) -> Vec<usize> {
    let q = n / t;
    let r = n % t;
    (0..t).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Turán graph `T(n, t)`: complete `t`-partite graph with balanced parts,
/// parts labeled contiguously.
pub fn turan_graph(n: usize, t: usize) -> Result<UniformHypergraph, Error> {
    require(t >= 1, "turan_graph(n, t) needs t >= 1")?;
    require(n >= 2, "turan_graph(n, t) needs n >= 2")?;
    let sizes = turan_part_sizes(n, t);
    let mut part_of = vec![0usize; n];
    let mut v = 0;
    for (p, s) in sizes.iter().enumerate() {
        for _ in 0..*s {
            part_of[v] = p;
            v += 1;
        }
    }
    let edges = VertexSet::full(n)
        .subsets_of_size(2)
        .into_iter()
        .filter(|e| {
            let vs = e.to_vec();
            part_of[vs[0]] != part_of[vs[1]]
        });
    UniformHypergraph::new(n, 2, edges)
}

/// Blow-up `H(t)`: vertex `v` becomes copies `vt, .., vt+t-1`, and each edge
/// becomes all transversals through the copy classes of its vertices.
pub fn blow_up(h: &UniformHypergraph, t: usize) -> Result<UniformHypergraph, Error> {
    require(t >= 1, "blow_up(h, t) needs t >= 1")?;
    let mut edges: Vec<VertexSet> = Vec::new();
    for e in h.edges() {
        let verts = e.to_vec();
        let mut choice = vec![0usize; verts.len()];
        loop {
            edges.push(
                VertexSet::from_vertices(
                    verts.iter().zip(&choice).map(|(v, c)| v * t + c),
                )?,
            );
            // Advance the mixed-radix counter over copy choices.
            let mut i = 0;
            loop {
                if i == choice.len() {
                    break;
                }
                choice[i] += 1;
                if choice[i] < t {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    UniformHypergraph::new(h.n() * t, h.k(), edges)
}

/// The 6-vertex 3-graph with edges {0,1,2}, {0,1,3}, {2,3,4}, {0,4,5},
/// whose blow-ups stay tightly entangled with its own Turán problem.
pub fn baber_talbot_h() -> UniformHypergraph {
    UniformHypergraph::new(
        6,
        3,
        [
            VertexSet::of(&[0, 1, 2]),
            VertexSet::of(&[0, 1, 3]),
            VertexSet::of(&[2, 3, 4]),
            VertexSet::of(&[0, 4, 5]),
        ],
    )
    .unwrap()
}

/// Complex on 5 vertices generated by {0,1,2}, {0,3,4}, {2,3}, {2,4}.
pub fn f1() -> Complex {
    Complex::downward_closure(
        5,
        [
            VertexSet::of(&[0, 1, 2]),
            VertexSet::of(&[0, 3, 4]),
            VertexSet::of(&[2, 3]),
            VertexSet::of(&[2, 4]),
        ],
    )
    .unwrap()
}

/// Complex on 6 vertices: two disjoint triples joined by a claw at vertex 0.
pub fn f2() -> Complex {
    m32_plus(CrossingGraph::K13).unwrap()
}

/// Complex on 6 vertices: two disjoint triples joined by a four-cycle.
pub fn f3() -> Complex {
    m32_plus(CrossingGraph::C4).unwrap()
}

/// Complex on 6 vertices: two disjoint triples joined by a six-cycle.
pub fn f4() -> Complex {
    m32_plus(CrossingGraph::C6).unwrap()
}

/// Complex on `2k-2` vertices generated by `{0,..,k-1}`,
/// `{0} ∪ {k,..,2k-3}` and `{1} ∪ {k,..,2k-3}`.
pub fn case_iv(k: usize) -> Result<Complex, Error> {
    require(k >= 3, "case_iv(k) needs k >= 3")?;
    let body: Vec<usize> = (k..2 * k - 2).collect();
    let mut g1 = vec![0usize];
    g1.extend(&body);
    let mut g2 = vec![1usize];
    g2.extend(&body);
    Complex::downward_closure(
        2 * k - 2,
        [
            VertexSet::from_vertices(0..k).unwrap(),
            VertexSet::of(&g1),
            VertexSet::of(&g2),
        ],
    )
}

/// Cross graphs available between the two triples of `m32_plus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingGraph {
    K2,
    TwoK2,
    P2PlusP1,
    TwoP2,
    P3,
    P4,
    P5,
    K13,
    C4,
    C6,
}

impl CrossingGraph {
    pub const ALL: [CrossingGraph; 10] = [
        CrossingGraph::K2,
        CrossingGraph::TwoK2,
        CrossingGraph::P2PlusP1,
        CrossingGraph::TwoP2,
        CrossingGraph::P3,
        CrossingGraph::P4,
        CrossingGraph::P5,
        CrossingGraph::K13,
        CrossingGraph::C4,
        CrossingGraph::C6,
    ];

    pub fn token(self) -> &'static str {
        match self {
            CrossingGraph::K2 => "k2",
            CrossingGraph::TwoK2 => "2k2",
            CrossingGraph::P2PlusP1 => "p2p1",
            CrossingGraph::TwoP2 => "2p2",
            CrossingGraph::P3 => "p3",
            CrossingGraph::P4 => "p4",
            CrossingGraph::P5 => "p5",
            CrossingGraph::K13 => "k13",
            CrossingGraph::C4 => "c4",
            CrossingGraph::C6 => "c6",
        }
    }

    /// A reference copy on 6 vertices (labels irrelevant, used for
    /// isomorphism matching).
    fn reference_graph(self) -> UniformHypergraph {
        let edges: &[[usize; 2]] = match self {
            CrossingGraph::K2 => &[[0, 1]],
            CrossingGraph::TwoK2 => &[[0, 1], [2, 3]],
            CrossingGraph::P2PlusP1 => &[[0, 1], [1, 2], [3, 4]],
            CrossingGraph::TwoP2 => &[[0, 1], [1, 2], [3, 4], [4, 5]],
            CrossingGraph::P3 => &[[0, 1], [1, 2], [2, 3]],
            CrossingGraph::P4 => &[[0, 1], [1, 2], [2, 3], [3, 4]],
            CrossingGraph::P5 => &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5]],
            CrossingGraph::K13 => &[[0, 1], [0, 2], [0, 3]],
            CrossingGraph::C4 => &[[0, 1], [1, 2], [2, 3], [3, 0]],
            CrossingGraph::C6 => &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]],
        };
        UniformHypergraph::new(6, 2, edges.iter().map(|e| VertexSet::of(e))).unwrap()
    }

    /// The concrete crossing pairs between triples {0,1,2} and {3,4,5}.
    /// The claw, four-cycle and six-cycle use fixed historical placements;
    /// the rest take the lexicographically least placement realizing the
    /// graph inside the complete bipartite crossing.
    fn placement(self) -> Vec<VertexSet> {
        match self {
            CrossingGraph::K13 => {
                vec![
                    VertexSet::of(&[0, 3]),
                    VertexSet::of(&[0, 4]),
                    VertexSet::of(&[0, 5]),
                ]
            }
            CrossingGraph::C4 => vec![
                VertexSet::of(&[0, 3]),
                VertexSet::of(&[0, 4]),
                VertexSet::of(&[1, 3]),
                VertexSet::of(&[1, 4]),
            ],
            CrossingGraph::C6 => vec![
                VertexSet::of(&[0, 3]),
                VertexSet::of(&[0, 5]),
                VertexSet::of(&[1, 3]),
                VertexSet::of(&[1, 4]),
                VertexSet::of(&[2, 4]),
                VertexSet::of(&[2, 5]),
            ],
            _ => lex_least_crossing_placement(self),
        }
    }
}

impl FromStr for CrossingGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        CrossingGraph::ALL
            .into_iter()
            .find(|g| g.token() == norm)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown crossing graph '{s}'")))
    }
}

fn lex_least_crossing_placement(g: CrossingGraph) -> Vec<VertexSet> {
    let reference = g.reference_graph();
    let m = reference.edge_count();
    let mut pairs: Vec<VertexSet> = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            pairs.push(VertexSet::of(&[a, b]));
        }
    }
    pairs.sort_unstable();
    // Index subsets in lex order; the pair list is lex-sorted, so the first
    // isomorphic hit is the lexicographically least placement.
    for idx in VertexSet::full(pairs.len()).subsets_of_size(m) {
        let chosen: Vec<VertexSet> = idx.iter().map(|i| pairs[i]).collect();
        let candidate =
            UniformHypergraph::new(6, 2, chosen.iter().copied()).unwrap();
        let ok = canonical_form_uniform(&candidate).unwrap()
            == canonical_form_uniform(&reference).unwrap();
        if ok {
            return chosen;
        }
    }
    unreachable!("crossing graph {g:?} not realizable in K(3,3)");
}

/// Two disjoint triples {0,1,2}, {3,4,5} plus the given crossing graph
/// between them, as a complex on 6 vertices.
pub fn m32_plus(crossing: CrossingGraph) -> Result<Complex, Error> {
    let mut gens = vec![VertexSet::of(&[0, 1, 2]), VertexSet::of(&[3, 4, 5])];
    gens.extend(crossing.placement());
    Complex::downward_closure(6, gens)
}

/// Tight path with `t` edges plus one `(2t-2)`-edge joining its first and
/// last `t-1` vertices; needs `k >= 2t-2`.
pub fn jump(k: usize, t: usize) -> Result<Complex, Error> {
    require(t >= 2, "jump(k, t) needs t >= 2")?;
    require(k >= 2 * t - 2, "jump(k, t) needs k >= 2t-2")?;
    let path = tight_path(k, t)?;
    let mut gens: Vec<VertexSet> = path.edges().to_vec();
    let extra = VertexSet::from_vertices((0..t - 1).chain(k..k + t - 1)).unwrap();
    gens.push(extra);
    Complex::downward_closure(k + t - 1, gens)
}

/// A graph clique on `t+1` vertices, one disjoint `k`-edge, and enough
/// extra singleton vertices to reach `q` vertices in total.
pub fn disjoint_clique_plus_edge(k: usize, t: usize, q: usize) -> Result<Complex, Error> {
    require(k >= 2, "disjoint_clique_plus_edge(k, t, q) needs k >= 2")?;
    require(t >= 1, "disjoint_clique_plus_edge(k, t, q) needs t >= 1")?;
    require(
        q >= t + 1 + k,
        "disjoint_clique_plus_edge(k, t, q) needs q >= t+1+k",
    )?;
    let mut gens: Vec<VertexSet> = VertexSet::from_vertices(0..t + 1)
        .unwrap()
        .subsets_of_size(2);
    gens.push(VertexSet::from_vertices(t + 1..t + 1 + k).unwrap());
    Complex::downward_closure(q, gens)
}

/// Output of [`f4_lower_bound_construction`]: the complex plus the
/// four-cycle-free base graph its triples were built from.
pub struct F4LowerBound {
    pub complex: Complex,
    pub base_graph: UniformHypergraph,
    pub n_left: usize,
    pub n_right: usize,
}

/// Lower-bound construction for avoiding [`f4`]: a greedily built
/// four-cycle-free graph `G` on the left part, with each `G`-edge extended
/// by every right-part vertex into a generating triple.
pub fn f4_lower_bound_construction(
    n_left: usize,
    n_right: usize,
) -> Result<F4LowerBound, Error> {
    require(n_left >= 2, "f4_lower_bound_construction needs n_left >= 2")?;
    require(n_right >= 1, "f4_lower_bound_construction needs n_right >= 1")?;
    let base_graph = greedy_c4_free(n_left)?;
    let mut gens: Vec<VertexSet> = Vec::new();
    for e in base_graph.edges() {
        for w in n_left..n_left + n_right {
            gens.push(e.insert(w));
        }
    }
    let complex = Complex::downward_closure(n_left + n_right, gens)?;
    Ok(F4LowerBound {
        complex,
        base_graph,
        n_left,
        n_right,
    })
}

// Greedy four-cycle-free graph: scan pairs lexicographically, adding an edge
// whenever no vertex pair ends up with two common neighbors.
fn greedy_c4_free(n: usize) -> Result<UniformHypergraph, Error> {
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut edges: Vec<VertexSet> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let creates_c4 = adj[u]
                .iter()
                .any(|y| y != v && adj[v].intersection(adj[y]).remove(u).len() > 0)
                || adj[v]
                    .iter()
                    .any(|x| x != u && adj[u].intersection(adj[x]).remove(v).len() > 0);
            if !creates_c4 {
                adj[u] = adj[u].insert(v);
                adj[v] = adj[v].insert(u);
                edges.push(VertexSet::of(&[u, v]));
            }
        }
    }
    UniformHypergraph::new(n, 2, edges)
}

/// Built object of a [`PatternName`].
#[derive(Clone)]
pub enum Built {
    Uniform(UniformHypergraph),
    Complex(Complex),
}

impl Built {
    /// View as a complex, taking the downward closure of a uniform family.
    pub fn into_complex(self) -> Result<Complex, Error> {
        match self {
            Built::Complex(c) => Ok(c),
            Built::Uniform(g) => {
                Complex::downward_closure(g.n(), g.edges().iter().copied())
            }
        }
    }
}

/// Parseable names for every construction in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternName {
    Complete { k: usize, t: usize },
    Matching { k: usize, t: usize },
    LinearPath { k: usize, t: usize },
    LinearCycle { k: usize, t: usize },
    TightPath { k: usize, t: usize },
    Star { n: usize, k: usize, l: usize },
    TuranGraph { n: usize, t: usize },
    BlowUp { t: usize, base: Box<PatternName> },
    BaberTalbotH,
    F1,
    F2,
    F3,
    F4,
    CaseIv { k: usize },
    M32Plus(CrossingGraph),
    Jump { k: usize, t: usize },
    DisjointCliquePlusEdge { k: usize, t: usize, q: usize },
}

impl PatternName {
    pub fn build(&self) -> Result<Built, Error> {
        Ok(match self {
            PatternName::Complete { k, t } => Built::Uniform(complete(*k, *t)?),
            PatternName::Matching { k, t } => Built::Uniform(matching(*k, *t)?),
            PatternName::LinearPath { k, t } => Built::Uniform(linear_path(*k, *t)?),
            PatternName::LinearCycle { k, t } => Built::Uniform(linear_cycle(*k, *t)?),
            PatternName::TightPath { k, t } => Built::Uniform(tight_path(*k, *t)?),
            PatternName::Star { n, k, l } => Built::Uniform(star(*n, *k, *l)?),
            PatternName::TuranGraph { n, t } => Built::Uniform(turan_graph(*n, *t)?),
            PatternName::BlowUp { t, base } => match base.build()? {
                Built::Uniform(g) => Built::Uniform(blow_up(&g, *t)?),
                Built::Complex(_) => {
                    return Err(Error::InvalidParameter(
                        "blow-up base must be a uniform hypergraph".into(),
                    ))
                }
            },
            PatternName::BaberTalbotH => Built::Uniform(baber_talbot_h()),
            PatternName::F1 => Built::Complex(f1()),
            PatternName::F2 => Built::Complex(f2()),
            PatternName::F3 => Built::Complex(f3()),
            PatternName::F4 => Built::Complex(f4()),
            PatternName::CaseIv { k } => Built::Complex(case_iv(*k)?),
            PatternName::M32Plus(g) => Built::Complex(m32_plus(*g)?),
            PatternName::Jump { k, t } => Built::Complex(jump(*k, *t)?),
            PatternName::DisjointCliquePlusEdge { k, t, q } => {
                Built::Complex(disjoint_clique_plus_edge(*k, *t, *q)?)
            }
        })
    }
}

/// The named object as a complex (closing uniform families downward).
pub fn named_complex(name: &PatternName) -> Result<Complex, Error> {
    name.build()?.into_complex()
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternName::Complete { k, t } => write!(f, "complete:{k},{t}"),
            PatternName::Matching { k, t } => write!(f, "matching:{k},{t}"),
            PatternName::LinearPath { k, t } => write!(f, "linear-path:{k},{t}"),
            PatternName::LinearCycle { k, t } => write!(f, "linear-cycle:{k},{t}"),
            PatternName::TightPath { k, t } => write!(f, "tight-path:{k},{t}"),
            PatternName::Star { n, k, l } => write!(f, "star:{n},{k},{l}"),
            PatternName::TuranGraph { n, t } => write!(f, "turan:{n},{t}"),
            PatternName::BlowUp { t, base } => write!(f, "blow-up:{t}:{base}"),
            PatternName::BaberTalbotH => write!(f, "baber-talbot"),
            PatternName::F1 => write!(f, "f1"),
            PatternName::F2 => write!(f, "f2"),
            PatternName::F3 => write!(f, "f3"),
            PatternName::F4 => write!(f, "f4"),
            PatternName::CaseIv { k } => write!(f, "case-iv:{k}"),
            PatternName::M32Plus(g) => write!(f, "m32+{}", g.token()),
            PatternName::Jump { k, t } => write!(f, "jump:{k},{t}"),
            PatternName::DisjointCliquePlusEdge { k, t, q } => {
                write!(f, "clique-plus-edge:{k},{t},{q}")
            }
        }
    }
}

impl FromStr for PatternName {
    type Err = Error;

    /// Accepts `name` or `name:p1,p2,..`; hyphens/underscores in names are
    /// ignored. Blow-ups nest: `blow-up:t:inner-spec`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let (raw_name, rest) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let name: String = raw_name
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '+')
            .collect();

        if let Some(g) = name.strip_prefix("m32+") {
            if rest.is_some() {
                return Err(Error::InvalidParameter(format!(
                    "m32+7 takes no ':' parameters, got '{s}'"
                )));
            }
            return Ok(PatternName::M32Plus(g.parse()?));
        }
        if name == "blowup" {
            let rest = rest.ok_or_else(|| {
                Error::InvalidParameter("blow-up needs ':t:inner-spec'".into())
            })?;
            let (t_str, inner) = rest.split_once(':').ok_or_else(|| {
                Error::InvalidParameter("blow-up needs ':t:inner-spec'".into())
            })?;
            let t = parse_params(t_str, 1)?[0];
            return Ok(PatternName::BlowUp {
                t,
                base: Box::new(inner.parse()?),
            });
        }

        let params = |count: usize| -> Result<Vec<usize>, Error> {
            match rest {
                Some(r) => parse_params(r, count),
                None => Err(Error::InvalidParameter(format!(
                    "'{raw_name}' needs {count} parameter(s), e.g. '{raw_name}:..'"
                ))),
            }
        };
        let no_params = || -> Result<(), Error> {
            if rest.is_some() {
                Err(Error::InvalidParameter(format!(
                    "'{raw_name}' takes no parameters"
                )))
            } else {
                Ok(())
            }
        };

        Ok(match name.as_str() {
            "complete" => {
                let p = params(2)?;
                PatternName::Complete { k: p[0], t: p[1] }
            }
            "matching" => {
                let p = params(2)?;
                PatternName::Matching { k: p[0], t: p[1] }
            }
            "linearpath" => {
                let p = params(2)?;
                PatternName::LinearPath { k: p[0], t: p[1] }
            }
            "linearcycle" => {
                let p = params(2)?;
                PatternName::LinearCycle { k: p[0], t: p[1] }
            }
            "tightpath" => {
                let p = params(2)?;
                PatternName::TightPath { k: p[0], t: p[1] }
            }
            "star" => {
                let p = params(3)?;
                PatternName::Star {
                    n: p[0],
                    k: p[1],
                    l: p[2],
                }
            }
            "turan" => {
                let p = params(2)?;
                PatternName::TuranGraph { n: p[0], t: p[1] }
            }
            "babertalbot" | "bth" => {
                no_params()?;
                PatternName::BaberTalbotH
            }
            "f1" => {
                no_params()?;
                PatternName::F1
            }
            "f2" => {
                no_params()?;
                PatternName::F2
            }
            "f3" => {
                no_params()?;
                PatternName::F3
            }
            "f4" => {
                no_params()?;
                PatternName::F4
            }
            "caseiv" => {
                let p = params(1)?;
                PatternName::CaseIv { k: p[0] }
            }
            "jump" => {
                let p = params(2)?;
                PatternName::Jump { k: p[0], t: p[1] }
            }
            "cliqueplusedge" => {
                let p = params(3)?;
                PatternName::DisjointCliquePlusEdge {
                    k: p[0],
                    t: p[1],
                    q: p[2],
                }
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown construction '{raw_name}'"
                )))
            }
        })
    }
}

fn parse_params(s: &str, count: usize) -> Result<Vec<usize>, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != count {
        return Err(Error::InvalidParameter(format!(
            "expected {count} comma-separated parameter(s), got '{s}'"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim().parse::<usize>().map_err(|_| {
                Error::InvalidParameter(format!("bad integer parameter '{p}'"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_is_disjoint() {
        let m = matching(3, 2).unwrap();
        assert_eq!(m.n(), 6);
        assert_eq!(m.edges()[0].intersection(m.edges()[1]), VertexSet::EMPTY);
    }

    #[test]
    fn linear_cycle_consecutive_overlap_is_one() {
        let c = linear_cycle(3, 4).unwrap();
        assert_eq!(c.n(), 8);
        assert_eq!(c.edge_count(), 4);
        for e in c.edges() {
            let shared: usize = c
                .edges()
                .iter()
                .filter(|f| **f != *e)
                .map(|f| f.intersection(*e).len())
                .sum();
            assert_eq!(shared, 2); // one vertex with each neighbor
        }
    }

    #[test]
    fn star_edge_count() {
        let s = star(6, 3, 1).unwrap();
        // C(6,3) - C(5,3) = 20 - 10
        assert_eq!(s.edge_count(), 10);
        let s2 = star(7, 3, 2).unwrap();
        assert_eq!(s2.edge_count(), 35 - 10);
    }

    #[test]
    fn turan_graph_partition() {
        let t = turan_graph(7, 3).unwrap();
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        // 21 - C(3,2) - C(2,2) - C(2,2)
        assert_eq!(t.edge_count(), 16);
    }

    #[test]
    fn blow_up_multiplies_edges() {
        let h = baber_talbot_h();
        let b = blow_up(&h, 2).unwrap();
        assert_eq!(b.n(), 12);
        assert_eq!(b.edge_count(), 4 * 8);
    }

    #[test]
    fn case_iv_smallest() {
        let c = case_iv(3).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(
            c.generating_set().maximal(),
            &[
                VertexSet::of(&[0, 1, 2]),
                VertexSet::of(&[0, 3]),
                VertexSet::of(&[1, 3])
            ]
        );
    }

    #[test]
    fn fixed_complex_generators() {
        assert_eq!(
            f2().generating_set().maximal(),
            &[
                VertexSet::of(&[0, 1, 2]),
                VertexSet::of(&[0, 3]),
                VertexSet::of(&[0, 4]),
                VertexSet::of(&[0, 5]),
                VertexSet::of(&[3, 4, 5]),
            ]
        );
        assert_eq!(f4().generating_set().maximal().len(), 8);
    }

    #[test]
    fn crossing_placements_match_reference_graphs() {
        use crate::canonical::isomorphic_uniform;
        for g in CrossingGraph::ALL {
            let placed =
                UniformHypergraph::new(6, 2, g.placement().into_iter()).unwrap();
            assert!(
                isomorphic_uniform(&placed, &g.reference_graph()).unwrap(),
                "placement of {g:?} is not the right graph"
            );
            // Crossing edges only.
            let left = VertexSet::of(&[0, 1, 2]);
            for e in placed.edges() {
                assert_eq!(e.intersection(left).len(), 1);
            }
        }
    }

    #[test]
    fn jump_generators() {
        let j = jump(4, 2).unwrap();
        // Tight path edges {0..3}, {1..4} plus the pair {0,4}.
        assert_eq!(
            j.generating_set().maximal(),
            &[
                VertexSet::of(&[0, 1, 2, 3]),
                VertexSet::of(&[0, 4]),
                VertexSet::of(&[1, 2, 3, 4]),
            ]
        );
    }

    #[test]
    fn name_round_trip() {
        for spec in [
            "complete:3,4",
            "matching:3,2",
            "linear-path:3,3",
            "linear-cycle:3,4",
            "tight-path:4,2",
            "star:6,3,1",
            "turan:7,3",
            "blow-up:2:baber-talbot",
            "baber-talbot",
            "f1",
            "f4",
            "case-iv:3",
            "m32+c4",
            "m32+2k2",
            "jump:4,2",
            "clique-plus-edge:3,2,6",
        ] {
            let name: PatternName = spec.parse().unwrap();
            let display = name.to_string();
            let again: PatternName = display.parse().unwrap();
            assert_eq!(name, again, "round trip failed for {spec}");
            name.build().unwrap();
        }
        assert!("nonsense:1".parse::<PatternName>().is_err());
        assert!("star:6,3".parse::<PatternName>().is_err());
    }
}
