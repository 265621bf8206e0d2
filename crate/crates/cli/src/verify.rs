//! Verification suites: each runs a family of instances against an
//! independent prediction (closed formula, second implementation, or a
//! structural guarantee) and reports per-instance rows. Known small-`n`
//! deviations — where an exhaustive optimum beats the asymptotic formula —
//! are recorded with their exact values and count as passes with a note.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sct_core::analysis::{is_l_full, peel};
use sct_core::canonical::isomorphic_uniform;
use sct_core::cliques::count_cliques;
use sct_core::complex::Complex;
use sct_core::constructions;
use sct_core::containment::{berge_contains, berge_contains_direct, contains_complex, contains_uniform};
use sct_core::extremal::{
    max_cliques_forbidden, max_edges_pattern_free, verify_witness, Instance, SearchStatus,
};
use sct_core::formulas::{
    binomial, star_clique_count, matching_clique_formula, trivial_lower_bound, zykov_count,
    CountMode,
};
use sct_core::hypergraph::UniformHypergraph;
use sct_core::set::VertexSet;
use sct_core::Budget;

use crate::output::Doc;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    PassWithNote,
    Fail,
}

impl std::fmt::Display for RowStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RowStatus::Pass => "pass",
            RowStatus::PassWithNote => "pass-with-note",
            RowStatus::Fail => "fail",
        })
    }
}

pub struct VerifyRow {
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub status: RowStatus,
    pub note: Option<String>,
}

impl VerifyRow {
    fn pass(instance: impl ToString, value: impl ToString) -> VerifyRow {
        let v = value.to_string();
        VerifyRow {
            instance: instance.to_string(),
            expected: v.clone(),
            actual: v,
            status: RowStatus::Pass,
            note: None,
        }
    }

    fn of(
        instance: impl ToString,
        expected: impl ToString,
        actual: impl ToString,
        ok: bool,
    ) -> VerifyRow {
        VerifyRow {
            instance: instance.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
            note: None,
        }
    }

    /// Attach an informational note without touching the status.
    fn noted(mut self, note: impl ToString) -> VerifyRow {
        self.note = Some(note.to_string());
        self
    }

    /// Record a known deviation: noted, and a pass is downgraded to
    /// pass-with-note so reports distinguish it from clean agreement.
    fn deviation(mut self, note: impl ToString) -> VerifyRow {
        self.note = Some(note.to_string());
        if self.status == RowStatus::Pass {
            self.status = RowStatus::PassWithNote;
        }
        self
    }
}

pub struct VerifyReport {
    pub suite: String,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == RowStatus::Fail)
            .count()
    }

    pub fn to_doc(&self) -> Doc {
        let notes: Vec<&VerifyRow> = self.rows.iter().filter(|r| r.note.is_some()).collect();
        let mut doc = Doc::default()
            .kv("suite", &self.suite)
            .kv("instances", self.rows.len())
            .kv("failures", self.failures());
        for r in &notes {
            doc = doc.kv(
                &format!("note[{}]", r.instance),
                r.note.as_deref().unwrap_or(""),
            );
        }
        doc.with_table(
            ["instance", "expected", "actual", "status"],
            self.rows
                .iter()
                .map(|r| {
                    vec![
                        r.instance.clone(),
                        r.expected.clone(),
                        r.actual.clone(),
                        r.status.to_string(),
                    ]
                })
                .collect(),
        )
    }
}

fn closure(g: &UniformHypergraph) -> Result<Complex, CliError> {
    Complex::downward_closure(g.n(), g.edges().iter().copied())
        .map_err(|e| CliError::failure(e.to_string()))
}

fn core(e: sct_core::Error) -> CliError {
    CliError::failure(e.to_string())
}

/// Closed star formula vs direct clique enumeration over the whole grid
/// 2 <= k <= min(5, n), 1 <= l <= min(4, n), k <= n <= max_n.
pub fn stars(max_n: usize) -> Result<VerifyReport, CliError> {
    let mut rows = Vec::new();
    for k in 2..=5usize {
        for n in k..=max_n {
            for l in 1..=4.min(n) {
                let star = constructions::star(n, k, l).map_err(core)?;
                let census = count_cliques(&closure(&star)?, k).map_err(core)?;
                let formula = star_clique_count(n, k, l)
                    .map_err(core)?
                    .as_u64()
                    .expect("desk-scale counts fit in u64");
                rows.push(VerifyRow::of(
                    format!("star n={n} k={k} l={l}"),
                    formula,
                    census.total_geq_k,
                    census.total_geq_k == formula,
                ));
            }
        }
    }
    Ok(VerifyReport {
        suite: "stars".into(),
        rows,
    })
}

/// Exhaustive matching-free clique maxima vs the closed formula. The
/// formula is a guaranteed lower bound (the star construction attains it),
/// so an optimum strictly above it is the expected small-`n` deviation and
/// is recorded, not failed.
pub fn matchclique(
    k: usize,
    t: usize,
    n_range: (usize, usize),
    threads: usize,
    budget: &Budget,
) -> Result<VerifyReport, CliError> {
    let matching = constructions::matching(k, t).map_err(core)?;
    let mut rows = Vec::new();
    for n in n_range.0..=n_range.1 {
        let r = max_cliques_forbidden(
            n,
            k,
            std::slice::from_ref(&matching),
            CountMode::GeqK,
            budget,
            threads,
        )
        .map_err(core)?;
        let formula = matching_clique_formula(n, k, t)
            .map_err(core)?
            .as_u64()
            .expect("desk-scale counts fit in u64");
        let instance = format!("matching-free n={n} k={k} t={t}");
        if r.status != SearchStatus::Exact {
            rows.push(VerifyRow::of(instance, formula, r.optimum, false).noted(
                "search budget exhausted before the space was covered",
            ));
        } else if r.optimum == formula {
            rows.push(VerifyRow::pass(instance, formula));
        } else if r.optimum > formula {
            let digest = r
                .witness
                .canonical_digest()
                .map_err(core)?;
            rows.push(
                VerifyRow::of(instance, formula, r.optimum, true).deviation(format!(
                    "small-n deviation: exhaustive optimum exceeds the formula \
                     by {} (witness canonical form {digest})",
                    r.optimum - formula
                )),
            );
        } else {
            rows.push(VerifyRow::of(instance, formula, r.optimum, false).noted(
                "optimum fell below the star construction: counting bug",
            ));
        }
    }
    Ok(VerifyReport {
        suite: "matchclique".into(),
        rows,
    })
}

/// Exhaustive clique maxima over K_{t+1}-free graphs vs the symmetric-sum
/// count on the balanced complete t-partite graph, both census modes, plus
/// the witness isomorphism.
pub fn zykov(
    n: usize,
    t: usize,
    threads: usize,
    budget: &Budget,
) -> Result<VerifyReport, CliError> {
    let forbidden = UniformHypergraph::complete(t + 1, 2).map_err(core)?;
    let turan = constructions::turan_graph(n, t).map_err(core)?;
    let mut rows = Vec::new();
    for mode in [CountMode::GeqK, CountMode::All] {
        let r = max_cliques_forbidden(
            n,
            2,
            std::slice::from_ref(&forbidden),
            mode,
            budget,
            threads,
        )
        .map_err(core)?;
        let formula = zykov_count(n, t, mode)
            .map_err(core)?
            .as_u64()
            .expect("desk-scale counts fit in u64");
        let mode_name = match mode {
            CountMode::All => "all",
            CountMode::GeqK => "geq_2",
        };
        let ok = r.status == SearchStatus::Exact && r.optimum == formula;
        rows.push(VerifyRow::of(
            format!("k{}-free n={n} mode={mode_name}", t + 1),
            formula,
            r.optimum,
            ok,
        ));
        let sct_core::extremal::Witness::Uniform(w) = &r.witness else {
            return Err(CliError::failure("clique search returned a complex witness"));
        };
        let iso = isomorphic_uniform(w, &turan).map_err(core)?;
        rows.push(VerifyRow::of(
            format!("witness n={n} mode={mode_name} isomorphic to balanced {t}-partite"),
            true,
            iso,
            iso,
        ));
    }
    Ok(VerifyReport {
        suite: "zykov".into(),
        rows,
    })
}

/// Two independent Berge-containment routes (closure of the pattern vs
/// direct edge-expansion search) on seeded random instances.
pub fn berge(cases: usize, seed: u64) -> Result<VerifyReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unlimited = Budget::unlimited();
    let mut rows = Vec::new();
    let mut agreements = 0usize;
    let mut found = 0usize;
    for case in 0..cases {
        let k = if rng.gen_bool(0.5) { 2 } else { 3 };
        let host_n = rng.gen_range(k.max(4)..=8);
        let density = rng.gen_range(0.15..0.6);
        let host_graph = random_uniform(&mut rng, host_n, k, density);
        let host = closure(&host_graph)?;
        let pattern = loop {
            let np = rng.gen_range(k + 1..=5.min(host_n));
            let p = rng.gen_range(0.3..0.8);
            let g = random_uniform(&mut rng, np, k, p);
            if g.edge_count() >= 1 && g.edge_count() <= 4 {
                if let Some(compact) = compact_support(&g) {
                    break compact;
                }
            }
        };
        let via_closure = berge_contains(&host, &pattern, &unlimited)
            .map_err(core)?
            .is_found();
        let direct = berge_contains_direct(&host, &pattern, &unlimited)
            .map_err(core)?
            .is_found();
        if via_closure == direct {
            agreements += 1;
            found += via_closure as usize;
        } else {
            rows.push(VerifyRow::of(
                format!("case {case}: host {host_graph}, pattern {pattern}"),
                "routes agree",
                format!("closure={via_closure} direct={direct}"),
                false,
            ));
        }
    }
    rows.insert(
        0,
        VerifyRow::of(
            format!("agreement on {cases} seeded instances (seed {seed})"),
            cases,
            agreements,
            agreements == cases,
        )
        .noted(format!("{found} instances contained a Berge copy")),
    );
    Ok(VerifyReport {
        suite: "berge".into(),
        rows,
    })
}

/// Exact pattern-free extremal numbers for the pendant-pair pattern family
/// vs the everything-below-the-uniformity bound.
pub fn caseiv(
    k: usize,
    n_range: (usize, usize),
    threads: usize,
    budget: &Budget,
) -> Result<VerifyReport, CliError> {
    let pattern = constructions::case_iv(k).map_err(core)?;
    let mut rows = Vec::new();
    for n in n_range.0..=n_range.1 {
        let r = max_edges_pattern_free(n, &pattern, budget, threads).map_err(core)?;
        let expected = trivial_lower_bound(n, k, 0)
            .map_err(core)?
            .as_u64()
            .expect("desk-scale counts fit in u64");
        let instance = Instance::MaxEdges {
            n,
            pattern: pattern.clone(),
        };
        let verified = verify_witness(&r, &instance).map_err(core)?;
        let exact = r.status == SearchStatus::Exact;
        let ok = exact && verified && r.optimum >= expected;
        let mut row = VerifyRow::of(
            format!("ex(n={n}, pendant-pair k={k})"),
            expected,
            r.optimum,
            ok,
        );
        if !exact {
            row = row.noted("budget exhausted: lower bound only");
        } else if !verified {
            row = row.noted("witness failed re-verification");
        } else if r.optimum < expected {
            row = row.noted(
                "optimum fell below the everything-small construction: search bug",
            );
        } else if r.optimum > expected {
            row = row.deviation(format!(
                "verified optimum exceeds the everything-small value by {}",
                r.optimum - expected
            ));
        }
        rows.push(row);
    }
    Ok(VerifyReport {
        suite: "caseiv".into(),
        rows,
    })
}

/// The two-sided construction on `n_left + n_right` vertices: certified
/// free of the doubled-triple-with-six-cross-pairs pattern, with its
/// 3-layer size pinned to |E(G)| * n_right and the base graph certified
/// 4-cycle-free.
pub fn f4(n_left: usize, n_right: usize) -> Result<VerifyReport, CliError> {
    let built =
        constructions::f4_lower_bound_construction(n_left, n_right).map_err(core)?;
    let unlimited = Budget::unlimited();
    let mut rows = Vec::new();

    let pattern = constructions::f4();
    let contains = contains_complex(&built.complex, &pattern, &unlimited)
        .map_err(core)?
        .is_found();
    rows.push(VerifyRow::of(
        format!("construction({n_left},{n_right}) contains the forbidden pattern"),
        false,
        contains,
        !contains,
    ));

    let m3 = built
        .complex
        .edge_counts()
        .map_err(core)?
        .get(&3)
        .copied()
        .unwrap_or(0);
    let expected = built.base_graph.edge_count() as u64 * n_right as u64;
    rows.push(VerifyRow::of(
        format!("3-layer size = |E(G)| * {n_right}"),
        expected,
        m3,
        m3 == expected,
    ));

    let c4 = constructions::linear_cycle(2, 4).map_err(core)?;
    let has_c4 = contains_uniform(&built.base_graph, &c4, &unlimited)
        .map_err(core)?
        .is_found();
    rows.push(
        VerifyRow::of("base graph contains a 4-cycle", false, has_c4, !has_c4).noted(
            format!("|E(G)| = {}", built.base_graph.edge_count()),
        ),
    );

    Ok(VerifyReport {
        suite: "f4".into(),
        rows,
    })
}

/// Peeling guarantees on seeded random 3-graphs: the result is l-full, the
/// iteration count never exceeds the number of (k-1)-sets, and no single
/// iteration destroys more order-r cliques than C(l-1, r-2).
pub fn peel_suite(cases: usize, seed: u64) -> Result<VerifyReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut violations = 0usize;
    let mut iterations_total = 0usize;
    for case in 0..cases {
        let n = rng.gen_range(5..=10);
        let l = rng.gen_range(1..=3);
        let r = rng.gen_range(3..=5);
        let density = rng.gen_range(0.1..0.6);
        let g = random_uniform(&mut rng, n, 3, density);
        let report = peel(&g, l, r).map_err(core)?;
        iterations_total += report.iterations.len();

        let full = is_l_full(&report.remaining, l).map_err(core)?;
        let pair_count: u64 = binomial(n as u64, 2).try_into().unwrap_or(u64::MAX);
        let iter_bound = report.iterations.len() as u64 <= pair_count;
        let loss_cap: u64 = report
            .per_iteration_bound
            .clone()
            .try_into()
            .unwrap_or(u64::MAX);
        let per_iter = report.iterations.iter().all(|it| {
            it.destroyed_by_order.get(&r).copied().unwrap_or(0) <= loss_cap
        });
        if !(full && iter_bound && per_iter) {
            violations += 1;
            rows.push(VerifyRow::of(
                format!("case {case}: n={n} l={l} r={r} graph {g}"),
                "full, iteration and loss bounds",
                format!("full={full} iter_bound={iter_bound} per_iter={per_iter}"),
                false,
            ));
        }
    }
    rows.insert(
        0,
        VerifyRow::of(
            format!("{cases} seeded random 3-graphs (seed {seed})"),
            "0 violations",
            format!("{violations} violations"),
            violations == 0,
        )
        .noted(format!("{iterations_total} peel iterations exercised")),
    );
    Ok(VerifyReport {
        suite: "peel".into(),
        rows,
    })
}

fn random_uniform(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> UniformHypergraph {
    let edges = VertexSet::full(n)
        .subsets_of_size(k)
        .into_iter()
        .filter(|_| rng.gen_bool(p));
    UniformHypergraph::new(n, k, edges).expect("sampled edges are distinct")
}

/// Relabel a hypergraph onto its support so the ground set carries no
/// isolated vertices; `None` when every vertex is isolated.
fn compact_support(g: &UniformHypergraph) -> Option<UniformHypergraph> {
    let support = g.support();
    if support.is_empty() {
        return None;
    }
    let mut map = vec![usize::MAX; g.n()];
    for (i, v) in support.iter().enumerate() {
        map[v] = i;
    }
    UniformHypergraph::new(
        support.len(),
        g.k(),
        g.edges().iter().map(|e| e.relabel(&map)),
    )
    .ok()
}
