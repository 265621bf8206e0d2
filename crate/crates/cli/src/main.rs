//! `sct` — a workbench for simplicial-complex Turán problems. Commands
//! build named constructions, take downward closures, census generalized
//! cliques, decide (Berge) containment, run structural analyses, solve
//! exact extremal searches with a persistent result cache, evaluate the
//! closed-form counts, and drive the verification suites.
//!
//! Exit codes: 0 success / all checks passed, 1 a check failed, 2 usage
//! error (bad flags or malformed input), 3 search budget exhausted.

mod cache;
mod formats;
mod output;
mod verify;

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sct_core::analysis::{edge_degenerate_ordering, is_l_full, peel, rw_bound_holds};
use sct_core::cliques::count_cliques;
use sct_core::complex::Complex;
use sct_core::constructions::{Built, PatternName};
use sct_core::containment::{berge_contains, contains_complex, contains_uniform, Embedding};
use sct_core::extremal::{solve, Instance, SearchResult, SearchStatus, Witness};
use sct_core::formulas::{self, CountMode, FormulaValue};
use sct_core::hypergraph::UniformHypergraph;
use sct_core::set::VertexSet;
use sct_core::{Budget, SearchOutcome};

use cache::{record_of, Cache};
use output::{sorted_json, Doc, Format};

/// Error carrying its process exit code: 1 failure, 2 usage, 3 budget.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl ToString) -> CliError {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    pub fn failure(message: impl ToString) -> CliError {
        CliError {
            code: 1,
            message: message.to_string(),
        }
    }

    pub fn budget(message: impl ToString) -> CliError {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    pub fn code(&self) -> u8 {
        self.code
    }
}

fn core(e: sct_core::Error) -> CliError {
    CliError::failure(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "sct",
    version,
    about = "Simplicial-complex Turán workbench: constructions, clique censuses, \
             containment, structural analysis, and exact extremal searches."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report output format. Instance-producing commands (construct,
    /// closure) always emit the plain text instance format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Flags shared by the extremal-search commands.
#[derive(Args, Clone)]
struct SearchOpts {
    /// Wall-clock limit in seconds; an exceeded search reports its best
    /// lower bound and exits with code 3.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,

    /// Worker threads (0 = one per core). Results are identical for every
    /// thread count.
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Skip the result cache for both lookup and store.
    #[arg(long)]
    no_cache: bool,

    /// JSON-lines result cache, appended to on exact results.
    #[arg(long, value_name = "FILE", default_value = cache::DEFAULT_CACHE_FILE)]
    cache_file: PathBuf,
}

impl SearchOpts {
    fn budget(&self) -> Budget {
        match self.time_limit {
            Some(s) => Budget::wall(Duration::from_secs_f64(s)),
            None => Budget::unlimited(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusMode {
    /// Cliques of every order, singletons up.
    All,
    /// Cliques of order at least k.
    Geq,
}

impl From<CensusMode> for CountMode {
    fn from(m: CensusMode) -> CountMode {
        match m {
            CensusMode::All => CountMode::All,
            CensusMode::Geq => CountMode::GeqK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnalyzeMode {
    /// Search for an edge-degeneracy ordering.
    Degenerate,
    /// Check l-fullness and list violating (k-1)-sets.
    Full,
    /// Peel down to an l-full sub-hypergraph, reporting per-iteration losses.
    Peel,
    /// Intersection profile and the induced polynomial edge-count bound.
    Profile,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and emit it in the instance file format.
    Construct {
        /// Name plus parameters, e.g. `star:6,3,1`, `matching:3,2`,
        /// `linear-cycle:3,4`, `turan:7,3`, `case-iv:3`, `f1` .. `f4`,
        /// `blow-up:2:complete:2,3`.
        name: String,
    },

    /// Downward-close an instance and emit it in the complex file format.
    Closure {
        /// Instance file, `-` for stdin, or a construction name.
        input: String,
    },

    /// Census of generalized cliques by order.
    Cliques {
        /// Instance file, `-` for stdin, or a construction name.
        input: String,
        /// Uniformity defining the clique notion; defaults to the input's
        /// own uniformity (for a complex: its largest generator size).
        #[arg(long)]
        k: Option<usize>,
    },

    /// Decide whether a host contains a pattern (as a sub-complex, or as a
    /// Berge copy with --berge).
    Contains {
        /// Host: instance file, `-` for stdin, or a construction name.
        host: String,
        /// Pattern: instance file or construction name.
        pattern: String,
        /// Search for a Berge copy of a uniform pattern.
        #[arg(long)]
        berge: bool,
        /// Wall-clock limit in seconds; exit code 3 when exceeded.
        #[arg(long, value_name = "SECONDS")]
        time_limit: Option<f64>,
    },

    /// Structural reports on a uniform hypergraph.
    Analyze {
        /// Instance file, `-` for stdin, or a construction name.
        input: String,
        #[arg(value_enum)]
        mode: AnalyzeMode,
        /// Fullness parameter for `full` and `peel`.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Clique order whose per-iteration loss `peel` bounds; defaults to
        /// the input's uniformity.
        #[arg(long)]
        r: Option<usize>,
    },

    /// Maximum edge count of a pattern-free complex on n vertices.
    Ex {
        /// Forbidden pattern: instance file or construction name (uniform
        /// inputs are closed downward).
        pattern: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchOpts,
    },

    /// Maximum clique count over k-uniform hosts avoiding every forbidden
    /// pattern.
    ExCliques {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Forbidden k-uniform pattern (file or name); repeatable.
        #[arg(long = "forbidden", required = true, value_name = "PATTERN")]
        forbidden: Vec<String>,
        /// Count all cliques or only those of order >= k.
        #[arg(long, value_enum, default_value_t = CensusMode::Geq)]
        mode: CensusMode,
        #[command(flatten)]
        search: SearchOpts,
    },

    /// Maximum number of sub-copies of a target over k-uniform hosts
    /// avoiding a forbidden pattern.
    ExCopies {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Target k-uniform pattern (file or name).
        #[arg(long, value_name = "PATTERN")]
        target: String,
        /// Forbidden k-uniform pattern (file or name).
        #[arg(long, value_name = "PATTERN")]
        forbidden: String,
        #[command(flatten)]
        search: SearchOpts,
    },

    /// Evaluate a closed-form count with its term breakdown.
    Formula {
        /// One of: trivial-lower-bound, matching-clique, star-clique-count,
        /// disjoint-gens, asymptrivial-leading, cliquelin-sum, kmv-ell,
        /// zykov.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Additive slack for trivial-lower-bound.
        #[arg(long, default_value_t = 0)]
        extra: u64,
        /// Census mode for zykov.
        #[arg(long, value_enum, default_value_t = CensusMode::Geq)]
        mode: CensusMode,
    },

    /// Run a verification suite; exits 1 if any instance fails. Known
    /// small-n deviations are reported as pass-with-note.
    Verify {
        /// One of: stars, matchclique, zykov, berge, caseiv, f4, peel.
        suite: String,
        /// RNG seed for the randomized suites (berge, peel).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Instance count for the randomized suites (berge: 500, peel: 200).
        #[arg(long)]
        cases: Option<usize>,
        /// Grid ceiling for stars; side length for f4.
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        /// Uniformity (matchclique: 2, caseiv: 3).
        #[arg(long)]
        k: Option<usize>,
        /// Forbidden-structure size (matchclique: 2) or clique order
        /// (zykov: 3).
        #[arg(long)]
        t: Option<usize>,
        /// Inclusive vertex-count range `lo..hi` (matchclique: 4..6,
        /// zykov: 7..7, caseiv: 6..7).
        #[arg(long, value_name = "LO..HI")]
        n_range: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Wall-clock limit in seconds per search inside the suite.
        #[arg(long, value_name = "SECONDS")]
        time_limit: Option<f64>,
    },
}

/// A command's printable result plus the process exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn main() {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &outcome.text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    std::process::exit(1);
                }
            } else {
                print!("{}", outcome.text);
            }
            std::process::exit(outcome.code as i32);
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code() as i32);
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Construct { name } => construct(&name),
        Command::Closure { input } => closure_cmd(&input),
        Command::Cliques { input, k } => cliques_cmd(&input, k, format),
        Command::Contains {
            host,
            pattern,
            berge,
            time_limit,
        } => contains_cmd(&host, &pattern, berge, time_limit, format),
        Command::Analyze { input, mode, l, r } => analyze_cmd(&input, mode, l, r, format),
        Command::Ex { pattern, n, search } => ex_cmd(&pattern, n, &search, format),
        Command::ExCliques {
            n,
            k,
            forbidden,
            mode,
            search,
        } => ex_cliques_cmd(n, k, &forbidden, mode, &search, format),
        Command::ExCopies {
            n,
            k,
            target,
            forbidden,
            search,
        } => ex_copies_cmd(n, k, &target, &forbidden, &search, format),
        Command::Formula {
            name,
            n,
            k,
            t,
            l,
            extra,
            mode,
        } => formula_cmd(&name, n, k, t, l, extra, mode, format),
        Command::Verify {
            suite,
            seed,
            cases,
            max_n,
            k,
            t,
            n_range,
            threads,
            time_limit,
        } => verify_cmd(VerifyArgs {
            suite,
            seed,
            cases,
            max_n,
            k,
            t,
            n_range,
            threads,
            time_limit,
            format,
        }),
    }
}

// ---------------------------------------------------------------- loading

/// A resolved instance argument.
enum Loaded {
    Uniform(UniformHypergraph),
    Complex(Complex),
}

/// Resolve a positional instance argument: an existing file (or `-` for
/// stdin) is parsed in the instance format; anything else is treated as a
/// construction name.
fn load(arg: &str) -> Result<Loaded, CliError> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        Some(buf)
    } else if Path::new(arg).is_file() {
        Some(
            std::fs::read_to_string(arg)
                .map_err(|e| CliError::usage(format!("{arg}: {e}")))?,
        )
    } else {
        None
    };

    if let Some(text) = text {
        let parsed = formats::parse_auto(&text)?;
        for w in &parsed.warnings {
            eprintln!("warning: {arg}: {w}");
        }
        return Ok(match parsed.value {
            formats::Parsed::Uniform(g) => Loaded::Uniform(g),
            formats::Parsed::Complex(c) => Loaded::Complex(c),
        });
    }

    match PatternName::from_str(arg) {
        Ok(name) => Ok(match name.build().map_err(core)? {
            Built::Uniform(g) => Loaded::Uniform(g),
            Built::Complex(c) => Loaded::Complex(c),
        }),
        Err(e) => Err(CliError::usage(format!(
            "`{arg}` is neither an existing file nor a construction name ({e})"
        ))),
    }
}

impl Loaded {
    fn into_complex(self) -> Result<Complex, CliError> {
        match self {
            Loaded::Complex(c) => Ok(c),
            Loaded::Uniform(g) => {
                Complex::downward_closure(g.n(), g.edges().iter().copied()).map_err(core)
            }
        }
    }

    /// Coerce to a `k`-uniform hypergraph: uniform input must match `k`;
    /// a complex qualifies when all its generators have size `k`.
    fn into_uniform(self, k: usize, what: &str) -> Result<UniformHypergraph, CliError> {
        match self {
            Loaded::Uniform(g) => {
                if g.k() == k {
                    Ok(g)
                } else {
                    Err(CliError::usage(format!(
                        "{what} is {}-uniform, expected {k}-uniform",
                        g.k()
                    )))
                }
            }
            Loaded::Complex(c) => {
                let gens = c.generating_set().maximal().to_vec();
                if !gens.is_empty() && gens.iter().all(|s| s.len() == k) {
                    UniformHypergraph::new(c.n(), k, gens).map_err(core)
                } else {
                    Err(CliError::usage(format!(
                        "{what} is a complex with mixed generator sizes, \
                         expected a {k}-uniform hypergraph"
                    )))
                }
            }
        }
    }

    /// The input's own uniformity: a complex contributes its largest
    /// generator size.
    fn natural_k(&self) -> usize {
        match self {
            Loaded::Uniform(g) => g.k(),
            Loaded::Complex(c) => c.generating_set().max_edge_size().max(2),
        }
    }
}

fn set_text(s: VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// --------------------------------------------------------------- commands

fn construct(name: &str) -> Result<Outcome, CliError> {
    let parsed = PatternName::from_str(name)
        .map_err(|e| CliError::usage(format!("construction `{name}`: {e}")))?;
    let built = parsed.build().map_err(core)?;
    let body = match &built {
        Built::Uniform(g) => formats::render_uniform(g),
        Built::Complex(c) => formats::render_complex(c),
    };
    Ok(Outcome::ok(format!("# {parsed}\n{body}")))
}

fn closure_cmd(input: &str) -> Result<Outcome, CliError> {
    let c = load(input)?.into_complex()?;
    Ok(Outcome::ok(formats::render_complex(&c)))
}

fn cliques_cmd(input: &str, k: Option<usize>, format: Format) -> Result<Outcome, CliError> {
    let loaded = load(input)?;
    let k = k.unwrap_or_else(|| loaded.natural_k());
    let c = loaded.into_complex()?;
    let census = count_cliques(&c, k).map_err(core)?;
    let doc = Doc::default()
        .kv("n", c.n())
        .kv("k", k)
        .kv("total_geq_k", census.total_geq_k)
        .kv("total_all", census.total_all)
        .with_table(
            ["order", "count"],
            census
                .by_order
                .iter()
                .map(|(order, count)| vec![order.to_string(), count.to_string()])
                .collect(),
        );
    Ok(Outcome::ok(doc.emit(format)))
}

fn contains_cmd(
    host: &str,
    pattern: &str,
    berge: bool,
    time_limit: Option<f64>,
    format: Format,
) -> Result<Outcome, CliError> {
    let budget = match time_limit {
        Some(s) => Budget::wall(Duration::from_secs_f64(s)),
        None => Budget::unlimited(),
    };
    let host_loaded = load(host)?;
    let pattern_loaded = load(pattern)?;

    let (route, outcome): (&str, SearchOutcome<Embedding>) = if berge {
        let p = match pattern_loaded {
            Loaded::Uniform(g) => g,
            Loaded::Complex(_) => {
                return Err(CliError::usage(
                    "--berge needs a uniform pattern; a complex has no Berge copies",
                ))
            }
        };
        let h = host_loaded.into_complex()?;
        ("berge", berge_contains(&h, &p, &budget).map_err(core)?)
    } else {
        match (host_loaded, pattern_loaded) {
            (Loaded::Uniform(h), Loaded::Uniform(p)) if h.k() == p.k() => (
                "uniform",
                contains_uniform(&h, &p, &budget).map_err(core)?,
            ),
            (h, p) => {
                let h = h.into_complex()?;
                let p = p.into_complex()?;
                ("complex", contains_complex(&h, &p, &budget).map_err(core)?)
            }
        }
    };

    let mut doc = Doc::default().kv("route", route);
    let code = match outcome {
        SearchOutcome::Found(emb) => {
            let map = emb
                .map
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{i}->{v}"))
                .collect::<Vec<_>>()
                .join(" ");
            doc = doc.kv("contains", true).kv("embedding", map);
            0
        }
        SearchOutcome::Absent => {
            doc = doc.kv("contains", false);
            0
        }
        SearchOutcome::BudgetExhausted => {
            doc = doc.kv("contains", "unknown").kv("status", "budget-exhausted");
            3
        }
    };
    Ok(Outcome {
        text: doc.emit(format),
        code,
    })
}

fn analyze_cmd(
    input: &str,
    mode: AnalyzeMode,
    l: usize,
    r: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let loaded = load(input)?;
    let k = loaded.natural_k();
    let g = loaded.into_uniform(k, "analyze input")?;
    let doc = match mode {
        AnalyzeMode::Degenerate => {
            let ordering = edge_degenerate_ordering(&g).map_err(core)?;
            let mut doc = Doc::default()
                .kv("n", g.n())
                .kv("k", g.k())
                .kv("edges", g.edge_count())
                .kv("edge_degenerate", ordering.is_some());
            if let Some(order) = ordering {
                let edges = g.edges();
                doc = doc.with_table(
                    ["position", "edge_index", "edge"],
                    order
                        .iter()
                        .enumerate()
                        .map(|(pos, &i)| {
                            vec![pos.to_string(), i.to_string(), set_text(edges[i])]
                        })
                        .collect(),
                );
            }
            doc
        }
        AnalyzeMode::Full => {
            let full = is_l_full(&g, l).map_err(core)?;
            let violators: Vec<Vec<String>> = VertexSet::full(g.n())
                .subsets_of_size(g.k() - 1)
                .into_iter()
                .filter_map(|s| {
                    let d = g.degree_of_set(s);
                    (d > 0 && d < l).then(|| vec![set_text(s), d.to_string()])
                })
                .collect();
            Doc::default()
                .kv("n", g.n())
                .kv("k", g.k())
                .kv("l", l)
                .kv("full", full)
                .kv("violating_sets", violators.len())
                .with_table(["set", "degree"], violators)
        }
        AnalyzeMode::Peel => {
            let r = r.unwrap_or(g.k());
            let report = peel(&g, l, r).map_err(core)?;
            Doc::default()
                .kv("n", g.n())
                .kv("k", g.k())
                .kv("l", l)
                .kv("clique_order", report.clique_order)
                .kv("iterations", report.iterations.len())
                .kv("remaining_edges", report.remaining.edge_count())
                .kv("destroyed_geq_k", report.total_destroyed_geq_k)
                .kv("per_iteration_bound", report.per_iteration_bound.to_string())
                .with_table(
                    ["iteration", "deleted_set", "edges_removed", "destroyed_at_order"],
                    report
                        .iterations
                        .iter()
                        .enumerate()
                        .map(|(i, it)| {
                            vec![
                                i.to_string(),
                                set_text(it.deleted),
                                it.edges_removed.to_string(),
                                it.destroyed_by_order
                                    .get(&r)
                                    .copied()
                                    .unwrap_or(0)
                                    .to_string(),
                            ]
                        })
                        .collect(),
                )
        }
        AnalyzeMode::Profile => {
            let pb = rw_bound_holds(&g);
            let profile = pb
                .profile
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            Doc::default()
                .kv("n", g.n())
                .kv("k", g.k())
                .kv("edges", pb.edge_count)
                .kv("profile", profile)
                .kv("bound", pb.bound.to_string())
                .kv("holds", pb.holds)
        }
    };
    Ok(Outcome::ok(doc.emit(format)))
}

/// Shared driver for the three search commands: cache lookup, solve,
/// cache store, render. Budget-limited runs exit 3.
fn run_search(
    instance: Instance,
    search: &SearchOpts,
    command: &str,
    parameters: BTreeMap<String, String>,
    format: Format,
) -> Result<Outcome, CliError> {
    let cache = (!search.no_cache).then(|| Cache::at(search.cache_file.clone()));
    let mut cached = false;
    let result: SearchResult = match cache
        .as_ref()
        .map(|c| c.lookup(&instance))
        .transpose()?
        .flatten()
    {
        Some(hit) => {
            cached = true;
            hit
        }
        None => {
            let r = solve(&instance, &search.budget(), search.threads).map_err(core)?;
            if r.status == SearchStatus::Exact {
                if let Some(c) = &cache {
                    c.append(&record_of(&r, command, parameters))?;
                }
            }
            r
        }
    };
    if cached {
        eprintln!("note: cache hit in {}", search.cache_file.display());
    }

    let code = match result.status {
        SearchStatus::Exact => 0,
        SearchStatus::LowerBoundOnly => 3,
    };
    if format == Format::Json {
        return Ok(Outcome {
            text: sorted_json(&result),
            code,
        });
    }

    let witness_lines: Vec<Vec<String>> = match &result.witness {
        Witness::Complex(gens) => gens.maximal().iter().map(|s| vec![set_text(*s)]).collect(),
        Witness::Uniform(g) => g.edges().iter().map(|e| vec![set_text(*e)]).collect(),
    };
    let doc = Doc::default()
        .kv("instance_key", &result.instance_key)
        .kv("optimum", result.optimum)
        .kv(
            "status",
            match result.status {
                SearchStatus::Exact => "exact",
                SearchStatus::LowerBoundOnly => "lower-bound-only",
            },
        )
        .kv("nodes", result.nodes_explored)
        .kv("seconds", format!("{:.3}", result.wall_seconds))
        .kv("cached", cached)
        .with_table(["witness_edge"], witness_lines);
    Ok(Outcome {
        text: doc.emit(format),
        code,
    })
}

fn ex_cmd(
    pattern: &str,
    n: usize,
    search: &SearchOpts,
    format: Format,
) -> Result<Outcome, CliError> {
    let p = load(pattern)?.into_complex()?;
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("pattern".into(), pattern.to_string());
    run_search(Instance::MaxEdges { n, pattern: p }, search, "ex", params, format)
}

fn ex_cliques_cmd(
    n: usize,
    k: usize,
    forbidden: &[String],
    mode: CensusMode,
    search: &SearchOpts,
    format: Format,
) -> Result<Outcome, CliError> {
    let mut list = Vec::new();
    for (i, f) in forbidden.iter().enumerate() {
        list.push(load(f)?.into_uniform(k, &format!("--forbidden #{}", i + 1))?);
    }
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("k".into(), k.to_string());
    params.insert("mode".into(), format!("{:?}", CountMode::from(mode)));
    params.insert("forbidden".into(), forbidden.join("; "));
    run_search(
        Instance::MaxCliques {
            n,
            k,
            forbidden: list,
            mode: mode.into(),
        },
        search,
        "ex-cliques",
        params,
        format,
    )
}

fn ex_copies_cmd(
    n: usize,
    k: usize,
    target: &str,
    forbidden: &str,
    search: &SearchOpts,
    format: Format,
) -> Result<Outcome, CliError> {
    let t = load(target)?.into_uniform(k, "--target")?;
    let f = load(forbidden)?.into_uniform(k, "--forbidden")?;
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("k".into(), k.to_string());
    params.insert("target".into(), target.to_string());
    params.insert("forbidden".into(), forbidden.to_string());
    run_search(
        Instance::MaxCopies {
            n,
            k,
            target: t,
            forbidden: f,
        },
        search,
        "ex-copies",
        params,
        format,
    )
}

fn require_param(value: Option<usize>, flag: &str, formula: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::usage(format!("formula {formula} needs --{flag}")))
}

#[allow(clippy::too_many_arguments)]
fn formula_cmd(
    name: &str,
    n: Option<usize>,
    k: Option<usize>,
    t: Option<usize>,
    l: Option<usize>,
    extra: u64,
    mode: CensusMode,
    format: Format,
) -> Result<Outcome, CliError> {
    let canon: String = name
        .to_ascii_lowercase()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect();
    let value: FormulaValue = match canon.as_str() {
        "triviallowerbound" => formulas::trivial_lower_bound(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            extra,
        )
        .map_err(core)?,
        "matchingclique" => formulas::matching_clique_formula(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            require_param(t, "t", name)?,
        )
        .map_err(core)?,
        "starcliquecount" => formulas::star_clique_count(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            require_param(l, "l", name)?,
        )
        .map_err(core)?,
        "disjointgens" => formulas::disjoint_gens_formula(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            require_param(t, "t", name)?,
        )
        .map_err(core)?,
        "asymptrivialleading" => formulas::asymptrivial_leading(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            require_param(t, "t", name)?,
        )
        .map_err(core)?,
        "cliquelinsum" => formulas::cliquelin_sum(
            require_param(n, "n", name)?,
            require_param(k, "k", name)?,
            require_param(t, "t", name)?,
        )
        .map_err(core)?,
        "kmvell" => {
            let v = formulas::kmv_ell(require_param(t, "t", name)?).map_err(core)?;
            let doc = Doc::default().kv("formula", name).kv("value", v);
            return Ok(Outcome::ok(doc.emit(format)));
        }
        "zykov" => formulas::zykov_count(
            require_param(n, "n", name)?,
            require_param(t, "t", name)?,
            mode.into(),
        )
        .map_err(core)?,
        _ => {
            return Err(CliError::usage(format!(
                "unknown formula `{name}`; expected one of trivial-lower-bound, \
                 matching-clique, star-clique-count, disjoint-gens, \
                 asymptrivial-leading, cliquelin-sum, kmv-ell, zykov"
            )))
        }
    };
    let doc = Doc::default()
        .kv("formula", name)
        .kv("value", value.value.to_string())
        .with_table(
            ["term", "value"],
            value
                .terms
                .iter()
                .map(|(term, v)| vec![term.clone(), v.to_string()])
                .collect(),
        );
    Ok(Outcome::ok(doc.emit(format)))
}

struct VerifyArgs {
    suite: String,
    seed: u64,
    cases: Option<usize>,
    max_n: usize,
    k: Option<usize>,
    t: Option<usize>,
    n_range: Option<String>,
    threads: usize,
    time_limit: Option<f64>,
    format: Format,
}

/// Inclusive `lo..hi`; a bare number means a single value.
fn parse_range(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::usage(format!("bad range `{spec}`; expected `lo..hi`"));
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (
            a.parse::<usize>().map_err(|_| bad())?,
            b.parse::<usize>().map_err(|_| bad())?,
        ),
        None => {
            let v = spec.parse::<usize>().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn verify_cmd(args: VerifyArgs) -> Result<Outcome, CliError> {
    let budget = match args.time_limit {
        Some(s) => Budget::wall(Duration::from_secs_f64(s)),
        None => Budget::unlimited(),
    };
    let range = |default: (usize, usize)| -> Result<(usize, usize), CliError> {
        match &args.n_range {
            Some(spec) => parse_range(spec),
            None => Ok(default),
        }
    };

    let report = match args.suite.as_str() {
        "stars" => verify::stars(args.max_n)?,
        "matchclique" => verify::matchclique(
            args.k.unwrap_or(2),
            args.t.unwrap_or(2),
            range((4, 6))?,
            args.threads,
            &budget,
        )?,
        "zykov" => {
            let (lo, hi) = range((7, 7))?;
            let t = args.t.unwrap_or(3);
            let mut rows = Vec::new();
            for n in lo..=hi {
                rows.extend(verify::zykov(n, t, args.threads, &budget)?.rows);
            }
            verify::VerifyReport {
                suite: "zykov".into(),
                rows,
            }
        }
        "berge" => verify::berge(args.cases.unwrap_or(500), args.seed)?,
        "caseiv" => verify::caseiv(
            args.k.unwrap_or(3),
            range((6, 7))?,
            args.threads,
            &budget,
        )?,
        "f4" => verify::f4(args.max_n, args.max_n)?,
        "peel" => verify::peel_suite(args.cases.unwrap_or(200), args.seed)?,
        other => {
            return Err(CliError::usage(format!(
                "unknown suite `{other}`; expected one of stars, matchclique, \
                 zykov, berge, caseiv, f4, peel"
            )))
        }
    };

    let code = if report.failures() > 0 { 1 } else { 0 };
    Ok(Outcome {
        text: report.to_doc().emit(args.format),
        code,
    })
}
