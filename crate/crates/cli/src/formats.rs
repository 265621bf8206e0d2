//! Plain-text instance files.
//!
//! Uniform hypergraph: the first significant line is `n k`; every further
//! line lists the `k` vertices of one edge. Complex: the first significant
//! line is just `n`; every further line is one generating edge of size >= 2
//! (the empty set and singletons are always implied). `#` starts a comment,
//! blank lines are skipped, and vertex ids are 0-based. Errors cite the
//! offending line.

use sct_core::complex::Complex;
use sct_core::hypergraph::UniformHypergraph;
use sct_core::set::VertexSet;
use std::fmt::Write as _;

use crate::CliError;

/// A parsed instance file of either kind.
#[derive(Debug)]
pub enum Parsed {
    Uniform(UniformHypergraph),
    Complex(Complex),
}

/// Warnings raised while parsing (currently: non-antichain generators).
#[derive(Debug)]
pub struct ParseOutput<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_ids(lineno: usize, line: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut ids = Vec::new();
    for tok in line.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| {
            CliError::usage(format!("line {lineno}: `{tok}` is not a vertex id"))
        })?;
        if v >= n {
            return Err(CliError::usage(format!(
                "line {lineno}: vertex {v} out of range (n = {n})"
            )));
        }
        ids.push(v);
    }
    Ok(ids)
}

fn to_set(lineno: usize, ids: &[usize]) -> Result<VertexSet, CliError> {
    let set = VertexSet::from_vertices(ids.iter().copied())
        .map_err(|e| CliError::usage(format!("line {lineno}: {e}")))?;
    if set.len() != ids.len() {
        return Err(CliError::usage(format!(
            "line {lineno}: repeated vertex in edge"
        )));
    }
    Ok(set)
}

pub fn parse_uniform(text: &str) -> Result<ParseOutput<UniformHypergraph>, CliError> {
    let mut lines = significant_lines(text);
    let Some((hno, header)) = lines.next() else {
        return Err(CliError::usage("empty input: expected a `n k` header line"));
    };
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [n_tok, k_tok] = parts.as_slice() else {
        return Err(CliError::usage(format!(
            "line {hno}: expected header `n k`, got `{header}`"
        )));
    };
    let n: usize = n_tok
        .parse()
        .map_err(|_| CliError::usage(format!("line {hno}: bad n `{n_tok}`")))?;
    let k: usize = k_tok
        .parse()
        .map_err(|_| CliError::usage(format!("line {hno}: bad k `{k_tok}`")))?;

    let mut edges: Vec<(usize, VertexSet)> = Vec::new();
    for (lineno, line) in lines {
        let ids = parse_ids(lineno, line, n)?;
        if ids.len() != k {
            return Err(CliError::usage(format!(
                "line {lineno}: edge has {} vertices, expected {k}",
                ids.len()
            )));
        }
        let set = to_set(lineno, &ids)?;
        if let Some((first, _)) = edges.iter().find(|(_, e)| *e == set) {
            return Err(CliError::usage(format!(
                "line {lineno}: duplicate edge (first on line {first})"
            )));
        }
        edges.push((lineno, set));
    }
    let g = UniformHypergraph::new(n, k, edges.into_iter().map(|(_, e)| e))
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(ParseOutput {
        value: g,
        warnings: Vec::new(),
    })
}

pub fn parse_complex(text: &str) -> Result<ParseOutput<Complex>, CliError> {
    let mut lines = significant_lines(text);
    let Some((hno, header)) = lines.next() else {
        return Err(CliError::usage("empty input: expected a `n` header line"));
    };
    if header.split_whitespace().count() != 1 {
        return Err(CliError::usage(format!(
            "line {hno}: expected header `n`, got `{header}`"
        )));
    }
    let n: usize = header
        .parse()
        .map_err(|_| CliError::usage(format!("line {hno}: bad n `{header}`")))?;

    let mut gens: Vec<VertexSet> = Vec::new();
    for (lineno, line) in lines {
        let ids = parse_ids(lineno, line, n)?;
        if ids.len() < 2 {
            return Err(CliError::usage(format!(
                "line {lineno}: generating edges need at least 2 vertices \
                 (singletons are implicit)"
            )));
        }
        gens.push(to_set(lineno, &ids)?);
    }
    let declared = gens.len();
    let complex =
        Complex::downward_closure(n, gens).map_err(|e| CliError::usage(e.to_string()))?;
    // Uncovered vertices surface as singleton generators; only the declared
    // (size >= 2) generators count against the antichain check.
    let kept = complex
        .generating_set()
        .maximal()
        .iter()
        .filter(|g| g.len() >= 2)
        .count();
    let mut warnings = Vec::new();
    if kept < declared {
        warnings.push(format!(
            "input was not an antichain: {} of {declared} generators were \
             contained in others and dropped",
            declared - kept
        ));
    }
    Ok(ParseOutput {
        value: complex,
        warnings,
    })
}

/// Sniff the kind from the header arity: one integer = complex, two =
/// uniform hypergraph.
pub fn parse_auto(text: &str) -> Result<ParseOutput<Parsed>, CliError> {
    let Some((_, header)) = significant_lines(text).next() else {
        return Err(CliError::usage("empty input"));
    };
    match header.split_whitespace().count() {
        1 => {
            let out = parse_complex(text)?;
            Ok(ParseOutput {
                value: Parsed::Complex(out.value),
                warnings: out.warnings,
            })
        }
        2 => {
            let out = parse_uniform(text)?;
            Ok(ParseOutput {
                value: Parsed::Uniform(out.value),
                warnings: out.warnings,
            })
        }
        c => Err(CliError::usage(format!(
            "header has {c} fields; expected `n` (complex) or `n k` (uniform)"
        ))),
    }
}

pub fn render_uniform(g: &UniformHypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.k());
    for e in g.edges() {
        let ids: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

pub fn render_complex(c: &Complex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", c.n());
    for g in c.generating_set().maximal() {
        if g.len() < 2 {
            continue; // singleton components are implicit in the format
        }
        let ids: Vec<String> = g.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_round_trip() {
        let text = "3 2\n0 1\n1 2\n";
        let g = parse_uniform(text).unwrap().value;
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(render_uniform(&g), text);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let g = parse_uniform("# a path\n\n3 2  # header\n0 1\n\n1 2\n")
            .unwrap()
            .value;
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn duplicate_edges_cite_both_lines() {
        let err = parse_uniform("4 3\n0 1 2\n0 1 2\n").unwrap_err();
        assert!(err.message().contains("line 3"));
        assert!(err.message().contains("line 2"));
    }

    #[test]
    fn out_of_range_ids_cite_the_line() {
        let err = parse_uniform("2 3\n0 1 2\n").unwrap_err();
        assert!(err.message().contains("line 2"));
        assert!(err.message().contains("out of range"));
    }

    #[test]
    fn wrong_arity_is_an_error() {
        let err = parse_uniform("4 3\n0 1\n").unwrap_err();
        assert!(err.message().contains("expected 3"));
    }

    #[test]
    fn complex_reduction_warns() {
        let out = parse_complex("4\n0 1\n0 1 2\n").unwrap();
        // {0,1} is dropped as a subset; the uncovered vertex 3 surfaces as
        // a singleton generator.
        let large: Vec<_> = out
            .value
            .generating_set()
            .maximal()
            .iter()
            .filter(|g| g.len() >= 2)
            .collect();
        assert_eq!(large.len(), 1);
        assert_eq!(large[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(out.warnings.len(), 1);
        assert!(out.warnings[0].contains("antichain"));
    }

    #[test]
    fn complex_round_trip_is_the_reduced_form() {
        let text = "5\n0 1 2\n0 3 4\n2 3\n2 4\n";
        let c = parse_complex(text).unwrap().value;
        assert_eq!(render_complex(&c), text);
    }

    #[test]
    fn auto_detects_both_kinds() {
        assert!(matches!(
            parse_auto("3 2\n0 1\n").unwrap().value,
            Parsed::Uniform(_)
        ));
        assert!(matches!(
            parse_auto("3\n0 1 2\n").unwrap().value,
            Parsed::Complex(_)
        ));
    }

    #[test]
    fn singleton_generators_are_rejected() {
        let err = parse_complex("3\n1\n").unwrap_err();
        assert!(err.message().contains("at least 2"));
    }
}
