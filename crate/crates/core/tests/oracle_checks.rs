//! Cross-checks against slow, transparent reimplementations.
//!
//! Every routine with a clever data structure or search behind it is
//! compared here to a brute-force oracle on seeded random inputs: an
//! all-permutations isomorphism test, an all-injections containment test, a
//! definition-level clique census, and direct scans of entire search spaces
//! small enough to enumerate.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sct_core::canonical::{canonical_form_uniform, isomorphic_uniform};
use sct_core::cliques::count_cliques;
use sct_core::complex::Complex;
use sct_core::containment::contains_complex;
use sct_core::extremal::{max_cliques_forbidden, max_edges_pattern_free, solve, Instance};
use sct_core::formulas::CountMode;
use sct_core::hypergraph::UniformHypergraph;
use sct_core::set::VertexSet;
use sct_core::Budget;

fn random_uniform(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> UniformHypergraph {
    let edges = VertexSet::full(n)
        .subsets_of_size(k)
        .into_iter()
        .filter(|_| rng.gen_bool(p));
    UniformHypergraph::new(n, k, edges).unwrap()
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

/// Isomorphism by trying every vertex bijection.
fn iso_oracle(a: &UniformHypergraph, b: &UniformHypergraph) -> bool {
    if a.n() != b.n() || a.k() != b.k() || a.edge_count() != b.edge_count() {
        return false;
    }
    (0..a.n())
        .permutations(a.n())
        .any(|perm| &a.relabel(&perm).unwrap() == b)
}

/// Complex containment by trying every injection of pattern vertices.
fn containment_oracle(host: &Complex, pattern: &Complex) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    let gens = pattern.generating_set().maximal();
    (0..host.n()).permutations(pattern.n()).any(|image| {
        gens.iter()
            .all(|g| host.is_edge(g.relabel(&image)))
    })
}

/// Sub-copy containment of a uniform pattern in a uniform host.
fn subcopy_oracle(host: &UniformHypergraph, pattern: &UniformHypergraph) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    (0..host.n()).permutations(pattern.n()).any(|image| {
        pattern
            .edges()
            .iter()
            .all(|e| host.contains_edge(e.relabel(&image)))
    })
}

#[test]
fn canonical_forms_agree_with_the_permutation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..60 {
        let k = if trial % 2 == 0 { 2 } else { 3 };
        let a = random_uniform(&mut rng, 5, k, 0.4);
        let b = if trial % 3 == 0 {
            // A relabeled copy: must always test isomorphic.
            let perm = random_permutation(&mut rng, 5);
            a.relabel(&perm).unwrap()
        } else {
            random_uniform(&mut rng, 5, k, 0.4)
        };
        let expected = iso_oracle(&a, &b);
        assert_eq!(
            isomorphic_uniform(&a, &b).unwrap(),
            expected,
            "trial {trial}: a = {a}, b = {b}"
        );
        let same_digest = canonical_form_uniform(&a).unwrap().digest()
            == canonical_form_uniform(&b).unwrap().digest();
        assert_eq!(same_digest, expected, "digest mismatch on trial {trial}");
    }
}

#[test]
fn containment_agrees_with_the_injection_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let unlimited = Budget::unlimited();
    let mut found = 0;
    for trial in 0..60 {
        let host_graph = random_uniform(&mut rng, 6, 3, 0.35);
        let host =
            Complex::downward_closure(6, host_graph.edges().iter().copied()).unwrap();
        // Mixed-size pattern generators over four vertices.
        let mut gens = Vec::new();
        for s in [2, 2, 3] {
            let all = VertexSet::full(4).subsets_of_size(s);
            if rng.gen_bool(0.8) {
                gens.push(all[rng.gen_range(0..all.len())]);
            }
        }
        if gens.iter().copied().fold(VertexSet::EMPTY, VertexSet::union) != VertexSet::full(4)
        {
            continue; // isolated pattern vertices are rejected by design
        }
        let pattern = Complex::downward_closure(4, gens).unwrap();
        let got = contains_complex(&host, &pattern, &unlimited)
            .unwrap()
            .is_found();
        assert_eq!(
            got,
            containment_oracle(&host, &pattern),
            "trial {trial}: host = {host_graph}, pattern = {pattern}"
        );
        found += got as usize;
    }
    assert!(found > 0, "the sample never exercised the positive case");
}

#[test]
fn clique_census_matches_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..40 {
        let g = random_uniform(&mut rng, 7, 3, 0.5);
        let c = Complex::downward_closure(7, g.edges().iter().copied()).unwrap();
        let census = count_cliques(&c, 3).unwrap();
        // Directly from the definition, one subset at a time.
        let mut by_order: std::collections::BTreeMap<usize, u64> =
            std::collections::BTreeMap::new();
        for t in VertexSet::full(7).all_subsets() {
            let order = t.len();
            let is_clique = match order {
                0 => false,
                1 => true,
                2 => c.is_edge(t),
                _ => t.subsets_of_size(3).into_iter().all(|s| g.contains_edge(s)),
            };
            if is_clique {
                *by_order.entry(order).or_insert(0) += 1;
            }
        }
        let total_all: u64 = by_order.values().sum();
        let total_geq: u64 = by_order
            .iter()
            .filter(|(o, _)| **o >= 3)
            .map(|(_, v)| *v)
            .sum();
        assert_eq!(census.by_order, by_order);
        assert_eq!(census.total_all, total_all);
        assert_eq!(census.total_geq_k, total_geq);
    }
}

#[test]
fn closure_membership_is_subset_of_some_generator() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..30 {
        let mut gens = Vec::new();
        for s in [2, 3, 3, 4] {
            let all = VertexSet::full(7).subsets_of_size(s);
            if rng.gen_bool(0.7) {
                gens.push(all[rng.gen_range(0..all.len())]);
            }
        }
        let complex = Complex::downward_closure(7, gens.clone()).unwrap();
        for s in VertexSet::full(7).all_subsets() {
            let expected =
                s.len() <= 1 || gens.iter().any(|g| s.is_subset_of(*g));
            assert_eq!(complex.is_edge(s), expected, "set {s} in {complex}");
        }
    }
}

#[test]
fn clique_solver_agrees_with_a_direct_scan_of_all_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let unlimited = Budget::unlimited();
    let pairs = VertexSet::full(4).subsets_of_size(2);
    for trial in 0..8 {
        let forbidden = loop {
            let nf = rng.gen_range(3..=4);
            let f = random_uniform(&mut rng, nf, 2, 0.55);
            if f.edge_count() > 0 {
                break f;
            }
        };
        for mode in [CountMode::All, CountMode::GeqK] {
            let mut best = 0u64;
            for mask in 0u32..1 << pairs.len() {
                let g = UniformHypergraph::new(
                    4,
                    2,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, e)| *e),
                )
                .unwrap();
                if subcopy_oracle(&g, &forbidden) {
                    continue;
                }
                let c = Complex::downward_closure(4, g.edges().iter().copied()).unwrap();
                let census = count_cliques(&c, 2).unwrap();
                let value = match mode {
                    CountMode::All => census.total_all,
                    CountMode::GeqK => census.total_geq_k,
                };
                best = best.max(value);
            }
            let r = max_cliques_forbidden(
                4,
                2,
                std::slice::from_ref(&forbidden),
                mode,
                &unlimited,
                1,
            )
            .unwrap();
            assert_eq!(
                r.optimum, best,
                "trial {trial} mode {mode:?} forbidden {forbidden}"
            );
            let instance = Instance::MaxCliques {
                n: 4,
                k: 2,
                forbidden: vec![forbidden.clone()],
                mode,
            };
            assert!(sct_core::extremal::verify_witness(&r, &instance).unwrap());
        }
    }
}

#[test]
fn edge_solver_agrees_with_a_direct_scan_of_all_complexes() {
    // Every downward-closed family on four vertices, enumerated directly:
    // subsets of the eleven sets of size >= 2 that happen to be closed.
    let mut sets: Vec<VertexSet> = Vec::new();
    for s in 2..=4 {
        sets.extend(VertexSet::full(4).subsets_of_size(s));
    }
    let closed_families: Vec<Vec<VertexSet>> = (0u32..1 << sets.len())
        .filter_map(|mask| {
            let chosen: Vec<VertexSet> = sets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let closed = chosen.iter().all(|e| {
                e.len() == 2
                    || e.subsets_of_size(e.len() - 1)
                        .into_iter()
                        .all(|s| chosen.contains(&s))
            });
            closed.then_some(chosen)
        })
        .collect();

    let unlimited = Budget::unlimited();
    let patterns = [
        Complex::downward_closure(3, VertexSet::full(3).subsets_of_size(2)).unwrap(),
        sct_core::constructions::case_iv(3).unwrap(),
        Complex::downward_closure(3, [VertexSet::of(&[0, 1, 2])]).unwrap(),
        Complex::downward_closure(4, [VertexSet::of(&[0, 1]), VertexSet::of(&[2, 3])])
            .unwrap(),
    ];
    for pattern in &patterns {
        let mut best = 0u64;
        for family in &closed_families {
            let complex = Complex::downward_closure(4, family.iter().copied()).unwrap();
            if complex.total_edges().unwrap() != 1 + 4 + family.len() as u64 {
                continue; // closure added sets: not the family itself
            }
            if containment_oracle(&complex, pattern) {
                continue;
            }
            best = best.max(1 + 4 + family.len() as u64);
        }
        let r = max_edges_pattern_free(4, pattern, &unlimited, 1).unwrap();
        assert_eq!(r.optimum, best, "pattern {pattern}");
        let instance = Instance::MaxEdges {
            n: 4,
            pattern: pattern.clone(),
        };
        assert!(sct_core::extremal::verify_witness(&r, &instance).unwrap());
    }
}

#[test]
fn solve_dispatch_matches_the_direct_entry_points() {
    let unlimited = Budget::unlimited();
    let m22 = sct_core::constructions::matching(2, 2).unwrap();
    let via_solve = solve(
        &Instance::MaxCliques {
            n: 5,
            k: 2,
            forbidden: vec![m22.clone()],
            mode: CountMode::GeqK,
        },
        &unlimited,
        1,
    )
    .unwrap();
    let direct =
        max_cliques_forbidden(5, 2, &[m22], CountMode::GeqK, &unlimited, 1).unwrap();
    assert_eq!(via_solve.optimum, direct.optimum);
    assert_eq!(via_solve.instance_key, direct.instance_key);
    assert_eq!(via_solve.nodes_explored, direct.nodes_explored);
}
