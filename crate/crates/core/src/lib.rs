//! Exact machinery for Turán-type problems on simplicial complexes and
//! uniform hypergraphs at desk scale: downward closures, generalized clique
//! counting, named extremal constructions, containment and Berge-containment
//! predicates, structural analysis (edge-degeneracy, fullness, peeling),
//! exhaustive/branch-and-bound extremal searches with verifiable witnesses,
//! and arbitrary-precision closed-form evaluators.
//!
//! Everything here is exact: integer arithmetic only, deterministic results
//! (including across worker-thread counts), and witnesses that can be
//! re-verified independently of the search that produced them.

pub mod analysis;
pub mod canonical;
pub mod cliques;
pub mod complex;
pub mod constructions;
pub mod containment;
pub mod error;
pub mod extremal;
pub mod formulas;
pub mod hypergraph;
pub mod set;

pub use complex::{Complex, GeneratingSet};
pub use error::Error;
pub use hypergraph::UniformHypergraph;
pub use set::VertexSet;

use std::time::{Duration, Instant};

/// Resource limits for a search or containment check.
///
/// `Unlimited` never trips. Node budgets are deterministic; wall-clock
/// deadlines are not, so a result produced under a tripped deadline is
/// reported as a lower bound rather than an exact optimum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            deadline: None,
        }
    }

    pub fn wall(limit: Duration) -> Self {
        Budget {
            max_nodes: None,
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn with_wall(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    /// True once the budget is exhausted. `nodes` is whatever node counter
    /// the caller maintains; the deadline is only consulted coarsely.
    pub fn exhausted(&self, nodes: u64) -> bool {
        if let Some(max) = self.max_nodes {
            if nodes >= max {
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            // Checking the clock on every node would dominate small searches.
            if nodes % 4096 == 0 && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }
}

/// Three-valued result of a bounded search: a certificate was found, the
/// whole space was exhausted without one, or the budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Absent,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }

    /// Collapse to a definite yes/no, erroring if the budget interfered.
    pub fn decided(&self) -> Result<bool, Error> {
        match self {
            SearchOutcome::Found(_) => Ok(true),
            SearchOutcome::Absent => Ok(false),
            SearchOutcome::BudgetExhausted => Err(Error::BudgetExhausted),
        }
    }
}
