//! Exact solvers and brute-force oracles.

mod branching;
mod brute;
pub mod dense;
mod search;

pub use branching::{
    is_deletion_solution, solve_branching, solve_branching_with, solve_min_branching,
    BranchingOptions, BranchingStats,
};
pub use brute::{
    brute_force_min_deletion, brute_force_min_deletion_capped, brute_force_min_editing,
    brute_force_min_editing_capped, brute_force_vertex_deletion, candidate_count,
    optimal_deletion_sets, optimal_editing_sets, optimal_vertex_deletion_sets, VertexPattern,
    DEFAULT_ORACLE_CAP,
};
pub use search::{
    search_edge_modification, search_min_edge_modification, search_min_vertex_deletion, EdgeMode,
    SearchStats,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeKey, Graph};
use crate::patterns::{is_family_free, FamilySpec};

/// Result of an edge-deletion solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Infeasible,
    Feasible(BTreeSet<EdgeKey>),
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible(_))
    }

    pub fn edges(&self) -> Option<&BTreeSet<EdgeKey>> {
        match self {
            Solution::Feasible(e) => Some(e),
            Solution::Infeasible => None,
        }
    }
}

/// Result of an edge-editing solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditSolution {
    Infeasible,
    Feasible {
        delete: BTreeSet<EdgeKey>,
        add: BTreeSet<EdgeKey>,
    },
}

impl EditSolution {
    /// Splits a set of toggled pairs into deletions and additions relative to `g`.
    pub fn from_toggles(g: &Graph, toggles: &BTreeSet<EdgeKey>) -> Self {
        let (delete, add) = toggles.iter().partition(|e| g.has_edge_key(**e));
        EditSolution::Feasible { delete, add }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, EditSolution::Feasible { .. })
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            EditSolution::Feasible { delete, add } => Some(delete.len() + add.len()),
            EditSolution::Infeasible => None,
        }
    }
}

/// `g` with every pair in `toggles` flipped.
pub fn apply_toggles(g: &Graph, toggles: &BTreeSet<EdgeKey>) -> Graph {
    let mut out = g.clone();
    for &e in toggles {
        if !out.remove_edge_key(e) {
            out.add_edge_key(e)
                .expect("toggled pair has endpoints in the graph");
        }
    }
    out
}

/// Whether toggling `toggles` in `g` leaves it free of `fam`.
pub fn is_edit_solution(g: &Graph, fam: &FamilySpec, toggles: &BTreeSet<EdgeKey>) -> bool {
    toggles
        .iter()
        .all(|e| g.contains(e.lo()) && g.contains(e.hi()))
        && is_family_free(&apply_toggles(g, toggles), fam)
}
