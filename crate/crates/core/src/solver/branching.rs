use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Solution;
use crate::graph::{EdgeKey, Graph};
use crate::instance::Instance;
use crate::patterns::{find_induced_occurrence, greedy_packing, FamilySpec, PackingResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingOptions {
    /// Cut a node when more than `k` edge-disjoint occurrences remain.
    pub packing_bound: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingStats {
    pub nodes: u64,
    pub max_branching: usize,
}

pub fn solve_branching(inst: &Instance) -> Solution {
    solve_branching_with(inst, &BranchingOptions::default()).0
}

/// Depth-first search on the first induced occurrence: each child deletes one of
/// its edges, in canonical order. Finds a solution of size at most `k` whenever
/// one exists, not necessarily a smallest one.
pub fn solve_branching_with(
    inst: &Instance,
    opts: &BranchingOptions,
) -> (Solution, BranchingStats) {
    let mut g = inst.graph.clone();
    let mut chosen = Vec::new();
    let mut stats = BranchingStats::default();
    let found = branch(&mut g, inst.k, &inst.family, opts, &mut chosen, &mut stats);
    let sol = if found {
        Solution::Feasible(chosen.into_iter().collect())
    } else {
        Solution::Infeasible
    };
    (sol, stats)
}

/// Smallest solution of size at most `inst.k`, by trying budgets `0..=k`.
pub fn solve_min_branching(inst: &Instance, opts: &BranchingOptions) -> (Solution, BranchingStats) {
    let mut total = BranchingStats::default();
    for budget in 0..=inst.k {
        let trial = Instance {
            k: budget,
            ..inst.clone()
        };
        let (sol, stats) = solve_branching_with(&trial, opts);
        total.nodes += stats.nodes;
        total.max_branching = total.max_branching.max(stats.max_branching);
        if sol.is_feasible() {
            return (sol, total);
        }
    }
    (Solution::Infeasible, total)
}

fn branch(
    g: &mut Graph,
    k: usize,
    fam: &FamilySpec,
    opts: &BranchingOptions,
    chosen: &mut Vec<EdgeKey>,
    stats: &mut BranchingStats,
) -> bool {
    stats.nodes += 1;
    let Some(occ) = find_induced_occurrence(g, fam) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    if opts.packing_bound
        && fam.supports_reduction()
        && matches!(
            greedy_packing(g, k, fam),
            Ok(PackingResult::BudgetExceeded { .. })
        )
    {
        return false;
    }
    stats.max_branching = stats.max_branching.max(occ.edges.len());
    for &e in &occ.edges {
        g.remove_edge_key(e);
        chosen.push(e);
        if branch(g, k - 1, fam, opts, chosen, stats) {
            return true;
        }
        chosen.pop();
        g.add_edge_key(e).expect("restoring a deleted edge");
    }
    false
}

/// Whether deleting `edges` from `g` leaves it free of `fam`.
pub fn is_deletion_solution(g: &Graph, fam: &FamilySpec, edges: &BTreeSet<EdgeKey>) -> bool {
    edges.iter().all(|e| g.has_edge_key(*e))
        && crate::patterns::is_family_free(&g.without_edges(edges), fam)
}
