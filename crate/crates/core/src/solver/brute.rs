//! Exhaustive oracles: every candidate set is tried in order of increasing size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::patterns::FamilySpec;

/// Default limit on the number of candidate sets an oracle may enumerate.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexPattern {
    /// The remaining graph must be edgeless.
    VertexCover,
    /// The remaining graph must have no induced `K_{1,s}`.
    Star(usize),
}

/// Number of subsets of size at most `kmax` of a `universe`-element set.
pub fn candidate_count(universe: usize, kmax: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for i in 0..=kmax.min(universe) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((universe - i) as u128) / (i as u128 + 1);
    }
    total
}

fn guard(universe: usize, kmax: usize, cap: u64) -> Result<()> {
    let needed = candidate_count(universe, kmax);
    if needed > cap as u128 {
        Err(Error::OracleCap { needed, cap })
    } else {
        Ok(())
    }
}

pub fn brute_force_min_deletion(g: &Graph, fam: &FamilySpec, kmax: usize) -> Result<Option<usize>> {
    brute_force_min_deletion_capped(g, fam, kmax, DEFAULT_ORACLE_CAP)
}

/// Smallest number of edge deletions, at most `kmax`, that makes `g` free of `fam`.
pub fn brute_force_min_deletion_capped(
    g: &Graph,
    fam: &FamilySpec,
    kmax: usize,
    cap: u64,
) -> Result<Option<usize>> {
    Ok(optimal_deletion_sets(g, fam, kmax, cap, false)?.map(|(size, _)| size))
}

pub fn brute_force_min_editing(g: &Graph, fam: &FamilySpec, kmax: usize) -> Result<Option<usize>> {
    brute_force_min_editing_capped(g, fam, kmax, DEFAULT_ORACLE_CAP)
}

/// Smallest number of vertex-pair toggles, at most `kmax`, that makes `g` free of
/// `fam`.
pub fn brute_force_min_editing_capped(
    g: &Graph,
    fam: &FamilySpec,
    kmax: usize,
    cap: u64,
) -> Result<Option<usize>> {
    Ok(optimal_editing_sets(g, fam, kmax, cap, false)?.map(|(size, _)| size))
}

/// The minimum deletion size and, if `collect` is set, every deletion set of that
/// size.
pub fn optimal_deletion_sets(
    g: &Graph,
    fam: &FamilySpec,
    kmax: usize,
    cap: u64,
    collect: bool,
) -> Result<Option<(usize, Vec<BTreeSet<EdgeKey>>)>> {
    let dense = DenseGraph::from_graph(g)?;
    let universe = dense.edges();
    guard(universe.len(), kmax, cap)?;
    Ok(min_toggles(dense, &universe, fam, kmax, collect))
}

/// Like [`optimal_deletion_sets`] over all vertex pairs. Returned sets mix deleted
/// edges and added non-edges.
pub fn optimal_editing_sets(
    g: &Graph,
    fam: &FamilySpec,
    kmax: usize,
    cap: u64,
    collect: bool,
) -> Result<Option<(usize, Vec<BTreeSet<EdgeKey>>)>> {
    let dense = DenseGraph::from_graph(g)?;
    let universe = dense.pairs();
    guard(universe.len(), kmax, cap)?;
    Ok(min_toggles(dense, &universe, fam, kmax, collect))
}

fn min_toggles(
    mut dense: DenseGraph,
    universe: &[(usize, usize)],
    fam: &FamilySpec,
    kmax: usize,
    collect: bool,
) -> Option<(usize, Vec<BTreeSet<EdgeKey>>)> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &mut DenseGraph,
        universe: &[(usize, usize)],
        fam: &FamilySpec,
        from: usize,
        left: usize,
        chosen: &mut Vec<(usize, usize)>,
        found: &mut Vec<BTreeSet<EdgeKey>>,
        collect: bool,
    ) -> bool {
        if left == 0 {
            if !d.has_occurrence(fam, d.all()) {
                found.push(d.keys(chosen));
                return !collect;
            }
            return false;
        }
        for i in from..universe.len() {
            if universe.len() - i < left {
                break;
            }
            let (a, b) = universe[i];
            d.toggle(a, b);
            chosen.push((a, b));
            let stop = go(d, universe, fam, i + 1, left - 1, chosen, found, collect);
            chosen.pop();
            d.toggle(a, b);
            if stop {
                return true;
            }
        }
        false
    }

    for size in 0..=kmax.min(universe.len()) {
        let mut found = Vec::new();
        let mut chosen = Vec::with_capacity(size);
        go(
            &mut dense,
            universe,
            fam,
            0,
            size,
            &mut chosen,
            &mut found,
            collect,
        );
        if !found.is_empty() {
            return Some((size, found));
        }
    }
    None
}

pub fn brute_force_vertex_deletion(
    g: &Graph,
    pattern: VertexPattern,
    kmax: usize,
) -> Result<Option<usize>> {
    Ok(optimal_vertex_deletion_sets(g, pattern, kmax, DEFAULT_ORACLE_CAP, false)?.map(|(s, _)| s))
}

/// Smallest vertex set of size at most `kmax` whose removal leaves an edgeless or
/// `K_{1,s}`-free graph, with all optimal sets if `collect` is set.
pub fn optimal_vertex_deletion_sets(
    g: &Graph,
    pattern: VertexPattern,
    kmax: usize,
    cap: u64,
    collect: bool,
) -> Result<Option<(usize, Vec<BTreeSet<VertexId>>)>> {
    if pattern == VertexPattern::Star(0) {
        return Err(Error::InvalidParameter("star pattern needs s >= 1".into()));
    }
    let dense = DenseGraph::from_graph(g)?;
    let n = dense.len();
    guard(n, kmax, cap)?;
    let ok = |alive: u128| match pattern {
        VertexPattern::VertexCover => !dense.has_edge_within(alive),
        VertexPattern::Star(s) => !dense.has_induced_star(s, alive),
    };

    #[allow(clippy::too_many_arguments)]
    fn go(
        n: usize,
        from: usize,
        left: usize,
        removed: u128,
        all: u128,
        ok: &dyn Fn(u128) -> bool,
        found: &mut Vec<u128>,
        collect: bool,
    ) -> bool {
        if left == 0 {
            if ok(all & !removed) {
                found.push(removed);
                return !collect;
            }
            return false;
        }
        for v in from..n {
            if n - v < left {
                break;
            }
            if go(
                n,
                v + 1,
                left - 1,
                removed | 1 << v,
                all,
                ok,
                found,
                collect,
            ) {
                return true;
            }
        }
        false
    }

    for size in 0..=kmax.min(n) {
        let mut found = Vec::new();
        go(n, 0, size, 0, dense.all(), &ok, &mut found, collect);
        if !found.is_empty() {
            let sets = found
                .into_iter()
                .map(|mask| super::dense::bits(mask).map(|i| dense.ids[i]).collect())
                .collect();
            return Ok(Some((size, sets)));
        }
    }
    Ok(None)
}
