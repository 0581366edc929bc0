use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{find_occurrence_avoiding, FamilySpec, PatternOccurrence};
use crate::error::Result;
use crate::graph::{EdgeKey, Graph};

/// Pairwise edge-disjoint induced occurrences and the union of their edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub edges: BTreeSet<EdgeKey>,
    pub occurrences: Vec<PatternOccurrence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PackingResult {
    /// `k + 1` edge-disjoint occurrences were found, so no solution of size `k`
    /// exists. Carries the occurrences as a certificate.
    BudgetExceeded {
        occurrences: Vec<PatternOccurrence>,
    },
    Packed(Packing),
}

/// Greedily packs edge-disjoint induced occurrences, always taking the
/// lexicographically first occurrence of `g` that avoids the edges packed so far.
///
/// On success every induced occurrence of `g` shares an edge with the packing.
pub fn greedy_packing(g: &Graph, k: usize, fam: &FamilySpec) -> Result<PackingResult> {
    fam.require_reduction()?;
    let mut edges = BTreeSet::new();
    let mut occurrences = Vec::new();
    while let Some(occ) = find_occurrence_avoiding(g, fam, &edges) {
        edges.extend(occ.edges.iter().copied());
        occurrences.push(occ);
        if occurrences.len() > k {
            return Ok(PackingResult::BudgetExceeded { occurrences });
        }
    }
    Ok(PackingResult::Packed(Packing { edges, occurrences }))
}
