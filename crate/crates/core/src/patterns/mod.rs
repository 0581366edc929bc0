//! Forbidden patterns: family descriptors, induced-occurrence search, core
//! membership, greedy packing and clique partitioning.

mod cliques;
mod family;
mod membership;
mod packing;
mod search;

pub use cliques::clique_partition;
pub use family::{FamilySpec, Pattern};
pub use membership::{is_core_member_edge, is_core_member_vertex};
pub use packing::{greedy_packing, Packing, PackingResult};
pub use search::{
    find_induced_occurrence, find_induced_star, find_occurrence_avoiding, find_triangle,
    induced_occurrences, is_family_free,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeKey, VertexId};

/// An induced copy of a pattern in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternOccurrence {
    pub kind: Pattern,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeKey>,
}

impl PatternOccurrence {
    /// Sorted vertex tuple; occurrences are compared by this key when a search
    /// must return the lexicographically first one.
    pub fn key(&self) -> Vec<VertexId> {
        self.vertices.iter().copied().collect()
    }
}
