use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::patterns::FamilySpec;

/// A graph, a remaining edge-deletion budget and the forbidden family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub family: FamilySpec,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, family: FamilySpec) -> Self {
        Instance { graph, k, family }
    }

    pub fn diamond(graph: Graph, k: usize) -> Self {
        Instance::new(graph, k, FamilySpec::diamond())
    }
}
