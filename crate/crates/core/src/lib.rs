//! Kernelization and exact solvers for Diamond-free and {Diamond, K_t}-free Edge
//! Deletion.

pub mod error;
pub mod format;
pub mod graph;
pub mod instance;
pub mod instances;
pub mod matching;
pub mod patterns;
pub mod phase1;
pub mod phase2;
pub mod solver;
mod timing;

pub use error::{Error, Result};
pub use graph::{EdgeKey, Graph, VertexId};
pub use instance::Instance;
pub use patterns::{FamilySpec, Pattern, PatternOccurrence};
