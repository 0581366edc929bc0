//! Instance generators and the reduction from vertex cover.

mod generators;
mod lift;
mod reduction;

pub use generators::{gen_gnp, gen_hard_structure, gen_planted_yes, CliqueGluing, Seed};
pub use lift::{lift_solution, LiftedCover};
pub use reduction::{
    add_universal, attach_stars, reduce_vc_to_sdfed, subdivide_twice, ReductionTrace, StarTrace,
    SubdividedEdge, SubdivisionTrace,
};
