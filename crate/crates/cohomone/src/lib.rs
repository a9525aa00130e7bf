//! Exact symbolic invariants of compact Lie groups and the group diagrams
//! of cohomogeneity-one manifolds with positive Euler characteristic.
//!
//! Everything is integer arithmetic on typed descriptors: Weyl-order ratios
//! for Euler characteristics of homogeneous spaces, recognition of sphere
//! and projective-space quotients from the classification of transitive
//! sphere actions, maximal-rank subgroup enumeration, and a verified
//! catalog of classification tables.

pub mod groups;
pub mod homogeneous;
pub mod spheres;
pub mod diagram;
pub mod maxrank;
pub mod catalog;
pub mod enumerate;
pub mod cli;

pub use groups::{
    abstractly_isomorphic, center_order, dim, factor_count, format_group, normalize_group,
    parse_group, rank, weyl_order, Ambient, CenterOrder, ClassicalFamily, EmbeddingData, Factor,
    FactorKind, GroupExpr, SpecialTag, WeightField,
};

/// Entry point used by the `c1` binary; returns the process exit code.
pub fn cli_main() -> i32 {
    cli::run()
}
