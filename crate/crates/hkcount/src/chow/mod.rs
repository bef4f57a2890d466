//! An exact intersection-theory engine.
//!
//! Chow rings of points, Grassmannians and projective-bundle towers, with
//! Schubert calculus via the Littlewood–Richardson rule, vector-bundle
//! calculus through Chern characters, and integration by iterated
//! pushforward. The [`fano`] module assembles these into the tower of cubic
//! cones whose curve of cones has genus 631 and j-line degree 3780.
//!
//! Spaces are immutable and shared through `Arc`; class arithmetic is pure.
//! The only shared mutable state is the Littlewood–Richardson memo table,
//! which takes concurrent reads and idempotent writes.

mod bundle;
mod lr;
pub mod lr_cache;
mod partition;
mod space;

pub mod fano;

pub use bundle::{
    canonical_class, o_minus_one, o_one, relative_quotient, tangent_bundle, tautological_quotient,
    tautological_sub, BundleClass,
};
pub use lr::lr_product;
pub use partition::Partition;
pub use space::{ChowClass, Space};

use crate::qseries::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChowError {
    #[error("Gr({k},{n}) requires 0 < k < n")]
    InvalidGrassmannian { k: u32, n: u32 },
    #[error("projectivization needs positive rank, got {rank}")]
    NonPositiveRank { rank: i64 },
    #[error("expected a bundle of rank {expected}, got {found}")]
    RankMismatch { expected: i64, found: i64 },
    #[error("bundle does not live on the expected space")]
    BundleSpaceMismatch,
    #[error("adjunction integral {integral} is not an even integer")]
    OddAdjunctionIntegral { integral: Box<Rational> },
    #[error("closed-form and Euler-class discriminant divisors disagree")]
    DiscriminantRouteMismatch,
}
