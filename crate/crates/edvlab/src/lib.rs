//! Edge division vectors of trees.
//!
//! A tree of order n assigns each edge e the value mu(e), the smaller of
//! the two component sizes of T - e. Counting edges by mu gives the edge
//! division vector, an isomorphism invariant that determines every
//! edge-additive topological index. This crate implements the vector and
//! its suffix-sum order, the branch-moving and branch-exchange
//! transformations with their non-isomorphism certificates, the named tree
//! families with closed-form vectors, exhaustive enumeration and
//! classification of small orders, and the index catalogue with
//! independent distance-based oracles.

pub mod canon;
pub mod classify;
pub mod cli;
pub mod edv;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod indices;
pub mod transforms;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
