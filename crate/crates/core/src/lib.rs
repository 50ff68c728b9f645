//! Exact-arithmetic toolkit for finite-dimensional Lie algebras: derivation
//! algebras, local derivations, root decompositions, and the model filiform
//! family whose local derivations need not be derivations.

pub mod catalog;
pub mod derivations;
pub mod error;
pub mod filiform;
pub mod lie;
pub mod linalg;
pub mod local;
pub mod roots;
pub mod sampling;

pub use error::{Error, Result};
