//! Lie algebras given by structure constants, linear maps on them, and their
//! structural invariants.

mod algebra;
mod map;
mod structure;

pub use algebra::LieAlgebra;
pub use map::LinearMap;
pub use structure::direct_sum;
