//! Shared fixtures for the criterion benches.

use lieloc_core::catalog::{build, AlgebraSpec, BuiltAlgebra};

/// Algebras the benches sweep over, smallest first.
pub const SEMISIMPLE: &[&str] = &["sl2", "sl3", "so5", "g2"];

pub fn algebra(spec: &str) -> BuiltAlgebra {
    build(&spec.parse::<AlgebraSpec>().expect("bench spec parses")).expect("bench spec builds")
}
