use serde::Serialize;
use serde_json::{json, Value};

use lieloc_core::lie::{LieAlgebra, LinearMap};
use lieloc_core::linalg::{format_rational, Rational};

#[derive(Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub dim: usize,
    pub semisimple: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub filiform: bool,
}

impl AlgebraSummary {
    pub fn of(l: &LieAlgebra) -> Self {
        Self {
            name: l.name().to_string(),
            dim: l.dim(),
            semisimple: l.is_semisimple(),
            nilpotent: l.is_nilpotent(),
            solvable: l.is_solvable(),
            filiform: l.is_filiform(),
        }
    }
}

#[derive(Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
}

/// The `--json` document. Field order is fixed by declaration order and
/// every map inside `result` is key-sorted, so equal inputs give equal bytes.
#[derive(Serialize)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSummary>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    pub verdict: String,
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

/// Row-major rational matrix.
pub fn map(m: &LinearMap) -> Value {
    json!(m.matrix().row_iter().map(vector).collect::<Vec<_>>())
}

pub fn text_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}
