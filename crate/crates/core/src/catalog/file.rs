//! JSON structure-constant files:
//!
//! ```json
//! { "name": "heis3", "dim": 3, "basis": ["e1", "e2", "e3"],
//!   "brackets": [ { "i": 1, "j": 2, "c": { "3": "1" } } ] }
//! ```
//!
//! Only pairs `i < j` with a nonzero bracket are listed. `basis` and
//! `cartan` (1-based indices) are optional.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CartanMarking;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rational, parse_rational, vector};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    c: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cartan: Option<Vec<usize>>,
    brackets: Vec<RawBracket>,
}

/// The contents of a structure-constant file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    pub cartan: Option<CartanMarking>,
}

pub fn to_json(algebra: &LieAlgebra, cartan: Option<&CartanMarking>) -> String {
    let raw = RawFile {
        name: algebra.name().to_string(),
        dim: algebra.dim(),
        basis: Some(algebra.labels().to_vec()),
        cartan: cartan.map(|c| c.indices().to_vec()),
        brackets: algebra
            .nonzero_brackets()
            .map(|(i, j, v)| RawBracket {
                i,
                j,
                c: v.iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(k, x)| (k + 1, format_rational(x)))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

pub fn save(
    algebra: &LieAlgebra,
    cartan: Option<&CartanMarking>,
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut text = to_json(algebra, cartan);
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Parses a file without checking the Jacobi identity. The Cartan marking,
/// if any, is only range-checked.
pub fn parse_unchecked(text: &str) -> Result<AlgebraFile> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.dim;
    let mut seen = std::collections::BTreeSet::new();
    let mut brackets = Vec::with_capacity(raw.brackets.len());
    for b in raw.brackets {
        if !seen.insert((b.i, b.j)) {
            return Err(Error::Parse(format!(
                "bracket ({}, {}) listed twice",
                b.i, b.j
            )));
        }
        let mut v = vector::zeros(n);
        for (k, s) in &b.c {
            if *k == 0 || *k > n {
                return Err(Error::Parse(format!(
                    "bracket ({}, {}) has component {k} outside 1..{n}",
                    b.i, b.j
                )));
            }
            v[k - 1] = parse_rational(s)?;
        }
        brackets.push((b.i, b.j, v));
    }
    let algebra = LieAlgebra::from_brackets(raw.name, n, raw.basis, brackets)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let cartan = raw.cartan.map(CartanMarking::new);
    if let Some(c) = &cartan {
        if let Some(&bad) = c.indices().iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidCartan(format!("index {bad} outside 1..{n}")));
        }
    }
    Ok(AlgebraFile { algebra, cartan })
}

/// Parses a file and rejects tables that break the Jacobi identity or carry
/// an invalid Cartan marking.
pub fn parse(text: &str) -> Result<AlgebraFile> {
    let file = parse_unchecked(text)?;
    if let Some((i, j, k)) = file.algebra.jacobi_violation() {
        return Err(Error::Jacobi { i, j, k });
    }
    if let Some(c) = &file.cartan {
        c.check(&file.algebra)?;
    }
    Ok(file)
}

pub fn load(path: impl AsRef<Path>) -> Result<AlgebraFile> {
    parse(&std::fs::read_to_string(path)?)
}
