//! Named algebras and the structure-constant file format.

mod file;
mod realization;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{direct_sum, LieAlgebra};
use crate::linalg::{vector, Subspace};

pub use file::{load, parse, parse_unchecked, save, to_json, AlgebraFile};

/// Basis indices (1-based) spanning a designated Cartan subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMarking {
    indices: Vec<usize>,
}

impl CartanMarking {
    pub fn new(indices: Vec<usize>) -> Self {
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    /// Checks the indices are distinct, in range, and span an abelian
    /// subalgebra.
    pub fn check(&self, algebra: &LieAlgebra) -> Result<()> {
        let n = algebra.dim();
        let mut seen = vec![false; n + 1];
        for &i in &self.indices {
            if i == 0 || i > n {
                return Err(Error::InvalidCartan(format!("index {i} outside 1..{n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidCartan(format!("index {i} repeated")));
            }
        }
        for (a, &i) in self.indices.iter().enumerate() {
            for &j in &self.indices[a + 1..] {
                let v = algebra.bracket(&algebra.basis_vector(i), &algebra.basis_vector(j))?;
                if !vector::is_zero(&v) {
                    return Err(Error::InvalidCartan(format!("[e{i}, e{j}] is nonzero")));
                }
            }
        }
        Ok(())
    }

    pub fn subspace(&self, algebra: &LieAlgebra) -> Subspace {
        Subspace::from_spanning(
            algebra.dim(),
            self.indices
                .iter()
                .map(|&i| algebra.basis_vector(i))
                .collect(),
        )
        .expect("basis vectors have algebra length")
    }

    fn shifted(&self, by: usize) -> Self {
        Self::new(self.indices.iter().map(|i| i + by).collect())
    }
}

/// What to build. Parsed from strings such as `sl3`, `so8`, `sp4`, `g2`,
/// `heis3`, `filiform:6`, `abelian:2`, `sum:sl2+so5`, `@algebra.json`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    /// `sl(size)`, rank `size − 1`.
    SpecialLinear(usize),
    /// `so(size)` for `size ≥ 3`.
    Orthogonal(usize),
    /// `sp(size)` for even `size ≥ 2`.
    Symplectic(usize),
    G2,
    Heisenberg3,
    Filiform(usize),
    Abelian(usize),
    Sum(Vec<AlgebraSpec>),
    File(PathBuf),
}

impl AlgebraSpec {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Self::SpecialLinear(n) if n < 2 => bad(format!("sl{n}: need size at least 2")),
            Self::Orthogonal(n) if n < 3 => bad(format!("so{n}: need size at least 3")),
            Self::Symplectic(n) if n < 2 || n % 2 == 1 => {
                bad(format!("sp{n}: need an even size at least 2"))
            }
            Self::Filiform(n) if n < 3 => bad(format!("filiform:{n}: need n at least 3")),
            Self::Abelian(0) => bad("abelian:0: need n at least 1".into()),
            Self::Sum(ref parts) => {
                if parts.len() < 2 {
                    return bad("sum needs at least two summands".into());
                }
                parts.iter().try_for_each(Self::validate)
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |digits: &str| -> Result<usize> {
            digits
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad size in algebra spec {s:?}")))
        };
        let spec = if let Some(rest) = s.strip_prefix("sum:") {
            Self::Sum(rest.split('+').map(str::parse).collect::<Result<_>>()?)
        } else if let Some(path) = s.strip_prefix('@') {
            Self::File(PathBuf::from(path))
        } else if let Some(n) = s.strip_prefix("filiform:") {
            Self::Filiform(num(n)?)
        } else if let Some(n) = s.strip_prefix("abelian:") {
            Self::Abelian(num(n)?)
        } else if s == "g2" {
            Self::G2
        } else if s == "heis3" || s == "heisenberg3" {
            Self::Heisenberg3
        } else if let Some(n) = s.strip_prefix("sl") {
            Self::SpecialLinear(num(n)?)
        } else if let Some(n) = s.strip_prefix("so") {
            Self::Orthogonal(num(n)?)
        } else if let Some(n) = s.strip_prefix("sp") {
            Self::Symplectic(num(n)?)
        } else {
            return Err(Error::InvalidParameter(format!(
                "unknown algebra spec {s:?}"
            )));
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SpecialLinear(n) => write!(f, "sl{n}"),
            Self::Orthogonal(n) => write!(f, "so{n}"),
            Self::Symplectic(n) => write!(f, "sp{n}"),
            Self::G2 => write!(f, "g2"),
            Self::Heisenberg3 => write!(f, "heis3"),
            Self::Filiform(n) => write!(f, "filiform:{n}"),
            Self::Abelian(n) => write!(f, "abelian:{n}"),
            Self::Sum(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "sum:{}", names.join("+"))
            }
            Self::File(p) => write!(f, "@{}", p.display()),
        }
    }
}

/// A built algebra together with its Cartan marking, if it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltAlgebra {
    pub algebra: LieAlgebra,
    pub cartan: Option<CartanMarking>,
}

pub fn build(spec: &AlgebraSpec) -> Result<BuiltAlgebra> {
    spec.validate()?;
    let built = match spec {
        AlgebraSpec::SpecialLinear(n) => {
            semisimple(&spec.to_string(), realization::special_linear(*n))?
        }
        AlgebraSpec::Orthogonal(n) if n % 2 == 1 => {
            semisimple(&spec.to_string(), realization::odd_orthogonal(n / 2))?
        }
        AlgebraSpec::Orthogonal(n) => {
            semisimple(&spec.to_string(), realization::even_orthogonal(n / 2))?
        }
        AlgebraSpec::Symplectic(n) => {
            semisimple(&spec.to_string(), realization::symplectic(n / 2))?
        }
        AlgebraSpec::G2 => semisimple("g2", realization::g2())?,
        AlgebraSpec::Heisenberg3 => BuiltAlgebra {
            algebra: heisenberg3(),
            cartan: None,
        },
        AlgebraSpec::Filiform(n) => BuiltAlgebra {
            algebra: model_filiform(*n)?,
            cartan: None,
        },
        AlgebraSpec::Abelian(n) => BuiltAlgebra {
            algebra: LieAlgebra::abelian(*n),
            cartan: None,
        },
        AlgebraSpec::Sum(parts) => {
            let mut iter = parts.iter();
            let mut acc = build(iter.next().expect("validated"))?;
            for part in iter {
                let next = build(part)?;
                let offset = acc.algebra.dim();
                let cartan = match (acc.cartan, next.cartan) {
                    (Some(a), Some(b)) => {
                        let mut idx = a.indices().to_vec();
                        idx.extend(b.shifted(offset).indices());
                        Some(CartanMarking::new(idx))
                    }
                    _ => None,
                };
                acc = BuiltAlgebra {
                    algebra: direct_sum(&acc.algebra, &next.algebra),
                    cartan,
                };
            }
            acc.algebra = acc.algebra.with_name(spec.to_string());
            acc
        }
        AlgebraSpec::File(path) => {
            let file = load(path)?;
            BuiltAlgebra {
                algebra: file.algebra,
                cartan: file.cartan,
            }
        }
    };
    if let Some((i, j, k)) = built.algebra.jacobi_violation() {
        return Err(Error::Jacobi { i, j, k });
    }
    if let Some(c) = &built.cartan {
        c.check(&built.algebra)?;
    }
    Ok(built)
}

fn semisimple(name: &str, realization: Vec<crate::linalg::RationalMatrix>) -> Result<BuiltAlgebra> {
    let (algebra, cartan) = realization::chevalley_basis(name, realization)?;
    Ok(BuiltAlgebra {
        algebra,
        cartan: Some(cartan),
    })
}

/// `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets("heis3", 3, None, [(1, 2, vector::unit(3, 2))]).expect("valid table")
}

/// The model filiform algebra of dimension `n`: `[e1, e_i] = e_{i+1}` for
/// `2 ≤ i ≤ n − 1`, all other brackets zero.
pub fn model_filiform(n: usize) -> Result<LieAlgebra> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "filiform:{n}: need n at least 3"
        )));
    }
    LieAlgebra::from_brackets(
        format!("filiform:{n}"),
        n,
        None,
        (2..n).map(|i| (1, i, vector::unit(n, i))),
    )
}
