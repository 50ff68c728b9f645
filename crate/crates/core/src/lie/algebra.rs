use num_traits::Zero;

use crate::error::{check_len, Error, Result};
use crate::linalg::{vector, Rational, RationalMatrix, Subspace, Vector};

use super::LinearMap;

/// A finite-dimensional Lie algebra given by structure constants on a basis
/// `e1..en`. Only brackets `[e_i, e_j]` with `i < j` are stored; the rest
/// follow from antisymmetry.
///
/// Public methods that take basis indices use 1-based indices. Vectors are
/// plain coordinate vectors (position 0 holds the `e1` coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    // Indexed by `pair_index(i, j)` for 0-based i < j; each entry has length n.
    table: Vec<Vector>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra from 1-based bracket entries `(i, j, [e_i, e_j])`
    /// with `i < j`. Pairs not listed bracket to zero. The Jacobi identity is
    /// not checked here; see [`LieAlgebra::validate`].
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        labels: Option<Vec<String>>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let labels = match labels {
            Some(l) => {
                check_len(dim, l.len())?;
                l
            }
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut table = vec![vector::zeros(dim); dim * dim.saturating_sub(1) / 2];
        for (i, j, value) in brackets {
            if i == 0 || j == 0 || i >= j || j > dim {
                return Err(Error::InvalidParameter(format!(
                    "bracket index pair ({i}, {j}) must satisfy 1 <= i < j <= {dim}"
                )));
            }
            check_len(dim, value.len())?;
            table[pair_index(dim, i - 1, j - 1)] = value;
        }
        Ok(Self {
            name: name.into(),
            labels,
            table,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(format!("abelian{dim}"), dim, None, []).expect("no brackets")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_len(self.dim(), labels.len())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `e_i` for a 1-based index.
    pub fn basis_vector(&self, i: usize) -> Vector {
        vector::unit(self.dim(), i - 1)
    }

    /// `[e_i, e_j]` for 0-based indices, with antisymmetry applied.
    pub(crate) fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.table[pair_index(n, i, j)].clone(),
            Greater => self.table[pair_index(n, j, i)].iter().map(|x| -x).collect(),
            Equal => vector::zeros(n),
        }
    }

    /// Structure constants of `[e_i, e_j]` for 1-based `i < j`.
    pub fn structure(&self, i: usize, j: usize) -> Option<&[Rational]> {
        (i >= 1 && i < j && j <= self.dim())
            .then(|| &self.table[pair_index(self.dim(), i - 1, j - 1)][..])
    }

    /// Nonzero stored brackets as 1-based `(i, j, [e_i, e_j])`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> + '_ {
        let n = self.dim();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i + 1, j + 1, &self.table[pair_index(n, i, j)][..]))
            .filter(|(_, _, v)| !vector::is_zero(v))
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        check_len(n, x.len())?;
        check_len(n, y.len())?;
        let mut out = vector::zeros(n);
        let xs: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
        let ys: Vec<usize> = (0..n).filter(|&j| !y[j].is_zero()).collect();
        for &i in &xs {
            for &j in &ys {
                let c = &x[i] * &y[j];
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => {
                        vector::axpy(&mut out, &c, &self.table[pair_index(n, i, j)])
                    }
                    std::cmp::Ordering::Greater => {
                        vector::axpy(&mut out, &-c, &self.table[pair_index(n, j, i)])
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        Ok(out)
    }

    /// `ad(a)`: column `j` is `[a, e_j]`.
    pub fn ad(&self, a: &[Rational]) -> Result<LinearMap> {
        let n = self.dim();
        check_len(n, a.len())?;
        let mut m = RationalMatrix::zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..n {
                let col = self.bracket_basis(i, j);
                for (k, c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] += ai * c;
                    }
                }
            }
        }
        Ok(LinearMap::new(m).expect("square"))
    }

    /// `ad(e_i)` for a 0-based index.
    pub(crate) fn ad_basis(&self, i: usize) -> LinearMap {
        self.ad(&vector::unit(self.dim(), i))
            .expect("basis vector has algebra length")
    }

    /// First basis triple (1-based, `i < j < k`) where the Jacobi identity
    /// fails, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let ejk = self.bracket_basis(j, k);
                    let eki = self.bracket_basis(k, i);
                    let ek = vector::unit(n, k);
                    let ei = vector::unit(n, i);
                    let ej = vector::unit(n, j);
                    let s1 = self.bracket(&eij, &ek).expect("dims");
                    let s2 = self.bracket(&ejk, &ei).expect("dims");
                    let s3 = self.bracket(&eki, &ej).expect("dims");
                    let total = vector::add(&vector::add(&s1, &s2), &s3);
                    if !vector::is_zero(&total) {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }

    /// `true` iff the Jacobi identity holds on all basis triples. Triples with
    /// a repeated index hold automatically once antisymmetry is built in.
    pub fn validate(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// The subalgebra spanned by `sub`, as an algebra in its own right, using
    /// the canonical basis of `sub`. Fails if `sub` is not bracket-closed.
    pub fn restrict_to(&self, sub: &Subspace) -> Result<LieAlgebra> {
        check_len(self.dim(), sub.ambient_dim())?;
        let basis = sub.basis_vectors();
        let m = basis.len();
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = self.bracket(&basis[i], &basis[j])?;
                let coords = sub.coordinates(&b)?.ok_or_else(|| {
                    Error::InvalidParameter("subspace is not closed under the bracket".into())
                })?;
                if !vector::is_zero(&coords) {
                    brackets.push((i + 1, j + 1, coords));
                }
            }
        }
        LieAlgebra::from_brackets(format!("{}|sub{m}", self.name), m, None, brackets)
    }
}
