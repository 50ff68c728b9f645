//! The derivation algebra `Der(L)` as the kernel of the Leibniz system, and
//! its inner part `ad(L)`.

use num_traits::Zero;

use crate::error::{check_len, Result};
use crate::lie::{LieAlgebra, LinearMap};
use crate::linalg::{solve, vector, RationalMatrix, RowReducer, Subspace, Vector};

/// `D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]` for all `i < j`.
pub fn is_derivation(algebra: &LieAlgebra, d: &LinearMap) -> Result<bool> {
    let n = algebra.dim();
    check_len(n, d.dim())?;
    let images: Vec<Vector> = (0..n).map(|j| d.matrix().column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.apply(&algebra.bracket_basis(i, j))?;
            let ei = vector::unit(n, i);
            let ej = vector::unit(n, j);
            let rhs = vector::add(
                &algebra.bracket(&images[i], &ej)?,
                &algebra.bracket(&ei, &images[j])?,
            );
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Der(L)` and `ad(L)` as subspaces of `End(L)` flattened column-major
/// (see [`LinearMap::flatten`]).
#[derive(Clone, Debug)]
pub struct DerivationSpace<'a> {
    algebra: &'a LieAlgebra,
    space: Subspace,
    inner: Subspace,
    basis: Vec<LinearMap>,
}

impl<'a> DerivationSpace<'a> {
    pub fn algebra(&self) -> &'a LieAlgebra {
        self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner.dim()
    }

    /// `true` when every derivation is inner.
    pub fn all_inner(&self) -> bool {
        self.space == self.inner
    }

    /// The canonical basis of `Der(L)`, reshaped into maps.
    pub fn basis(&self) -> &[LinearMap] {
        &self.basis
    }

    pub fn contains(&self, d: &LinearMap) -> Result<bool> {
        self.space.contains(&d.flatten())
    }

    /// Some `a` with `ad(a) = d` (free variables zero), or `None` when `d` is
    /// not inner.
    pub fn express_as_inner(&self, d: &LinearMap) -> Result<Option<Vector>> {
        let n = self.algebra.dim();
        check_len(n, d.dim())?;
        let columns: Vec<Vector> = (0..n).map(|i| self.algebra.ad_basis(i).flatten()).collect();
        let m = RationalMatrix::from_columns(n * n, &columns)?;
        solve(&m, &d.flatten())
    }
}

/// Solves the Leibniz system: `n` equations per pair `i < j` in the `n²`
/// unknown entries of `D`.
pub fn derivation_space(algebra: &LieAlgebra) -> DerivationSpace<'_> {
    let n = algebra.dim();
    let nn = n * n;
    // brackets[a][b] = [e_a, e_b]
    let brackets: Vec<Vec<Vector>> = (0..n)
        .map(|a| (0..n).map(|b| algebra.bracket_basis(a, b)).collect())
        .collect();
    let idx = |row: usize, col: usize| col * n + row;

    let mut system = RowReducer::new(nn);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut eq = vector::zeros(nn);
                // D[e_i, e_j] component k: sum_m c_ij^m D_km
                for (m, c) in brackets[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        eq[idx(k, m)] += c;
                    }
                }
                // [D e_i, e_j] component k: sum_m D_mi c_mj^k
                // [e_i, D e_j] component k: sum_m D_mj c_im^k
                for m in 0..n {
                    let a = &brackets[m][j][k];
                    if !a.is_zero() {
                        eq[idx(m, i)] -= a;
                    }
                    let b = &brackets[i][m][k];
                    if !b.is_zero() {
                        eq[idx(m, j)] -= b;
                    }
                }
                if !vector::is_zero(&eq) {
                    system.insert(&eq).expect("equation has n² entries");
                }
            }
        }
    }
    let space = system.kernel();
    let inner =
        Subspace::from_spanning(nn, (0..n).map(|i| algebra.ad_basis(i).flatten()).collect())
            .expect("flattened maps have n² entries");
    let basis = space
        .basis()
        .row_iter()
        .map(|row| LinearMap::from_flat(n, row).expect("n² entries"))
        .collect();
    DerivationSpace {
        algebra,
        space,
        inner,
        basis,
    }
}
