use num_traits::Zero;

use super::matrix::{kernel_from_rref, reduce_in_place, RationalMatrix};
use super::rational::{Rational, Vector};
use super::vector;
use crate::error::{check_len, Result};

/// A linear subspace of `Q^ambient`, stored as the nonzero rows of its
/// reduced row-echelon basis. Because that basis is canonical, two subspaces
/// are equal exactly when their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RationalMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RationalMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            check_len(ambient, v.len())?;
        }
        let mut rows = vectors;
        let pivots = reduce_in_place(&mut rows, ambient);
        Ok(Self::from_rref_rows(ambient, rows, pivots))
    }

    pub(crate) fn from_rref_rows(ambient: usize, rows: Vec<Vector>, pivots: Vec<usize>) -> Self {
        Self {
            ambient,
            basis: RationalMatrix::from_rows(ambient, rows).expect("rows have ambient length"),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn residual(&self, v: &[Rational]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.row_iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                vector::axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        check_len(self.ambient, v.len())?;
        Ok(vector::is_zero(&self.residual(v)))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    /// With an RREF basis these are just the entries of `v` at the pivots.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_len(other.ambient, self.ambient)?;
        for row in self.basis.row_iter() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_len(self.ambient, other.ambient)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_spanning(self.ambient, rows)
    }

    /// Orthogonal complement under the standard dot product: all `y` with
    /// `<b, y> = 0` for every basis vector `b`.
    pub fn annihilator(&self) -> Subspace {
        let rows = self.basis_vectors();
        kernel_from_rref(&rows, &self.pivots, self.ambient)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_len(self.ambient, other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, vector::from_i64};

    fn span(ambient: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_spanning(ambient, vs.iter().map(|v| from_i64(v)).collect()).unwrap()
    }

    #[test]
    fn membership() {
        let s = span(2, &[&[1, 0]]);
        assert!(s.contains(&[rat(2), rat(0)]).unwrap());
        assert!(!s.contains(&[rat(0), rat(1)]).unwrap());
        assert!(Subspace::zero(3).contains(&from_i64(&[0, 0, 0])).unwrap());
        assert!(s.contains(&from_i64(&[1, 0, 0])).is_err());
    }

    #[test]
    fn lattice_operations() {
        let x = span(2, &[&[1, 0]]);
        let y = span(2, &[&[0, 1]]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));

        let a = span(4, &[&[1, 2, 0, 1], &[0, 1, 1, 1]]);
        let b = span(4, &[&[1, 3, 1, 2], &[0, 0, 0, 1]]);
        let i = a.intersect(&b).unwrap();
        // (1,3,1,2) = (1,2,0,1) + (0,1,1,1) lies in both
        assert_eq!(i, span(4, &[&[1, 3, 1, 2]]));
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn canonical_equality() {
        let a = span(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = span(3, &[&[1, 2, 1], &[2, 3, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn coordinates_in_rref_basis() {
        let a = span(3, &[&[1, 0, 2], &[0, 1, 3]]);
        assert_eq!(
            a.coordinates(&from_i64(&[2, -1, 1])).unwrap(),
            Some(from_i64(&[2, -1]))
        );
        assert_eq!(a.coordinates(&from_i64(&[0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        assert!(Subspace::zero(2).sum(&Subspace::zero(3)).is_err());
        assert!(Subspace::zero(2).intersect(&Subspace::zero(3)).is_err());
    }
}
