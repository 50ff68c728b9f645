use crate::error::{check_len, Error, Result};
use crate::linalg::{Rational, RationalMatrix, Vector};

/// Endomorphism of an `n`-dimensional algebra. Column `j` of the matrix is the
/// image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: RationalMatrix,
}

impl LinearMap {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidParameter(format!(
                "linear map must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: RationalMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: RationalMatrix::identity(n),
        }
    }

    /// Map whose `j`-th column is `images[j]`.
    pub fn from_images(images: &[Vector]) -> Result<Self> {
        Self::new(RationalMatrix::from_columns(images.len(), images)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(x)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Column-major flattening: entry `(i, j)` goes to position `j * n + i`,
    /// so the images of `e1, e2, ...` appear one after another.
    pub fn flatten(&self) -> Vector {
        let n = self.dim();
        (0..n)
            .flat_map(|j| (0..n).map(move |i| (i, j)))
            .map(|(i, j)| self.matrix[(i, j)].clone())
            .collect()
    }

    pub fn from_flat(n: usize, flat: &[Rational]) -> Result<Self> {
        check_len(n * n, flat.len())?;
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] = flat[j * n + i].clone();
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            matrix: self.matrix.scale(c),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }
}
