use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{Rational, Vector};
use super::subspace::Subspace;
use super::vector;
use crate::error::{check_len, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            check_len(cols, row.len())?;
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| vector::from_i64(r)).collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        check_len(self.cols, v.len())?;
        Ok(self.row_iter().map(|r| vector::dot(r, v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        reduce_in_place(&mut rows, self.cols).len()
    }

    /// Determinant by fraction Gaussian elimination. Non-square input gives zero.
    pub fn determinant(&self) -> Rational {
        if self.rows != self.cols {
            return Rational::zero();
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let (top, bottom) = a.split_at_mut(r);
                vector::axpy(&mut bottom[0], &-f, &top[col]);
            }
        }
        det
    }

    /// Inverse, or `None` for a singular or non-square matrix.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let id = Self::identity(n);
        let rows: Vec<Vector> = (0..n)
            .map(|i| self.row(i).iter().chain(id.row(i)).cloned().collect())
            .collect();
        let mut rows = rows;
        let pivots = reduce_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(n, inv).expect("square"))
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Each row scaled by the lcm of its denominators, so it has the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Gauss-Jordan on a list of rows. Leaves the nonzero rows in canonical RREF
/// (zero rows removed) and returns the pivot columns in increasing order.
///
/// Runs fraction-free over the integers: after each pivot every entry is a
/// minor of the scaled input, every division is exact, and all pivots share
/// one value `d`. Dividing by `d` at the end gives the RREF.
pub(crate) fn reduce_in_place(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !vector::is_zero(r))
        .map(|r| integer_row(r))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut top = 0;
    for col in 0..cols {
        if top == ints.len() {
            break;
        }
        let Some(p) = (top..ints.len()).find(|&r| !ints[r][col].is_zero()) else {
            continue;
        };
        ints.swap(top, p);
        let pivot_row = std::mem::take(&mut ints[top]);
        let d = pivot_row[col].clone();
        for (r, row) in ints.iter_mut().enumerate() {
            if r == top {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if x.is_zero() && (f.is_zero() || y.is_zero()) {
                    continue;
                }
                let mut v = &d * &*x;
                if !f.is_zero() && !y.is_zero() {
                    v -= &f * y;
                }
                *x = v / &prev;
            }
        }
        ints[top] = pivot_row;
        prev = d;
        pivots.push(col);
        top += 1;
    }
    ints.truncate(top);
    *rows = ints
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::new(x, prev.clone())
                    }
                })
                .collect()
        })
        .collect();
    pivots
}

/// Reduced row-echelon form, same shape as the input (zero rows at the bottom).
pub fn rref(m: &RationalMatrix) -> RationalMatrix {
    let mut rows = m.to_rows();
    reduce_in_place(&mut rows, m.cols());
    rows.resize(m.rows(), vector::zeros(m.cols()));
    RationalMatrix::from_rows(m.cols(), rows).expect("shape preserved")
}

/// Kernel of `m` as a canonical subspace of dimension `cols - rank`.
pub fn nullspace(m: &RationalMatrix) -> Subspace {
    let mut rows = m.to_rows();
    let pivots = reduce_in_place(&mut rows, m.cols());
    kernel_from_rref(&rows, &pivots, m.cols())
}

pub(crate) fn kernel_from_rref(rows: &[Vector], pivots: &[usize], cols: usize) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let basis = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vector::zeros(cols);
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect();
    Subspace::from_spanning(cols, basis).expect("kernel vectors have ambient length")
}

/// One solution of `m x = b` with every free variable set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Option<Vector>> {
    check_len(m.rows(), b.len())?;
    let n = m.cols();
    let mut rows: Vec<Vector> = m
        .row_iter()
        .zip(b)
        .map(|(r, x)| {
            r.iter()
                .cloned()
                .chain(std::iter::once(x.clone()))
                .collect()
        })
        .collect();
    let pivots = reduce_in_place(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vector::zeros(n);
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][n].clone();
    }
    Ok(Some(x))
}

/// Incrementally maintained RREF row space. Inserting a row keeps the stored
/// rows in canonical form, so the accumulated space can be read off at any time.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the stored pivots. Zero result means `v` is in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                vector::axpy(&mut v, &f, row);
            }
        }
        v
    }

    /// Adds `v` to the row space; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        check_len(self.cols, v.len())?;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                vector::axpy(row, &f, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rref_rows(self.cols, self.rows, self.pivots)
    }

    /// Kernel of the accumulated rows, i.e. the common solutions of all
    /// inserted linear conditions.
    pub fn kernel(&self) -> Subspace {
        kernel_from_rref(&self.rows, &self.pivots, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac};

    #[test]
    fn rref_examples() {
        let m = RationalMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        let r = rref(&m);
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(m.rank(), 1);

        let id = RationalMatrix::identity(3);
        assert_eq!(rref(&id), id);

        // Hand elimination: R2 - 4R1 = (0,-3,-6), R3 - 7R1 = (0,-6,-12);
        // scale R2 to (0,1,2); R1 - 2R2 = (1,0,-1).
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(
            rref(&m),
            RationalMatrix::from_i64(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]])
        );
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        let k = nullspace(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.dim(), 1);
        // canonical form of span{(-2,1)} is span{(1,-1/2)}
        assert_eq!(k.basis().row(0), &[rat(1), rat_frac(-1, 2)][..]);
        assert!(k.contains(&[rat(-2), rat(1)]).unwrap());

        assert_eq!(nullspace(&RationalMatrix::identity(2)).dim(), 0);
        assert_eq!(nullspace(&RationalMatrix::from_i64(&[&[1, 1, 1]])).dim(), 2);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(
            solve(&id, &[rat(3), rat(5)]).unwrap(),
            Some(vec![rat(3), rat(5)])
        );

        let m = RationalMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(solve(&m, &[rat(2)]).unwrap(), Some(vec![rat(2), rat(0)]));

        let m = RationalMatrix::from_i64(&[&[1], &[1]]);
        assert_eq!(solve(&m, &[rat(1), rat(2)]).unwrap(), None);

        assert!(solve(&m, &[rat(1)]).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = RationalMatrix::from_i64(&[&[0, 2], &[3, 1]]);
        assert_eq!(m.determinant(), rat(-6));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn row_reducer_matches_batch_rref() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[0, 0, 1]]);
        let mut rr = RowReducer::new(3);
        let grew: Vec<bool> = m.row_iter().map(|r| rr.insert(r).unwrap()).collect();
        assert_eq!(grew, vec![true, true, false, true]);
        assert_eq!(rr.into_subspace().basis(), &RationalMatrix::identity(3));
    }
}
