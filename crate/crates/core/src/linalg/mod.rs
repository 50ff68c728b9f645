//! Exact rational linear algebra: scalars, dense matrices, and subspaces kept
//! in canonical reduced row-echelon form.

mod matrix;
mod modular;
mod poly;
mod rational;
mod subspace;

pub use matrix::{nullspace, rref, solve, RationalMatrix, RowReducer};
pub use modular::ModularRank;
pub use poly::{characteristic_polynomial, rational_roots};
pub use rational::{format_rational, parse_rational, rat, rat_frac, Rational, Vector};
pub use subspace::Subspace;

pub mod vector {
    //! Small helpers on coordinate vectors.
    use super::Rational;
    use num_traits::Zero;

    pub fn zeros(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    /// Standard basis vector, 0-based position.
    pub fn unit(n: usize, at: usize) -> Vec<Rational> {
        let mut v = zeros(n);
        v[at] = super::rat(1);
        v
    }

    pub fn from_i64(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| super::rat(x)).collect()
    }

    pub fn is_zero(v: &[Rational]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Rational, v: &[Rational]) -> Vec<Rational> {
        v.iter().map(|x| c * x).collect()
    }

    pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter()
            .zip(b)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    }

    /// `acc += c * v`, skipping zero terms.
    pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += c * x;
            }
        }
    }
}
