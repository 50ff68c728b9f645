//! Characteristic polynomials and their rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::RationalMatrix;
use super::rational::{Rational, Vector};

/// Coefficients of `det(x·I − A)`, constant term first; the last entry is 1.
/// Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &RationalMatrix) -> Vector {
    let n = a.rows();
    assert_eq!(n, a.cols(), "square matrix");
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let am = a.mul(&m).expect("square");
        m = am
            .add(&RationalMatrix::identity(n).scale(&coeffs[n - k + 1]))
            .expect("square");
        let tr = a.mul(&m).expect("square").trace();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x − r)`, assuming `r` is a root.
fn deflate(poly: &[Rational], r: &Rational) -> Vector {
    let d = poly.len() - 1;
    let mut out = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for k in (0..d).rev() {
        carry = &poly[k + 1] + carry * r;
        out[k] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > limit {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots with multiplicities, in increasing order, plus the degree
/// of the factor left over (zero when the polynomial splits over `Q`).
/// Returns `None` only if the candidate search is too large to attempt.
pub fn rational_roots(poly: &[Rational]) -> Option<(Vec<(Rational, usize)>, usize)> {
    let mut p: Vector = poly.to_vec();
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push = |roots: &mut Vec<(Rational, usize)>, r: Rational| match roots
        .iter_mut()
        .find(|(x, _)| *x == r)
    {
        Some(e) => e.1 += 1,
        None => roots.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(&mut roots, Rational::zero());
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        // Integer multiple of p for the rational root theorem.
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let lead = ints.last().expect("nonempty").clone();
        let constant = ints[0].clone();
        let qs = divisors(&lead, 1 << 24)?;
        let ps = divisors(&constant, 1 << 24)?;
        let mut found = None;
        'search: for q in &qs {
            for pp in &ps {
                for s in [pp.clone(), -pp.clone()] {
                    let r = Rational::new(s, q.clone());
                    if eval(&p, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                push(&mut roots, r);
            }
            None => break,
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some((roots, p.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac};

    #[test]
    fn charpoly_examples() {
        // [[2,1],[0,3]] -> x² − 5x + 6
        let a = RationalMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        assert_eq!(characteristic_polynomial(&a), vec![rat(6), rat(-5), rat(1)]);
        let z = RationalMatrix::zeros(3, 3);
        assert_eq!(
            characteristic_polynomial(&z),
            vec![rat(0), rat(0), rat(0), rat(1)]
        );
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x − 2)²(x + 1/2) x = x⁴ − 7/2 x³ + 2x² + 2x
        let p = vec![rat(0), rat(2), rat(2), rat_frac(-7, 2), rat(1)];
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(rest, 0);
        assert_eq!(roots, vec![(rat_frac(-1, 2), 1), (rat(0), 1), (rat(2), 2)]);
    }

    #[test]
    fn irrational_part_is_left_over() {
        // (x² − 2)(x − 1)
        let p = vec![rat(2), rat(-2), rat(-1), rat(1)];
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![(rat(1), 1)]);
        assert_eq!(rest, 2);
    }
}
