//! Rank over `GF(p)` for `p = 2^61 − 1`. Rows with rational entries are first
//! scaled to integer rows, so the rank found here never exceeds the rank
//! over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::Rational;

pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(PRIME))
        .to_u64()
        .expect("residue fits")
}

/// Integer multiple of `row` (by the lcm of its denominators), reduced mod p.
pub fn integer_row_mod_p(row: &[Rational]) -> Vec<u64> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| {
            if x.is_zero() {
                0
            } else {
                reduce(&(x.numer() * (&lcm / x.denom())))
            }
        })
        .collect()
}

/// Incremental row echelon form over `GF(p)`.
#[derive(Clone, Debug)]
pub struct ModularRank {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModularRank {
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

    /// Adds a row; `true` if it raised the rank.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        let mut v = integer_row_mod_p(row);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p];
            if f != 0 {
                let f = PRIME - f;
                for (a, &b) in v.iter_mut().zip(r) {
                    if b != 0 {
                        *a = (*a + mul(f, b)) % PRIME;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[p]);
        for a in &mut v {
            *a = mul(*a, s);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac, RationalMatrix};
    use proptest::prelude::*;

    #[test]
    fn inverse_and_scaling() {
        assert_eq!(mul(inv(12345), 12345), 1);
        let row = vec![rat_frac(1, 2), rat_frac(-1, 3), rat(0)];
        assert_eq!(integer_row_mod_p(&row), vec![3, PRIME - 2, 0]);
    }

    proptest! {
        #[test]
        fn matches_rational_rank_on_small_matrices(
            entries in proptest::collection::vec(-3i64..=3, 12),
        ) {
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let m = RationalMatrix::from_i64(&rows);
            let mut mr = ModularRank::new(4);
            for r in m.row_iter() {
                mr.insert(r);
            }
            prop_assert_eq!(mr.rank(), m.rank());
        }
    }
}
