//! Chevalley bases extracted from matrix realizations.
//!
//! A realization is a basis of a Lie algebra of `N×N` matrices whose diagonal
//! part is a Cartan subalgebra and whose other basis elements are weight
//! vectors for it. From that we pick a positive system, normalize Chevalley
//! generators `e_i, f_i, h_i = [e_i, f_i]`, and grow the remaining root vectors
//! along extraspecial pairs: for a positive non-simple root `ξ` take the first
//! simple `α_i` with `ξ − α_i` a root, set `e_ξ = [e_i, e_{ξ−α_i}]/(p+1)` and
//! `e_{−ξ} = −[f_i, e_{−(ξ−α_i)}]/(p+1)` where `p` is the depth of the
//! `α_i`-string below `ξ − α_i`. The resulting structure constants are
//! integers, which the catalog tests check.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{nullspace, rat, vector, Rational, RationalMatrix, Vector};

use super::CartanMarking;

fn commutator(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    a.mul(b)
        .expect("square")
        .sub(&b.mul(a).expect("square"))
        .expect("same shape")
}

fn flatten(m: &RationalMatrix) -> Vector {
    m.row_iter().flat_map(|r| r.iter().cloned()).collect()
}

fn unflatten(size: usize, v: &[Rational]) -> RationalMatrix {
    RationalMatrix::from_rows(size, v.chunks(size).map(<[Rational]>::to_vec).collect())
        .expect("size² entries")
}

fn is_diagonal(m: &RationalMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

/// Solutions `X` of the linear conditions `conditions(X) = 0`, where each
/// condition row addresses entry `(a, b)` at position `a * size + b`.
pub(crate) fn matrix_kernel(size: usize, conditions: Vec<Vector>) -> Vec<RationalMatrix> {
    let m =
        RationalMatrix::from_rows(size * size, conditions).expect("conditions have size² entries");
    nullspace(&m)
        .basis()
        .row_iter()
        .map(|row| unflatten(size, row))
        .collect()
}

/// `{X : Xᵀ J + J X = 0}`.
pub(crate) fn form_preserving(form: &RationalMatrix) -> Vec<RationalMatrix> {
    let n = form.rows();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            // (XᵀJ)_ab = Σ_c X_ca J_cb ; (JX)_ab = Σ_c J_ac X_cb
            let mut row = vector::zeros(n * n);
            for c in 0..n {
                row[c * n + a] += &form[(c, b)];
                row[c * n + b] += &form[(a, c)];
            }
            if !vector::is_zero(&row) {
                rows.push(row);
            }
        }
    }
    matrix_kernel(n, rows)
}

struct RootVector {
    weight: Vector,
    matrix: RationalMatrix,
    // An off-diagonal entry in the support; the weight is d_a − d_b there.
    entry: (usize, usize),
}

fn weight_on(entry: (usize, usize), diag: &RationalMatrix) -> Rational {
    &diag[(entry.0, entry.0)] - &diag[(entry.1, entry.1)]
}

struct Coordinates {
    rows: Vec<usize>,
    inverse: RationalMatrix,
    basis: RationalMatrix,
}

impl Coordinates {
    fn new(basis: &[RationalMatrix]) -> Result<Self> {
        let cols: Vec<Vector> = basis.iter().map(flatten).collect();
        let b = RationalMatrix::from_columns(cols[0].len(), &cols)?;
        let sub = crate::linalg::Subspace::from_spanning(b.rows(), cols)?;
        if sub.dim() != basis.len() {
            return Err(Error::UnsupportedBasis(
                "realization basis is linearly dependent".into(),
            ));
        }
        // Independent rows of B are the pivot columns of RREF(Bᵀ).
        let rows = crate::linalg::Subspace::from_spanning(b.rows(), b.transpose().to_rows())?
            .pivots()
            .to_vec();
        let square = RationalMatrix::from_rows(
            basis.len(),
            rows.iter().map(|&r| b.row(r).to_vec()).collect(),
        )?;
        let inverse = square.inverse().expect("pivot rows are independent");
        Ok(Self {
            rows,
            inverse,
            basis: b,
        })
    }

    fn of(&self, m: &RationalMatrix) -> Vector {
        let flat = flatten(m);
        let picked: Vector = self.rows.iter().map(|&r| flat[r].clone()).collect();
        let coords = self.inverse.mul_vec(&picked).expect("square inverse");
        debug_assert_eq!(
            self.basis.mul_vec(&coords).unwrap(),
            flat,
            "element left the span"
        );
        coords
    }
}

/// Turns a matrix realization into a Chevalley-basis algebra with the Cartan
/// part first: `h1..hl, e1..eN, f1..fN` where `e_k`/`f_k` are the positive and
/// negative root vectors in matching order.
pub(crate) fn chevalley_basis(
    name: &str,
    realization: Vec<RationalMatrix>,
) -> Result<(LieAlgebra, CartanMarking)> {
    let (diagonal, off): (Vec<_>, Vec<_>) = realization.into_iter().partition(is_diagonal);
    let rank = diagonal.len();

    let mut roots = Vec::with_capacity(off.len());
    for x in off {
        if (0..x.rows()).any(|i| !x[(i, i)].is_zero()) {
            return Err(Error::UnsupportedBasis(
                "realization element mixes diagonal and root parts".into(),
            ));
        }
        let entry = (0..x.rows())
            .flat_map(|a| (0..x.cols()).map(move |b| (a, b)))
            .find(|&(a, b)| !x[(a, b)].is_zero())
            .expect("nonzero element");
        let weight: Vector = diagonal.iter().map(|d| weight_on(entry, d)).collect();
        for (d, w) in diagonal.iter().zip(&weight) {
            if commutator(d, &x) != x.scale(w) {
                return Err(Error::UnsupportedBasis(
                    "realization element is not a weight vector".into(),
                ));
            }
        }
        if vector::is_zero(&weight) {
            return Err(Error::InvalidCartan(
                "diagonal part is not self-centralizing".into(),
            ));
        }
        roots.push(RootVector {
            weight,
            matrix: x,
            entry,
        });
    }

    // Positive system from a generic functional (1, M, M², ...).
    let mut scale = 7i64;
    let functional = loop {
        let c: Vector = (0..rank as u32).map(|k| rat(scale.pow(k))).collect();
        if roots.iter().all(|r| !vector::dot(&c, &r.weight).is_zero()) {
            break c;
        }
        scale += 1;
    };
    let positive = |w: &Vector| vector::dot(&functional, w).is_positive();
    let find = |w: &Vector| roots.iter().position(|r| &r.weight == w);

    let pos: Vec<usize> = (0..roots.len())
        .filter(|&i| positive(&roots[i].weight))
        .collect();
    let simple: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&i| {
            !pos.iter().any(|&j| {
                let rest = vector::sub(&roots[i].weight, &roots[j].weight);
                find(&rest).is_some_and(|k| positive(&roots[k].weight))
            })
        })
        .collect();
    if simple.len() != rank {
        return Err(Error::UnsupportedBasis(format!(
            "found {} simple roots for a rank {rank} Cartan subalgebra",
            simple.len()
        )));
    }

    // Coefficients of each root over the simple roots.
    let simple_weights = RationalMatrix::from_columns(
        rank,
        &simple
            .iter()
            .map(|&i| roots[i].weight.clone())
            .collect::<Vec<_>>(),
    )?;
    let mut coeffs: Vec<Vec<i64>> = Vec::with_capacity(roots.len());
    for r in &roots {
        let c = crate::linalg::solve(&simple_weights, &r.weight)?.ok_or_else(|| {
            Error::UnsupportedBasis("root outside the span of simple roots".into())
        })?;
        let ints = c
            .iter()
            .map(|x| {
                x.is_integer()
                    .then(|| i64::try_from(x.to_integer()).ok())
                    .flatten()
                    .ok_or_else(|| Error::UnsupportedBasis("non-integral root coefficient".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        coeffs.push(ints);
    }
    let by_coeffs = |c: &[i64]| coeffs.iter().position(|x| x.as_slice() == c);

    // Chevalley generators.
    let mut e_simple = Vec::with_capacity(rank);
    let mut f_simple = Vec::with_capacity(rank);
    let mut h_simple = Vec::with_capacity(rank);
    for &i in &simple {
        let neg: Vec<i64> = coeffs[i].iter().map(|x| -x).collect();
        let j = by_coeffs(&neg)
            .ok_or_else(|| Error::UnsupportedBasis("roots do not come in ± pairs".into()))?;
        let e = roots[i].matrix.clone();
        let y = &roots[j].matrix;
        let alpha_of_bracket = weight_on(roots[i].entry, &commutator(&e, y));
        if alpha_of_bracket.is_zero() {
            return Err(Error::UnsupportedBasis("degenerate sl2 triple".into()));
        }
        let f = y.scale(&(rat(2) / alpha_of_bracket));
        h_simple.push(commutator(&e, &f));
        e_simple.push(e);
        f_simple.push(f);
    }

    // Positive roots by height, then coefficients.
    let mut order: Vec<usize> = pos.clone();
    order.sort_by_key(|&i| {
        (
            coeffs[i].iter().sum::<i64>(),
            std::cmp::Reverse(coeffs[i].clone()),
        )
    });

    let mut e_of: Vec<Option<RationalMatrix>> = vec![None; roots.len()];
    let mut f_of: Vec<Option<RationalMatrix>> = vec![None; roots.len()];
    for (s, &i) in simple.iter().enumerate() {
        e_of[i] = Some(e_simple[s].clone());
    }
    for &xi in &order {
        if e_of[xi].is_some() {
            continue;
        }
        let (s, eta) = (0..rank)
            .find_map(|s| {
                let mut c = coeffs[xi].clone();
                c[s] -= 1;
                by_coeffs(&c)
                    .filter(|&k| positive(&roots[k].weight))
                    .map(|k| (s, k))
            })
            .expect("non-simple positive root has a simple summand");
        let mut p = 0i64;
        loop {
            let mut c = coeffs[eta].clone();
            c[s] -= p + 1;
            if by_coeffs(&c).is_none() {
                break;
            }
            p += 1;
        }
        let inv = Rational::one() / rat(p + 1);
        let e_eta = e_of[eta].as_ref().expect("lower height done");
        e_of[xi] = Some(commutator(&e_simple[s], e_eta).scale(&inv));
        // f for the matching negative root
        let f_eta = if let Some(k) = simple.iter().position(|&q| q == eta) {
            f_simple[k].clone()
        } else {
            f_of[eta].clone().expect("lower height done")
        };
        f_of[xi] = Some(commutator(&f_simple[s], &f_eta).scale(&-inv));
    }
    for (s, &i) in simple.iter().enumerate() {
        f_of[i] = Some(f_simple[s].clone());
    }

    let mut basis: Vec<RationalMatrix> = h_simple;
    basis.extend(
        order
            .iter()
            .map(|&i| e_of[i].clone().expect("all positive roots built")),
    );
    basis.extend(
        order
            .iter()
            .map(|&i| f_of[i].clone().expect("all positive roots built")),
    );
    let dim = basis.len();

    let coords = Coordinates::new(&basis)?;
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let c = coords.of(&commutator(&basis[i], &basis[j]));
            if !vector::is_zero(&c) {
                brackets.push((i + 1, j + 1, c));
            }
        }
    }
    let n_pos = order.len();
    let labels = (1..=rank)
        .map(|k| format!("h{k}"))
        .chain((1..=n_pos).map(|k| format!("e{k}")))
        .chain((1..=n_pos).map(|k| format!("f{k}")))
        .collect();
    let algebra = LieAlgebra::from_brackets(name, dim, Some(labels), brackets)?;
    Ok((algebra, CartanMarking::new((1..=rank).collect())))
}

/// Trace-zero `N×N` matrices.
pub(crate) fn special_linear(size: usize) -> Vec<RationalMatrix> {
    let trace: Vector = (0..size * size)
        .map(|k| if k / size == k % size { rat(1) } else { rat(0) })
        .collect();
    matrix_kernel(size, vec![trace])
}

/// Odd orthogonal algebra for the form `[[1,0,0],[0,0,I],[0,I,0]]`.
pub(crate) fn odd_orthogonal(rank: usize) -> Vec<RationalMatrix> {
    let n = 2 * rank + 1;
    let mut j = RationalMatrix::zeros(n, n);
    j[(0, 0)] = rat(1);
    for i in 0..rank {
        j[(1 + i, 1 + rank + i)] = rat(1);
        j[(1 + rank + i, 1 + i)] = rat(1);
    }
    form_preserving(&j)
}

/// Even orthogonal algebra for the form `[[0,I],[I,0]]`.
pub(crate) fn even_orthogonal(rank: usize) -> Vec<RationalMatrix> {
    let n = 2 * rank;
    let mut j = RationalMatrix::zeros(n, n);
    for i in 0..rank {
        j[(i, rank + i)] = rat(1);
        j[(rank + i, i)] = rat(1);
    }
    form_preserving(&j)
}

/// Symplectic algebra for the form `[[0,I],[−I,0]]`.
pub(crate) fn symplectic(rank: usize) -> Vec<RationalMatrix> {
    let n = 2 * rank;
    let mut j = RationalMatrix::zeros(n, n);
    for i in 0..rank {
        j[(i, rank + i)] = rat(1);
        j[(rank + i, i)] = rat(-1);
    }
    form_preserving(&j)
}

/// `g2` as the stabilizer in `gl7` of the split 3-form
/// `x1∧x2∧x3 + y1∧y2∧y3 + z∧(x1∧y1 + x2∧y2 + x3∧y3)`, basis order
/// `x1 x2 x3 y1 y2 y3 z`. The diagonal torus `diag(d, −d, 0)` with
/// `d1 + d2 + d3 = 0` fixes every term.
pub(crate) fn g2() -> Vec<RationalMatrix> {
    const Z: usize = 6;
    let terms: [([usize; 3], i64); 5] = [
        ([0, 1, 2], 1),
        ([3, 4, 5], 1),
        ([Z, 0, 3], 1),
        ([Z, 1, 4], 1),
        ([Z, 2, 5], 1),
    ];
    // Fully antisymmetric coefficient φ(a, b, c).
    let phi = |a: usize, b: usize, c: usize| -> i64 {
        for (t, v) in &terms {
            let perms = [
                ([t[0], t[1], t[2]], 1),
                ([t[1], t[2], t[0]], 1),
                ([t[2], t[0], t[1]], 1),
                ([t[1], t[0], t[2]], -1),
                ([t[0], t[2], t[1]], -1),
                ([t[2], t[1], t[0]], -1),
            ];
            for (p, s) in perms {
                if p == [a, b, c] {
                    return s * v;
                }
            }
        }
        0
    };
    let n = 7;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // (X·φ)(e_i, e_j, e_k) = −φ(Xe_i, e_j, e_k) − φ(e_i, Xe_j, e_k) − φ(e_i, e_j, Xe_k)
                let mut row = vector::zeros(n * n);
                for p in 0..n {
                    row[p * n + i] -= rat(phi(p, j, k));
                    row[p * n + j] -= rat(phi(i, p, k));
                    row[p * n + k] -= rat(phi(i, j, p));
                }
                if !vector::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    matrix_kernel(n, rows)
}
