//! The model filiform algebra `[e1, e_i] = e_{i+1}` and the maps
//! `Δ(Σ x_k e_k) = α x2 e_{n−1} + β x3 e_n`. Such a map is a derivation iff
//! `α = β`, yet `Δ_{2,1}` agrees at every point with some derivation:
//! `D1` when `x2 = 0`, otherwise `2·D1 + t·D2` with `t = −x3/x2`, where
//! `D2(Σ x_k e_k) = x2 e_n`. For `n = 3` this is the Heisenberg algebra with
//! targets `e2`, `e3`.

use num_traits::Zero;

use crate::catalog::model_filiform;
use crate::derivations::is_derivation;
use crate::error::{check_len, Error, Result};
use crate::lie::{LieAlgebra, LinearMap};
use crate::linalg::{rat, vector, Rational, RationalMatrix, Subspace, Vector};
use crate::local::LocalWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiliformMap {
    pub n: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub realized: LinearMap,
}

fn two_entry_map(
    n: usize,
    at_x2: (usize, Rational),
    at_x3: Option<(usize, Rational)>,
) -> LinearMap {
    let mut m = RationalMatrix::zeros(n, n);
    m[(at_x2.0 - 1, 1)] = at_x2.1;
    if let Some((row, c)) = at_x3 {
        m[(row - 1, 2)] = c;
    }
    LinearMap::new(m).expect("square")
}

pub fn build_filiform_delta(n: usize, alpha: Rational, beta: Rational) -> Result<FiliformMap> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "filiform maps need n at least 3, got {n}"
        )));
    }
    let realized = two_entry_map(n, (n - 1, alpha.clone()), Some((n, beta.clone())));
    Ok(FiliformMap {
        n,
        alpha,
        beta,
        realized,
    })
}

/// `Δ_{α,β}` is a derivation of the model filiform algebra.
pub fn filiform_derivation_criterion(fm: &FiliformMap) -> Result<bool> {
    is_derivation(&model_filiform(fm.n)?, &fm.realized)
}

/// `(Δ[e1, e2], [Δe1, e2] + [e1, Δe2])`, which are `β e_n` and `α e_n`.
pub fn leibniz_pair(fm: &FiliformMap) -> Result<(Vector, Vector)> {
    let l = model_filiform(fm.n)?;
    let (e1, e2) = (l.basis_vector(1), l.basis_vector(2));
    let lhs = fm.realized.apply(&l.bracket(&e1, &e2)?)?;
    let rhs = vector::add(
        &l.bracket(&fm.realized.apply(&e1)?, &e2)?,
        &l.bracket(&e1, &fm.realized.apply(&e2)?)?,
    );
    Ok((lhs, rhs))
}

pub fn d1(n: usize) -> Result<LinearMap> {
    Ok(build_filiform_delta(n, rat(1), rat(1))?.realized)
}

pub fn d2(n: usize) -> Result<LinearMap> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "filiform maps need n at least 3, got {n}"
        )));
    }
    Ok(two_entry_map(n, (n, rat(1)), None))
}

/// The closed-form witness for `Δ_{2,1}` at `x`. Coefficients are over
/// `[D1, D2]`.
pub fn filiform_local_witness(fm: &FiliformMap, x: &[Rational]) -> Result<LocalWitness> {
    if fm.alpha != rat(2) || fm.beta != rat(1) {
        return Err(Error::InvalidParameter(
            "the closed-form witness covers alpha = 2, beta = 1 only".into(),
        ));
    }
    check_len(fm.n, x.len())?;
    let d1 = d1(fm.n)?;
    let (x2, x3) = (&x[1], &x[2]);
    let (witness, coefficients) = if x2.is_zero() {
        (d1, vec![rat(1), rat(0)])
    } else {
        let t = -(x3 / x2);
        let w = d1.scale(&rat(2)).add(&d2(fm.n)?.scale(&t))?;
        (w, vec![rat(2), t])
    };
    Ok(LocalWitness {
        point: x.to_vec(),
        witness,
        coefficients,
    })
}

/// The witness is a derivation and agrees with `delta` at its point.
pub fn witness_holds(algebra: &LieAlgebra, delta: &LinearMap, w: &LocalWitness) -> Result<bool> {
    Ok(is_derivation(algebra, &w.witness)?
        && w.witness.apply(&w.point)? == delta.apply(&w.point)?)
}

/// The facts behind `D2 ∈ Der(L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct D2Check {
    pub is_derivation: bool,
    pub kills_derived_algebra: bool,
    pub image_in_center: bool,
    pub en_central: bool,
}

impl D2Check {
    pub fn all(&self) -> bool {
        self.is_derivation && self.kills_derived_algebra && self.image_in_center && self.en_central
    }
}

pub fn d2_is_derivation_check(n: usize) -> Result<D2Check> {
    let l = model_filiform(n)?;
    let d = d2(n)?;
    let center = l.center();
    let derived = l.bracket_span(&Subspace::full(n), &Subspace::full(n))?;
    let kills_derived_algebra = derived
        .basis()
        .row_iter()
        .map(|v| d.apply(v))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|v| vector::is_zero(v));
    let image = Subspace::from_spanning(n, (0..n).map(|j| d.matrix().column(j)).collect())?;
    Ok(D2Check {
        is_derivation: is_derivation(&l, &d)?,
        kills_derived_algebra,
        image_in_center: image.is_subspace_of(&center)?,
        en_central: center.contains(&l.basis_vector(n))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::derivation_space;
    use crate::linalg::{rat_frac, vector::from_i64};
    use crate::local::{is_local_derivation_sampled, local_constraint_space, local_witness};

    #[test]
    fn delta_entries() {
        let fm = build_filiform_delta(4, rat(2), rat(1)).unwrap();
        let m = fm.realized.matrix();
        assert_eq!(m[(2, 1)], rat(2));
        assert_eq!(m[(3, 2)], rat(1));
        let nonzero = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[(i, j)].is_zero());
        assert_eq!(nonzero.count(), 2);

        let d = d1(5).unwrap();
        assert_eq!(
            d.apply(&from_i64(&[0, 1, 0, 0, 0])).unwrap(),
            from_i64(&[0, 0, 0, 1, 0])
        );
        assert_eq!(
            d.apply(&from_i64(&[0, 0, 1, 0, 0])).unwrap(),
            from_i64(&[0, 0, 0, 0, 1])
        );
        assert!(build_filiform_delta(6, rat(0), rat(0))
            .unwrap()
            .realized
            .is_zero());
        assert!(build_filiform_delta(2, rat(1), rat(1)).is_err());
    }

    #[test]
    fn criterion_examples() {
        let yes = build_filiform_delta(6, rat(1), rat(1)).unwrap();
        assert!(filiform_derivation_criterion(&yes).unwrap());
        let no = build_filiform_delta(6, rat(2), rat(1)).unwrap();
        assert!(!filiform_derivation_criterion(&no).unwrap());
        let q = build_filiform_delta(4, rat_frac(7, 3), rat_frac(7, 3)).unwrap();
        assert!(filiform_derivation_criterion(&q).unwrap());

        let (lhs, rhs) = leibniz_pair(&no).unwrap();
        assert_eq!(lhs, from_i64(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(rhs, from_i64(&[0, 0, 0, 0, 0, 2]));
    }

    #[test]
    fn witness_examples() {
        let fm = build_filiform_delta(5, rat(2), rat(1)).unwrap();
        let l = model_filiform(5).unwrap();
        let x = from_i64(&[0, 1, 3, 0, 0]);
        let w = filiform_local_witness(&fm, &x).unwrap();
        assert_eq!(w.coefficients, from_i64(&[2, -3]));
        assert_eq!(w.witness.apply(&x).unwrap(), from_i64(&[0, 0, 0, 2, 3]));
        assert!(witness_holds(&l, &fm.realized, &w).unwrap());

        let fm4 = build_filiform_delta(4, rat(2), rat(1)).unwrap();
        let l4 = model_filiform(4).unwrap();
        let x = from_i64(&[1, 0, 5, 0]);
        let w = filiform_local_witness(&fm4, &x).unwrap();
        assert_eq!(w.witness, d1(4).unwrap());
        assert_eq!(w.witness.apply(&x).unwrap(), from_i64(&[0, 0, 0, 5]));
        assert!(witness_holds(&l4, &fm4.realized, &w).unwrap());

        let w = filiform_local_witness(&fm4, &vector::zeros(4)).unwrap();
        assert_eq!(w.witness, d1(4).unwrap());
        assert!(witness_holds(&l4, &fm4.realized, &w).unwrap());

        // proportional points share a witness
        let a = filiform_local_witness(&fm, &from_i64(&[1, 2, -4, 1, 0])).unwrap();
        let b = filiform_local_witness(&fm, &from_i64(&[3, 6, -12, 0, 5])).unwrap();
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn heisenberg_case() {
        let fm = build_filiform_delta(3, rat(2), rat(1)).unwrap();
        assert_eq!(
            fm.realized.apply(&from_i64(&[0, 1, 0])).unwrap(),
            from_i64(&[0, 2, 0])
        );
        assert!(!filiform_derivation_criterion(&fm).unwrap());
        let l = model_filiform(3).unwrap();
        for x in [[0, 1, 1], [4, -2, 7], [1, 0, -3]] {
            let w = filiform_local_witness(&fm, &from_i64(&x)).unwrap();
            assert!(witness_holds(&l, &fm.realized, &w).unwrap());
        }
    }

    #[test]
    fn d2_facts() {
        for n in 3..=8 {
            assert!(d2_is_derivation_check(n).unwrap().all(), "n = {n}");
        }
    }

    #[test]
    fn solver_agrees_with_closed_form() {
        let fm = build_filiform_delta(4, rat(2), rat(1)).unwrap();
        let l = model_filiform(4).unwrap();
        let ds = derivation_space(&l);
        assert!(local_witness(&ds, &fm.realized, &from_i64(&[1, 2, 3, 4]))
            .unwrap()
            .is_some());
        assert!(is_local_derivation_sampled(&ds, &fm.realized, 200, 5)
            .unwrap()
            .passed());

        // basis points alone leave a gap above Der
        let basis: Vec<Vector> = (0..4).map(|i| vector::unit(4, i)).collect();
        let c = local_constraint_space(&ds, &basis).unwrap();
        assert!(c.dim() > ds.dim());
        assert!(ds.space().is_subspace_of(&c).unwrap());
        assert!(c.contains(&fm.realized.flatten()).unwrap());
    }
}
