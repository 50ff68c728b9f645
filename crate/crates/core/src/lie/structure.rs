//! Series, center, Killing form and the structural predicates built on them.

use num_traits::Zero;

use crate::error::{check_len, Result};
use crate::linalg::{nullspace, vector, Rational, RationalMatrix, Subspace, Vector};

use super::LieAlgebra;

impl LieAlgebra {
    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        let mut out = Vec::new();
        for x in a.basis().row_iter() {
            for y in b.basis().row_iter() {
                let z = self.bracket(x, y)?;
                if !vector::is_zero(&z) {
                    out.push(z);
                }
            }
        }
        Subspace::from_spanning(self.dim(), out)
    }

    /// `L^0 = L`, `L^k = [L^{k-1}, L]`, stopping once a term repeats. The
    /// repeated term is not pushed twice.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        self.series(|_, prev| self.bracket_span(prev, &full))
    }

    /// `L^(0) = L`, `L^(k) = [L^(k-1), L^(k-1)]`.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.series(|_, prev| self.bracket_span(prev, prev))
    }

    fn series(&self, next: impl Fn(usize, &Subspace) -> Result<Subspace>) -> Vec<Subspace> {
        let mut terms = vec![Subspace::full(self.dim())];
        loop {
            let prev = terms.last().expect("nonempty");
            let term = next(terms.len(), prev).expect("subspaces live in the algebra");
            if &term == prev {
                return terms;
            }
            terms.push(term);
        }
    }

    /// Elements commuting with every vector of `sub`.
    pub fn centralizer(&self, sub: &Subspace) -> Result<Subspace> {
        check_len(self.dim(), sub.ambient_dim())?;
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for y in sub.basis().row_iter() {
            // x ↦ [x, y] is -ad(y); its rows vanish on the centralizer.
            let ad = self.ad(y)?;
            rows.extend(ad.matrix().to_rows());
        }
        if rows.is_empty() {
            return Ok(Subspace::full(n));
        }
        Ok(nullspace(&RationalMatrix::from_rows(n, rows)?))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim()))
            .expect("full subspace has algebra dimension")
    }

    /// `κ(e_i, e_j) = trace(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> RationalMatrix {
        let n = self.dim();
        let ads: Vec<RationalMatrix> = (0..n).map(|i| self.ad_basis(i).matrix().clone()).collect();
        let mut k = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = Rational::zero();
                for p in 0..n {
                    for q in 0..n {
                        let a = &ads[i][(p, q)];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &ads[j][(q, p)];
                        if !b.is_zero() {
                            t += a * b;
                        }
                    }
                }
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// `κ(x, y)` for arbitrary vectors.
    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let k = self.killing_form();
        Ok(vector::dot(x, &k.mul_vec(y)?))
    }

    /// Cartan's criterion: nondegenerate Killing form. The zero algebra is
    /// not semisimple.
    pub fn is_semisimple(&self) -> bool {
        self.dim() > 0 && !self.killing_form().determinant().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series()
            .last()
            .is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    /// `dim L^k = n − k − 1` for `1 ≤ k ≤ n − 1`. Only dimensions `n ≥ 3`
    /// qualify.
    pub fn is_filiform(&self) -> bool {
        let n = self.dim();
        if n < 3 {
            return false;
        }
        let series = self.lower_central_series();
        (1..n).all(|k| {
            let term = series
                .get(k)
                .unwrap_or_else(|| series.last().expect("nonempty"));
            term.dim() + k + 1 == n
        })
    }

    /// Smallest bracket-closed subspace containing `gens`.
    pub fn subalgebra_generated(&self, gens: &[Vector]) -> Result<Subspace> {
        let mut current = Subspace::from_spanning(self.dim(), gens.to_vec())?;
        loop {
            let next = current.sum(&self.bracket_span(&current, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }
}

/// Block direct sum `A ⊕ B`; the basis of `B` follows that of `A`.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (m, n) = (a.dim(), b.dim());
    let mut brackets = Vec::new();
    for (i, j, v) in a.nonzero_brackets() {
        let mut w = v.to_vec();
        w.extend(vector::zeros(n));
        brackets.push((i, j, w));
    }
    for (i, j, v) in b.nonzero_brackets() {
        let mut w = vector::zeros(m);
        w.extend_from_slice(v);
        brackets.push((m + i, m + j, w));
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut l = l.clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    LieAlgebra::from_brackets(
        format!("{}+{}", a.name(), b.name()),
        m + n,
        Some(labels),
        brackets,
    )
    .expect("shifted indices stay in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::from_i64;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets("heis3", 3, None, [(1, 2, from_i64(&[0, 0, 1]))]).unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            "sl2",
            3,
            None,
            [
                (1, 2, from_i64(&[0, 2, 0])),
                (1, 3, from_i64(&[0, 0, -2])),
                (2, 3, from_i64(&[1, 0, 0])),
            ],
        )
        .unwrap()
    }

    fn filiform(n: usize) -> LieAlgebra {
        let brackets = (2..n).map(|i| (1, i, vector::unit(n, i)));
        LieAlgebra::from_brackets("fil", n, None, brackets).unwrap()
    }

    fn dims(s: &[Subspace]) -> Vec<usize> {
        s.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn series_examples() {
        assert_eq!(
            dims(&LieAlgebra::abelian(3).lower_central_series()),
            vec![3, 0]
        );
        assert_eq!(dims(&heisenberg().lower_central_series()), vec![3, 1, 0]);
        assert_eq!(dims(&sl2().lower_central_series()), vec![3]);
        for n in 3..=8 {
            let expected: Vec<usize> = (0..n).map(|k| if k == 0 { n } else { n - k - 1 }).collect();
            assert_eq!(dims(&filiform(n).lower_central_series()), expected);
        }
    }

    #[test]
    fn center_examples() {
        assert_eq!(LieAlgebra::abelian(2).center(), Subspace::full(2));
        let z = heisenberg().center();
        assert_eq!(
            z,
            Subspace::from_spanning(3, vec![from_i64(&[0, 0, 1])]).unwrap()
        );
        assert!(sl2().center().is_zero());
    }

    #[test]
    fn killing_examples() {
        // ad h = diag(0, 2, -2); ad e: h ↦ -2e, f ↦ h; ad f: h ↦ 2f, e ↦ -h.
        // κ(h,h) = 8, κ(e,f) = tr(ad e ad f) = 4, everything else 0.
        let k = sl2().killing_form();
        assert_eq!(
            k,
            RationalMatrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]])
        );
        assert!(sl2().is_semisimple());

        let h = heisenberg();
        assert!(h.killing_form().is_zero());
        assert!(!h.is_semisimple());
        assert!(h.is_nilpotent());
        assert!(h.is_filiform());

        let f5 = filiform(5);
        assert!(f5.is_filiform());
        assert!(f5.is_solvable());
        assert!(!f5.is_semisimple());
        assert!(f5.killing_form().is_zero());

        assert!(!sl2().is_solvable());
        assert!(!LieAlgebra::abelian(2).is_filiform());
    }

    #[test]
    fn generated_subalgebras() {
        let h = heisenberg();
        assert_eq!(
            h.subalgebra_generated(&[h.basis_vector(3)]).unwrap().dim(),
            1
        );
        let s = sl2();
        assert_eq!(
            s.subalgebra_generated(&[s.basis_vector(2), s.basis_vector(3)])
                .unwrap(),
            Subspace::full(3)
        );
        assert_eq!(
            s.subalgebra_generated(&[s.basis_vector(2)]).unwrap().dim(),
            1
        );
    }

    #[test]
    fn direct_sums() {
        let ab = direct_sum(&LieAlgebra::abelian(1), &LieAlgebra::abelian(1));
        assert_eq!(ab.nonzero_brackets().count(), 0);
        assert_eq!(ab.dim(), 2);

        let ss = direct_sum(&sl2(), &sl2());
        assert_eq!(ss.dim(), 6);
        assert!(ss.validate());
        assert!(ss.is_semisimple());
        assert_eq!(ss.labels()[3], "e1'");

        let hh = direct_sum(&heisenberg(), &sl2());
        assert_eq!(
            hh.center(),
            Subspace::from_spanning(6, vec![vector::unit(6, 2)]).unwrap()
        );
        let k = hh.killing_form();
        for i in 0..3 {
            for j in 3..6 {
                assert!(k[(i, j)].is_zero());
            }
        }
    }
}
