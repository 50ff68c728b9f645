//! Local derivations: maps `Δ` with `Δ(x) ∈ W_x = {D(x) : D ∈ Der(L)}` for
//! every `x`. Sampling gives the one-sided chain
//! `Der(L) ⊆ LocDer(L) ⊆ C(samples)`, so `C = Der` certifies `LocDer = Der`.

use rayon::prelude::*;
use serde::Serialize;

use crate::derivations::DerivationSpace;
use crate::error::{check_len, Error, Result};
use crate::lie::{LieAlgebra, LinearMap};
use crate::linalg::{
    nullspace, solve, vector, ModularRank, Rational, RationalMatrix, Subspace, Vector,
};
use crate::sampling::Sampler;

/// `W_x`, spanned by `D_i(x)` over the basis of `Der(L)`.
pub fn orbit_subspace(ds: &DerivationSpace<'_>, x: &[Rational]) -> Result<Subspace> {
    let n = ds.algebra().dim();
    check_len(n, x.len())?;
    let images = ds
        .basis()
        .iter()
        .map(|d| d.apply(x))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_spanning(n, images)
}

/// A derivation agreeing with some map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWitness {
    pub point: Vector,
    pub witness: LinearMap,
    /// Coefficients over [`DerivationSpace::basis`].
    pub coefficients: Vector,
}

/// Solves `Σ λ_i D_i(x) = Δ(x)`; `None` when `Δ(x) ∉ W_x`.
pub fn local_witness(
    ds: &DerivationSpace<'_>,
    delta: &LinearMap,
    x: &[Rational],
) -> Result<Option<LocalWitness>> {
    let n = ds.algebra().dim();
    check_len(n, delta.dim())?;
    check_len(n, x.len())?;
    let target = delta.apply(x)?;
    if ds.basis().is_empty() {
        return Ok(vector::is_zero(&target).then(|| LocalWitness {
            point: x.to_vec(),
            witness: LinearMap::zero(n),
            coefficients: Vec::new(),
        }));
    }
    let columns = ds
        .basis()
        .iter()
        .map(|d| d.apply(x))
        .collect::<Result<Vec<_>>>()?;
    let m = RationalMatrix::from_columns(n, &columns)?;
    let Some(lambda) = solve(&m, &target)? else {
        return Ok(None);
    };
    let mut witness = LinearMap::zero(n);
    for (c, d) in lambda.iter().zip(ds.basis()) {
        if !num_traits::Zero::is_zero(c) {
            witness = witness.add(&d.scale(c))?;
        }
    }
    Ok(Some(LocalWitness {
        point: x.to_vec(),
        witness,
        coefficients: lambda,
    }))
}

/// Linear conditions on flattened `Δ` expressing `Δ(x) ∈ W_x`: one row
/// `y ⊗ x` per basis vector `y` of the annihilator of `W_x`.
pub fn sample_constraints(ds: &DerivationSpace<'_>, x: &[Rational]) -> Result<Vec<Vector>> {
    let n = ds.algebra().dim();
    let w = orbit_subspace(ds, x)?;
    let mut rows = Vec::new();
    if vector::is_zero(x) {
        return Ok(rows);
    }
    for y in w.annihilator().basis().row_iter() {
        let mut row = vector::zeros(n * n);
        for (j, xj) in x.iter().enumerate() {
            if num_traits::Zero::is_zero(xj) {
                continue;
            }
            for (i, yi) in y.iter().enumerate() {
                if !num_traits::Zero::is_zero(yi) {
                    row[j * n + i] = yi * xj;
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn constraints_for(ds: &DerivationSpace<'_>, samples: &[Vector]) -> Result<Vec<Vector>> {
    let per_sample: Vec<Vec<Vector>> = samples
        .par_iter()
        .map(|x| sample_constraints(ds, x))
        .collect::<Result<_>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

/// `{Δ ∈ End(L) : Δ(x_s) ∈ W_{x_s} for every sample}`, flattened
/// column-major.
pub fn local_constraint_space(ds: &DerivationSpace<'_>, samples: &[Vector]) -> Result<Subspace> {
    let n = ds.algebra().dim();
    for x in samples {
        check_len(n, x.len())?;
    }
    // Rows independent mod p are independent over Q, so exact elimination
    // only sees those. Every dropped row is then checked exactly against the
    // kernel and promoted if the modular image hid a dependency failure.
    let mut modular = ModularRank::new(n * n);
    let (mut kept, mut dropped): (Vec<Vector>, Vec<Vector>) = constraints_for(ds, samples)?
        .into_iter()
        .partition(|r| modular.insert(r));
    if kept.len() == n * n - ds.dim() {
        // Der lies inside the kernel and already has the complementary dimension.
        return Ok(ds.space().clone());
    }
    loop {
        let kernel = nullspace(&RationalMatrix::from_rows(n * n, kept.clone())?);
        let basis = kernel.basis_vectors();
        let missed = dropped.iter().position(|r| {
            basis
                .iter()
                .any(|k| !num_traits::Zero::is_zero(&vector::dot(r, k)))
        });
        match missed {
            None => return Ok(kernel),
            Some(i) => kept.push(dropped.swap_remove(i)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedEqual,
    /// `dim C − dim Der`. Inconclusive: more samples may close it.
    Gap {
        dimension: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub algebra: String,
    pub seed: u64,
    /// Every sample used: the basis vectors first, then the random points.
    pub samples: Vec<Vector>,
    pub random_samples: usize,
    pub constraint_space_dim: usize,
    pub der_dim: usize,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedEqual
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CertifyOptions {
    /// Exact number of random points. `None` starts at `2·dim` and keeps
    /// drawing `dim` more at a time until the certificate closes or `dim²`
    /// random points have been used.
    pub samples: Option<usize>,
    pub seed: u64,
}

/// Certifies `LocDer(L) = Der(L)` for a semisimple `L` by showing the sampled
/// constraint space collapses onto `Der(L)`.
pub fn certify_locder_equals_der(
    algebra: &LieAlgebra,
    options: CertifyOptions,
) -> Result<Certificate> {
    if !algebra.is_semisimple() {
        return Err(Error::NotSemisimple(format!(
            "{} has a degenerate Killing form; use the filiform tooling for nilpotent examples",
            algebra.name()
        )));
    }
    let ds = crate::derivations::derivation_space(algebra);
    let n = algebra.dim();
    let der_dim = ds.dim();
    let target_rank = n * n - der_dim;

    // Rank over GF(p) bounds the rational rank from below, and the rational
    // rank is at most n² − dim Der, so reaching that bound mod p settles it.
    let mut samples: Vec<Vector> = (0..n).map(|i| vector::unit(n, i)).collect();
    let mut sampler = Sampler::new(options.seed, n);
    let mut modular = ModularRank::new(n * n);
    let mut add = |batch: &[Vector]| -> Result<usize> {
        for r in constraints_for(&ds, batch)? {
            modular.insert(&r);
        }
        Ok(modular.rank())
    };
    add(&samples)?;

    let first = options.samples.unwrap_or(2 * n);
    let batch = sampler.take(first);
    let mut rank = add(&batch)?;
    samples.extend(batch);
    let mut random_samples = first;
    if options.samples.is_none() {
        while rank < target_rank && random_samples < n * n {
            let step = n.min(n * n - random_samples);
            let batch = sampler.take(step);
            rank = add(&batch)?;
            samples.extend(batch);
            random_samples += step;
        }
    }

    let constraint_space_dim = if rank == target_rank {
        der_dim
    } else {
        // Inconclusive mod p: redo exactly over every constraint row.
        local_constraint_space(&ds, &samples)?.dim()
    };
    let verdict = if constraint_space_dim == der_dim {
        Verdict::CertifiedEqual
    } else {
        Verdict::Gap {
            dimension: constraint_space_dim - der_dim,
        }
    };
    Ok(Certificate {
        algebra: algebra.name().to_string(),
        seed: options.seed,
        samples,
        random_samples,
        constraint_space_dim,
        der_dim,
        verdict,
    })
}

/// Outcome of checking `Δ(x) ∈ W_x` on a finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledReport {
    pub points_checked: usize,
    /// The first point where no witness exists.
    pub failure: Option<Vector>,
}

impl SampledReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the basis vectors and then `trials` seeded random points, stopping
/// at the first point without a witness.
pub fn is_local_derivation_sampled(
    ds: &DerivationSpace<'_>,
    delta: &LinearMap,
    trials: usize,
    seed: u64,
) -> Result<SampledReport> {
    let n = ds.algebra().dim();
    let mut sampler = Sampler::new(seed, n);
    let points = (0..n)
        .map(|i| vector::unit(n, i))
        .chain((0..trials).map(|_| sampler.next_vector()));
    let mut checked = 0;
    for x in points {
        checked += 1;
        if local_witness(ds, delta, &x)?.is_none() {
            return Ok(SampledReport {
                points_checked: checked,
                failure: Some(x),
            });
        }
    }
    Ok(SampledReport {
        points_checked: checked,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, AlgebraSpec};
    use crate::derivations::{derivation_space, is_derivation};
    use crate::linalg::vector::from_i64;

    fn sl2() -> LieAlgebra {
        build(&AlgebraSpec::SpecialLinear(2)).unwrap().algebra
    }

    #[test]
    fn orbit_examples() {
        let s = sl2();
        let ds = derivation_space(&s);
        assert!(orbit_subspace(&ds, &vector::zeros(3)).unwrap().is_zero());
        // basis h, e, f: W_h = span{e, f}
        let w = orbit_subspace(&ds, &from_i64(&[1, 0, 0])).unwrap();
        assert_eq!(
            w,
            Subspace::from_spanning(3, vec![from_i64(&[0, 1, 0]), from_i64(&[0, 0, 1])]).unwrap()
        );

        let ab = LieAlgebra::abelian(2);
        let da = derivation_space(&ab);
        assert_eq!(
            orbit_subspace(&da, &from_i64(&[3, -1])).unwrap(),
            Subspace::full(2)
        );
    }

    #[test]
    fn witness_examples() {
        let s = sl2();
        let ds = derivation_space(&s);
        let d = s.ad(&from_i64(&[2, -1, 3])).unwrap();
        let x = from_i64(&[1, 4, -2]);
        let w = local_witness(&ds, &d, &x).unwrap().unwrap();
        assert!(is_derivation(&s, &w.witness).unwrap());
        assert_eq!(w.witness.apply(&x).unwrap(), d.apply(&x).unwrap());

        // h ↦ h, e ↦ 0, f ↦ 0 has no witness at h
        let m = LinearMap::from_images(&[from_i64(&[1, 0, 0]), vector::zeros(3), vector::zeros(3)])
            .unwrap();
        assert!(local_witness(&ds, &m, &from_i64(&[1, 0, 0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn constraint_space_examples() {
        let s = sl2();
        let ds = derivation_space(&s);
        assert_eq!(
            local_constraint_space(&ds, &[vector::zeros(3)]).unwrap(),
            Subspace::full(9)
        );

        let ab = LieAlgebra::abelian(2);
        let da = derivation_space(&ab);
        assert_eq!(
            local_constraint_space(&da, &[from_i64(&[1, 2]), from_i64(&[0, 1])]).unwrap(),
            Subspace::full(4)
        );

        let samples: Vec<Vector> = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [1, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
        ]
        .iter()
        .map(|v| from_i64(v))
        .collect();
        let c = local_constraint_space(&ds, &samples).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(&c, ds.space());
    }

    #[test]
    fn certify_small_cases() {
        let cert = certify_locder_equals_der(&sl2(), CertifyOptions::default()).unwrap();
        assert!(cert.is_certified());
        assert_eq!((cert.constraint_space_dim, cert.der_dim), (3, 3));
        assert_eq!(cert.samples.len(), 3 + cert.random_samples);

        let h = build(&AlgebraSpec::Heisenberg3).unwrap().algebra;
        assert!(matches!(
            certify_locder_equals_der(&h, CertifyOptions::default()),
            Err(Error::NotSemisimple(_))
        ));
    }

    #[test]
    fn explicit_sample_count_is_exact() {
        let s = build(&AlgebraSpec::Orthogonal(5)).unwrap().algebra;
        let cert = certify_locder_equals_der(
            &s,
            CertifyOptions {
                samples: Some(1),
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(cert.random_samples, 1);
        assert_eq!(cert.samples.len(), 11);
        assert!(matches!(cert.verdict, Verdict::Gap { .. }));
        assert!(cert.constraint_space_dim > cert.der_dim);
    }

    #[test]
    fn sampled_check() {
        let s = sl2();
        let ds = derivation_space(&s);
        let d = s.ad(&from_i64(&[1, 1, 1])).unwrap();
        assert!(is_local_derivation_sampled(&ds, &d, 20, 1)
            .unwrap()
            .passed());
        let m = LinearMap::from_images(&[from_i64(&[1, 0, 0]), vector::zeros(3), vector::zeros(3)])
            .unwrap();
        let r = is_local_derivation_sampled(&ds, &m, 20, 1).unwrap();
        assert_eq!(r.failure, Some(from_i64(&[1, 0, 0])));
        assert_eq!(r.points_checked, 1);
    }
}
