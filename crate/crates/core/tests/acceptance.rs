//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use lieloc_core::catalog::{build, AlgebraSpec, BuiltAlgebra};
use lieloc_core::derivations::{derivation_space, is_derivation};
use lieloc_core::filiform::{
    build_filiform_delta, filiform_derivation_criterion, filiform_local_witness, witness_holds,
};
use lieloc_core::lie::LieAlgebra;
use lieloc_core::linalg::{rat, rref, RationalMatrix, Subspace, Vector};
use lieloc_core::local::{certify_locder_equals_der, CertifyOptions};
use lieloc_core::roots::{
    all_strings, pair_subalgebra, restriction_check, root_decomposition, root_property_failures,
    simple_pair_with_root, split_local_derivation, RootDatum,
};
use lieloc_core::sampling::Sampler;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

const SEMISIMPLE: &[&str] = &[
    "sl2",
    "sl3",
    "sl4",
    "so5",
    "sp4",
    "so7",
    "sp6",
    "so8",
    "g2",
    "sum:sl2+sl2",
];
const BUILTINS: &[&str] = &[
    "sl2",
    "sl3",
    "sl4",
    "so5",
    "sp4",
    "so7",
    "sp6",
    "so8",
    "g2",
    "sum:sl2+sl2",
    "sum:sl2+g2",
    "heis3",
    "filiform:3",
    "filiform:5",
    "filiform:8",
    "abelian:3",
];

fn built(spec: &str) -> BuiltAlgebra {
    build(&spec.parse::<AlgebraSpec>().expect("valid spec")).expect("builds")
}

fn datum(b: &BuiltAlgebra) -> RootDatum {
    root_decomposition(&b.algebra, b.cartan.as_ref().expect("cartan")).expect("root decomposition")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn certificates() -> Outcome {
    let mut parts = Vec::new();
    for (spec, dim) in [
        ("sl2", 3),
        ("sl3", 8),
        ("so5", 10),
        ("sp4", 10),
        ("g2", 14),
        ("sum:sl2+sl2", 6),
    ] {
        let b = built(spec);
        let c = certify_locder_equals_der(&b.algebra, CertifyOptions::default()).map_err(err)?;
        ensure(
            c.is_certified() && c.constraint_space_dim == dim && c.der_dim == dim,
            || {
                format!(
                    "{spec}: {:?}, constraint dim {}, Der dim {}",
                    c.verdict, c.constraint_space_dim, c.der_dim
                )
            },
        )?;
        parts.push(format!("{spec}={dim}"));
    }
    Ok(parts.join(" "))
}

fn inner_law() -> Outcome {
    for spec in SEMISIMPLE {
        let b = built(spec);
        let ds = derivation_space(&b.algebra);
        ensure(
            ds.dim() == b.algebra.dim() && ds.space() == ds.inner(),
            || {
                format!(
                    "{spec}: Der dim {}, inner dim {}, dim L {}",
                    ds.dim(),
                    ds.inner_dim(),
                    b.algebra.dim()
                )
            },
        )?;
    }
    let sum = derivation_space(&built("sum:sl2+sl2").algebra).dim();
    ensure(sum == 6, || format!("sl2+sl2 Der dim {sum}"))?;
    Ok(format!(
        "{} semisimple algebras, Der = ad(L); sl2+sl2 Der dim 6",
        SEMISIMPLE.len()
    ))
}

fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vector| (lo..=hi).map(move |k| [p.clone(), vec![rat(k)]].concat()))
            .collect();
    }
    out
}

fn filiform_witnesses() -> Outcome {
    let mut checked = 0usize;
    for n in 3..=8 {
        let fm = build_filiform_delta(n, rat(2), rat(1)).map_err(err)?;
        let l = built(&format!("filiform:{n}")).algebra;
        ensure(!is_derivation(&l, &fm.realized).map_err(err)?, || {
            format!("n = {n}: Δ is a derivation")
        })?;
        let points = if n <= 4 {
            grid(n, -2, 2)
        } else {
            Sampler::new(n as u64, n).take(500)
        };
        for x in &points {
            let w = filiform_local_witness(&fm, x).map_err(err)?;
            ensure(witness_holds(&l, &fm.realized, &w).map_err(err)?, || {
                format!("n = {n}: witness fails at {x:?}")
            })?;
        }
        checked += points.len();
    }
    Ok(format!("n = 3..8, {checked} witnesses, zero failures"))
}

fn filiform_grid() -> Outcome {
    for n in 3..=6 {
        for a in -2..=2 {
            for b in -2..=2 {
                let fm = build_filiform_delta(n, rat(a), rat(b)).map_err(err)?;
                let got = filiform_derivation_criterion(&fm).map_err(err)?;
                ensure(got == (a == b), || {
                    format!("n = {n}, α = {a}, β = {b}: got {got}")
                })?;
            }
        }
    }
    Ok("100 cases".into())
}

fn root_facts() -> Outcome {
    for (spec, count) in [("sl2", 2), ("sl3", 6), ("so5", 8), ("g2", 12)] {
        let rd = datum(&built(spec));
        ensure(rd.roots.len() == count, || {
            format!("{spec}: {} roots", rd.roots.len())
        })?;
    }
    let mut g2_longest = 0;
    for spec in SEMISIMPLE {
        let b = built(spec);
        let rd = datum(&b);
        let failures = root_property_failures(&b.algebra, &rd).map_err(err)?;
        ensure(failures.is_empty(), || format!("{spec}: {failures:?}"))?;
        let longest = all_strings(&rd)
            .iter()
            .map(|&(_, _, p, q)| p + q + 1)
            .max()
            .unwrap_or(0);
        ensure(longest <= 4, || {
            format!("{spec}: string of length {longest}")
        })?;
        if *spec == "g2" {
            g2_longest = longest;
        }
    }
    ensure(g2_longest == 4, || {
        format!("longest g2 string has length {g2_longest}")
    })?;
    Ok("counts 2/6/8/12, properties (a)-(d) hold, strings ≤ 4, g2 reaches 4".into())
}

fn split_pipeline() -> Outcome {
    for (spec, seed) in [("sl3", 11u64), ("so5", 12)] {
        let b = built(spec);
        let l = &b.algebra;
        let rd = datum(&b);
        let ds = derivation_space(l);
        let mut sampler = Sampler::new(seed, l.dim());
        for trial in 0..50 {
            let a = sampler.next_vector();
            let delta = l.ad(&a).map_err(err)?;
            let split = split_local_derivation(&rd, &ds, &delta).map_err(err)?;
            let recombined = split
                .t_map
                .add(&l.ad(&split.a).map_err(err)?)
                .map_err(err)?;
            ensure(recombined == delta, || {
                format!("{spec} #{trial}: T + ad(a) differs from Δ")
            })?;
            for &i in b.cartan.as_ref().expect("cartan").indices() {
                let image = split.t_map.apply(&l.basis_vector(i)).map_err(err)?;
                ensure(image.iter().all(|x| *x == rat(0)), || {
                    format!("{spec} #{trial}: T(h{i}) ≠ 0")
                })?;
            }
            let report = restriction_check(l, &rd, &split.t_map).map_err(err)?;
            ensure(report.passed(), || {
                format!("{spec} #{trial}: {:?}", report.violations)
            })?;
            for k in 0..rd.roots.len() {
                let (c, cn) = (
                    &report.coefficients[k],
                    &report.coefficients[rd.negative(k)],
                );
                match (c, cn) {
                    (Some(c), Some(cn)) if *cn == -c.clone() => {}
                    _ => {
                        return Err(format!(
                            "{spec} #{trial}: c for root {k} is {c:?}, opposite {cn:?}"
                        ))
                    }
                }
            }
        }
    }
    Ok("100 inner derivations split, T|_H = 0, c_{-α} = -c_α".into())
}

fn rank_two_pairs() -> Outcome {
    let mut parts = Vec::new();
    for (spec, a, b) in [("so5", 1, 2), ("g2", 3, 2)] {
        let built = built(spec);
        let rd = datum(&built);
        let (alpha, beta) =
            simple_pair_with_root(&rd, a, b).ok_or_else(|| format!("{spec}: no simple pair"))?;
        let mut coeffs = vec![0; 2];
        coeffs[rd.simple.iter().position(|&s| s == alpha).expect("simple")] = a;
        coeffs[rd.simple.iter().position(|&s| s == beta).expect("simple")] = b;
        let gamma = rd
            .find_by_coefficients(&coeffs)
            .ok_or_else(|| format!("{spec}: {a}α+{b}β missing"))?;
        let facts = pair_subalgebra(&built.algebra, &rd, alpha, gamma).map_err(err)?;
        ensure(
            facts.bracket_vanishes && facts.dim == 6 && facts.der_dim == 6,
            || format!("{spec}: {facts:?}"),
        )?;
        parts.push(format!("{spec}: [e_α, e_{a}α+{b}β] = 0, dim 6, Der dim 6"));
    }
    Ok(parts.join("; "))
}

fn random_subspace(s: &mut Sampler, ambient: usize) -> (RationalMatrix, Subspace) {
    let rows = s.integer(0, 4) as usize;
    let vectors: Vec<Vector> = (0..rows)
        .map(|_| (0..ambient).map(|_| rat(s.integer(-2, 2))).collect())
        .collect();
    let m = RationalMatrix::from_rows(ambient, vectors.clone()).expect("row lengths");
    (
        m,
        Subspace::from_spanning(ambient, vectors).expect("row lengths"),
    )
}

fn killing_invariant(l: &LieAlgebra, seed: u64) -> Result<(), String> {
    let k = l.killing_form();
    let form = |x: &Vector, y: &Vector| -> Result<lieloc_core::linalg::Rational, String> {
        let ky = k.mul_vec(y).map_err(err)?;
        Ok(x.iter().zip(&ky).map(|(a, b)| a * b).sum())
    };
    let mut s = Sampler::new(seed, l.dim());
    for _ in 0..100 {
        let (x, y, z) = (s.next_vector(), s.next_vector(), s.next_vector());
        let lhs = form(&l.bracket(&x, &y).map_err(err)?, &z)?;
        let rhs = form(&x, &l.bracket(&y, &z).map_err(err)?)?;
        ensure(lhs == rhs, || {
            format!("{}: κ([x,y],z) ≠ κ(x,[y,z])", l.name())
        })?;
    }
    Ok(())
}

fn foundations() -> Outcome {
    for (k, spec) in BUILTINS.iter().enumerate() {
        let l = built(spec).algebra;
        ensure(l.jacobi_violation().is_none(), || {
            format!("{spec}: Jacobi fails")
        })?;
        killing_invariant(&l, k as u64)?;
    }
    let perturbed = LieAlgebra::from_brackets(
        "sl2-perturbed",
        3,
        None,
        [
            (1, 2, vec![rat(0), rat(2), rat(0)]),
            (1, 3, vec![rat(0), rat(0), rat(-2)]),
            (2, 3, vec![rat(1), rat(1), rat(0)]),
        ],
    )
    .map_err(err)?;
    ensure(perturbed.jacobi_violation().is_some(), || {
        "perturbed sl2 passes Jacobi".into()
    })?;

    for n in 3..=10 {
        let l = built(&format!("filiform:{n}")).algebra;
        let dims: Vec<usize> = l.lower_central_series().iter().map(Subspace::dim).collect();
        let expected: Vec<usize> = std::iter::once(n)
            .chain((1..n).map(|k| n - k - 1))
            .collect();
        ensure(dims == expected, || format!("filiform:{n} series {dims:?}"))?;
        ensure(
            l.center().contains(&l.basis_vector(n)).map_err(err)?,
            || format!("filiform:{n}: e_n not central"),
        )?;
    }

    let mut s = Sampler::new(2024, 1);
    for trial in 0..1000 {
        let ambient = s.integer(1, 5) as usize;
        let (m, u) = random_subspace(&mut s, ambient);
        let (_, w) = random_subspace(&mut s, ambient);
        let sum = u.sum(&w).map_err(err)?;
        let meet = u.intersect(&w).map_err(err)?;
        ensure(sum.dim() + meet.dim() == u.dim() + w.dim(), || {
            format!("Grassmann fails on matrix {trial}")
        })?;
        let r = rref(&m);
        ensure(rref(&r) == r, || {
            format!("rref not idempotent on matrix {trial}")
        })?;
    }
    Ok(format!("Jacobi and Killing invariance on {} builtins, perturbed sl2 rejected, series n-k-1, 1000 matrices", BUILTINS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("LocDer = Der certificates", certificates),
        ("inner-derivation law", inner_law),
        ("filiform local witnesses", filiform_witnesses),
        ("filiform derivation criterion grid", filiform_grid),
        ("root-system facts", root_facts),
        ("split pipeline", split_pipeline),
        ("rank-two pair subalgebras", rank_two_pairs),
        ("foundations", foundations),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
