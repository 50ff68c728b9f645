//! `lieloc`: derivation algebras, local-derivation certificates, root data,
//! and the filiform local-derivation examples from the command line.
//!
//! Exit codes: 0 success or certified, 1 a checked property failed or the
//! certificate has a gap, 2 bad input.

mod report;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lieloc_core::catalog::{build, parse_unchecked, AlgebraSpec, BuiltAlgebra};
use lieloc_core::derivations::derivation_space;
use lieloc_core::filiform::{
    build_filiform_delta, filiform_derivation_criterion, filiform_local_witness, leibniz_pair,
    witness_holds,
};
use lieloc_core::linalg::{format_rational, parse_rational, rat, Rational};
use lieloc_core::local::{certify_locder_equals_der, local_witness, CertifyOptions, Verdict};
use lieloc_core::roots::{
    all_strings, regular_cartan_element, root_decomposition, root_property_failures,
};
use lieloc_core::sampling::Sampler;
use lieloc_core::Error;

use report::{AlgebraSummary, Report, Sampling};

#[derive(Parser)]
#[command(
    name = "lieloc",
    version,
    about = "Exact derivation and local-derivation computations for Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, structural flags, series, and center.
    Info {
        /// Algebra spec: sl3, so5, sp4, g2, heis3, filiform:6, sum:sl2+sl2, @file.json
        spec: String,
        #[command(flatten)]
        out: Output,
    },
    /// Derivation algebra and its inner part.
    Der {
        spec: String,
        /// Also print a basis of Der(L) as matrices.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Root decomposition relative to the marked Cartan subalgebra.
    Roots {
        spec: String,
        /// Also print every alpha-string.
        #[arg(long)]
        strings: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Local derivations.
    Locder {
        #[command(subcommand)]
        action: LocderAction,
    },
    /// The filiform maps alpha*x2*e_(n-1) + beta*x3*e_n.
    Filiform {
        #[command(subcommand)]
        action: FiliformAction,
    },
    /// Check the Jacobi identity of a builtin or a structure-constant file.
    Validate {
        /// Algebra spec, or a path to a structure-constant file.
        spec: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print a builtin as a structure-constant file.
    Export {
        spec: String,
        /// Write to this path instead of standard output.
        #[arg(long)]
        out_file: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
enum LocderAction {
    /// Certify LocDer(L) = Der(L) for a semisimple L by sampling.
    Certify {
        spec: String,
        /// Number of random sample points (default: adaptive, starting at 2*dim).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FiliformAction {
    /// Derivation verdict and pointwise witnesses for the map.
    Demo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2", value_parser = parse_rational_arg)]
        alpha: Rational,
        #[arg(long, default_value = "1", value_parser = parse_rational_arg)]
        beta: Rational,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// A filiform algebra in an adapted basis to use instead of the model
        /// one; witnesses then come from the linear solver.
        #[arg(long)]
        algebra: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Outcome {
    report: Report,
    text: String,
    code: u8,
}

fn load_spec(spec: &str) -> Result<BuiltAlgebra, Error> {
    build(&spec.parse::<AlgebraSpec>()?)
}

fn info(command: Vec<String>, spec: &str) -> Result<Outcome, Error> {
    let b = load_spec(spec)?;
    let l = &b.algebra;
    let lcs: Vec<usize> = l.lower_central_series().iter().map(|s| s.dim()).collect();
    let derived: Vec<usize> = l.derived_series().iter().map(|s| s.dim()).collect();
    let center = l.center().dim();
    let summary = AlgebraSummary::of(l);
    let mut text = format!("{}: dim {}\n", l.name(), l.dim());
    let flags = [
        ("semisimple", summary.semisimple),
        ("nilpotent", summary.nilpotent),
        ("solvable", summary.solvable),
        ("filiform", summary.filiform),
    ];
    for (name, v) in flags {
        writeln!(text, "  {name}: {}", if v { "yes" } else { "no" }).unwrap();
    }
    writeln!(text, "  center: dim {center}").unwrap();
    writeln!(text, "  lower central series dims: {lcs:?}").unwrap();
    writeln!(text, "  derived series dims: {derived:?}").unwrap();
    if let Some(c) = &b.cartan {
        writeln!(text, "  Cartan basis indices: {:?}", c.indices()).unwrap();
    }
    let result = json!({
        "basis": l.labels(),
        "cartan": b.cartan.as_ref().map(|c| c.indices().to_vec()),
        "center_dim": center,
        "derived_series_dims": derived,
        "lower_central_series_dims": lcs,
    });
    Ok(Outcome {
        report: Report {
            command,
            algebra: Some(summary),
            result,
            sampling: None,
            verdict: "ok".into(),
        },
        text,
        code: 0,
    })
}

fn der(command: Vec<String>, spec: &str, with_basis: bool) -> Result<Outcome, Error> {
    let b = load_spec(spec)?;
    let l = &b.algebra;
    let ds = derivation_space(l);
    let mut text = format!(
        "{}: dim Der = {}, dim ad = {}, all derivations inner: {}\n",
        l.name(),
        ds.dim(),
        ds.inner_dim(),
        if ds.all_inner() { "yes" } else { "no" }
    );
    let mut result = json!({
        "all_inner": ds.all_inner(),
        "der_dim": ds.dim(),
        "inner_dim": ds.inner_dim(),
    });
    if with_basis {
        result["basis"] = Value::Array(ds.basis().iter().map(report::map).collect());
        for (k, d) in ds.basis().iter().enumerate() {
            writeln!(text, "D{}:", k + 1).unwrap();
            for row in d.matrix().row_iter() {
                writeln!(text, "  {}", report::text_vector(row)).unwrap();
            }
        }
    }
    Ok(Outcome {
        report: Report {
            command,
            algebra: Some(AlgebraSummary::of(l)),
            result,
            sampling: None,
            verdict: if ds.all_inner() {
                "all-inner"
            } else {
                "outer-derivations"
            }
            .into(),
        },
        text,
        code: 0,
    })
}

fn roots(command: Vec<String>, spec: &str, strings: bool) -> Result<Outcome, Error> {
    let b = load_spec(spec)?;
    let l = &b.algebra;
    let cartan = b.cartan.as_ref().ok_or_else(|| {
        Error::InvalidCartan(format!(
            "{} has no marked Cartan subalgebra; add \"cartan\" to the file",
            l.name()
        ))
    })?;
    let rd = root_decomposition(l, cartan)?;
    let failures = root_property_failures(l, &rd)?;
    let reg = regular_cartan_element(l.dim(), &rd);
    let root_label = |k: usize| match rd.roots[k].basis_index {
        Some(i) => l.labels()[i - 1].clone(),
        None => report::text_vector(&rd.roots[k].vector),
    };
    let mut text = format!(
        "{}: rank {}, {} roots\n",
        l.name(),
        rd.rank(),
        rd.roots.len()
    );
    let mut list = Vec::new();
    for (k, r) in rd.roots.iter().enumerate() {
        writeln!(
            text,
            "  {:>6}  values {:?}  simple-root coefficients {:?}",
            root_label(k),
            r.values,
            r.coefficients
        )
        .unwrap();
        list.push(json!({
            "coefficients": r.coefficients,
            "positive": r.is_positive(),
            "simple": rd.simple.contains(&k),
            "values": r.values,
            "vector": root_label(k),
        }));
    }
    writeln!(
        text,
        "  regular element: t = {}, h0 = {}",
        reg.t,
        report::text_vector(&reg.h0)
    )
    .unwrap();
    let mut result = json!({
        "property_failures": failures,
        "rank": rd.rank(),
        "regular_t": reg.t,
        "roots": list,
    });
    if strings {
        let table: Vec<Value> = all_strings(&rd)
            .into_iter()
            .map(|(a, bb, p, q)| json!({"alpha": root_label(a), "beta": root_label(bb), "length": p + q + 1, "p": p, "q": q}))
            .collect();
        for row in &table {
            writeln!(
                text,
                "  {}-string through {}: p = {}, q = {}",
                row["alpha"].as_str().unwrap(),
                row["beta"].as_str().unwrap(),
                row["p"],
                row["q"]
            )
            .unwrap();
        }
        result["strings"] = Value::Array(table);
    }
    for f in &failures {
        writeln!(text, "  property failure: {f}").unwrap();
    }
    let code = if failures.is_empty() { 0 } else { 1 };
    Ok(Outcome {
        report: Report {
            command,
            algebra: Some(AlgebraSummary::of(l)),
            result,
            sampling: None,
            verdict: if code == 0 {
                "properties-hold"
            } else {
                "property-failed"
            }
            .into(),
        },
        text,
        code,
    })
}

fn certify(
    command: Vec<String>,
    spec: &str,
    samples: Option<usize>,
    seed: u64,
) -> Result<Outcome, Error> {
    let b = load_spec(spec)?;
    let l = &b.algebra;
    let cert = certify_locder_equals_der(l, CertifyOptions { samples, seed })?;
    let (verdict, code) = match cert.verdict {
        Verdict::CertifiedEqual => ("certified-equal".to_string(), 0),
        Verdict::Gap { dimension } => (format!("gap({dimension})"), 1),
    };
    let basis_samples = cert.samples.len() - cert.random_samples;
    let text = format!(
        "{}: {verdict}, constraint space dim {} vs Der dim {} ({} basis + {} random samples, seed {})\n",
        cert.algebra, cert.constraint_space_dim, cert.der_dim, basis_samples, cert.random_samples, cert.seed
    );
    let result = json!({
        "constraint_space_dim": cert.constraint_space_dim,
        "der_dim": cert.der_dim,
        "verdict": cert.verdict,
    });
    Ok(Outcome {
        report: Report {
            command,
            algebra: Some(AlgebraSummary::of(l)),
            result,
            sampling: Some(Sampling {
                seed: cert.seed,
                samples: cert.samples.len(),
            }),
            verdict,
        },
        text,
        code,
    })
}

#[allow(clippy::too_many_arguments)]
fn filiform_demo(
    command: Vec<String>,
    n: usize,
    alpha: Rational,
    beta: Rational,
    trials: usize,
    seed: u64,
    algebra: Option<&str>,
) -> Result<Outcome, Error> {
    let fm = build_filiform_delta(n, alpha.clone(), beta.clone())?;
    let model = lieloc_core::catalog::model_filiform(n)?;
    let l = match algebra {
        Some(s) => {
            let l = load_spec(s)?.algebra;
            if l.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.dim(),
                });
            }
            if !l.is_filiform() {
                return Err(Error::InvalidParameter(format!(
                    "{} is not filiform",
                    l.name()
                )));
            }
            l
        }
        None => model.clone(),
    };
    let closed_form = l == model;
    let is_der = if closed_form {
        filiform_derivation_criterion(&fm)?
    } else {
        lieloc_core::derivations::is_derivation(&l, &fm.realized)?
    };
    let expected = alpha == beta;
    let mut ok = !closed_form || is_der == expected;
    let mut text = format!(
        "{}: map alpha = {}, beta = {} is {}\n",
        l.name(),
        format_rational(&alpha),
        format_rational(&beta),
        if is_der {
            "a derivation"
        } else {
            "not a derivation"
        }
    );
    let mut result = json!({
        "alpha": report::rational(&alpha),
        "beta": report::rational(&beta),
        "is_derivation": is_der,
        "n": n,
        "witness_method": if closed_form { "closed-form" } else { "solver" },
    });
    if closed_form && !is_der {
        let (lhs, rhs) = leibniz_pair(&fm)?;
        result["leibniz_e1_e2"] = json!({"lhs": report::vector(&lhs), "rhs": report::vector(&rhs)});
    }
    let mut sampling = None;
    let runs_witnesses = alpha == rat(2) && beta == rat(1);
    if runs_witnesses {
        let mut sampler = Sampler::new(seed, n);
        let ds = (!closed_form).then(|| derivation_space(&l));
        let mut verified = 0;
        let mut first_failure = None;
        for _ in 0..trials {
            let x = sampler.next_vector();
            let holds = match &ds {
                None => {
                    let w = filiform_local_witness(&fm, &x)?;
                    witness_holds(&l, &fm.realized, &w)?
                }
                Some(ds) => local_witness(ds, &fm.realized, &x)?.is_some(),
            };
            if holds {
                verified += 1;
            } else if first_failure.is_none() {
                first_failure = Some(x);
            }
        }
        ok &= verified == trials;
        writeln!(text, "{verified}/{trials} witnesses verified").unwrap();
        result["witnesses_verified"] = json!(verified);
        result["trials"] = json!(trials);
        if let Some(x) = first_failure {
            writeln!(text, "first failure at {}", report::text_vector(&x)).unwrap();
            result["first_failure"] = report::vector(&x);
        }
        sampling = Some(Sampling {
            seed,
            samples: trials,
        });
    }
    let verdict = match (ok, runs_witnesses, is_der) {
        (false, _, _) => "check-failed",
        (true, true, false) => "local-not-derivation",
        (true, _, true) => "derivation",
        (true, false, false) => "not-derivation",
    };
    Ok(Outcome {
        report: Report {
            command,
            algebra: Some(AlgebraSummary::of(&l)),
            result,
            sampling,
            verdict: verdict.into(),
        },
        text,
        code: if ok { 0 } else { 1 },
    })
}

fn validate(command: Vec<String>, spec: &str) -> Result<Outcome, Error> {
    let file_arg = spec.strip_prefix('@').map(Path::new).or_else(|| {
        (spec.parse::<AlgebraSpec>().is_err() && Path::new(spec).exists()).then(|| Path::new(spec))
    });
    let algebra = match file_arg {
        Some(path) => parse_unchecked(&std::fs::read_to_string(path)?)?.algebra,
        None => load_spec(spec)?.algebra,
    };
    let violation = algebra.jacobi_violation();
    let (text, verdict, code) = match violation {
        None => (
            format!("{}: Jacobi identity holds\n", algebra.name()),
            "valid",
            0,
        ),
        Some((i, j, k)) => (
            format!(
                "{}: Jacobi identity fails on basis triple ({i}, {j}, {k})\n",
                algebra.name()
            ),
            "jacobi-failed",
            1,
        ),
    };
    Ok(Outcome {
        report: Report {
            command,
            algebra: None,
            result: json!({
                "dim": algebra.dim(),
                "name": algebra.name(),
                "violation": violation.map(|(i, j, k)| [i, j, k]),
            }),
            sampling: None,
            verdict: verdict.into(),
        },
        text,
        code,
    })
}

fn export(spec: &str, path: Option<&Path>) -> Result<(), Error> {
    let b = load_spec(spec)?;
    match path {
        Some(p) => lieloc_core::catalog::save(&b.algebra, b.cartan.as_ref(), p),
        None => {
            println!(
                "{}",
                lieloc_core::catalog::to_json(&b.algebra, b.cartan.as_ref())
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let (outcome, json) = match cli.command {
        Command::Info { spec, out } => (info(command, &spec), out.json),
        Command::Der { spec, basis, out } => (der(command, &spec, basis), out.json),
        Command::Roots { spec, strings, out } => (roots(command, &spec, strings), out.json),
        Command::Locder {
            action:
                LocderAction::Certify {
                    spec,
                    samples,
                    seed,
                    out,
                },
        } => (certify(command, &spec, samples, seed), out.json),
        Command::Filiform {
            action:
                FiliformAction::Demo {
                    n,
                    alpha,
                    beta,
                    trials,
                    seed,
                    algebra,
                    out,
                },
        } => (
            filiform_demo(command, n, alpha, beta, trials, seed, algebra.as_deref()),
            out.json,
        ),
        Command::Validate { spec, out } => (validate(command, &spec), out.json),
        Command::Export { spec, out_file } => {
            return match export(&spec, out_file.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
    };
    match outcome {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = if json {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&o.report).expect("report serializes")
                )
            } else {
                write!(stdout, "{}", o.text)
            };
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
