//! Root space decomposition relative to a marked Cartan subalgebra, root
//! strings, regular elements `h0 = Σ t^k h_k`, and the reduction of a local
//! derivation `Δ = T + ad(a)` with `T|_H = 0`.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::catalog::CartanMarking;
use crate::derivations::{derivation_space, DerivationSpace};
use crate::error::{check_len, Error, Result};
use crate::lie::{LieAlgebra, LinearMap};
use crate::linalg::{
    characteristic_polynomial, nullspace, rat, rational_roots, solve, vector, Rational,
    RationalMatrix, Subspace, Vector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// `α(h_1), …, α(h_l)` on the marked Cartan basis.
    pub values: Vec<i64>,
    /// Spanning vector of `L_α`: the basis vector when `L_α` is a coordinate
    /// line, otherwise the canonical basis vector of `L_α`.
    pub vector: Vector,
    /// 1-based index of `e_α` when `L_α` is spanned by a basis vector.
    pub basis_index: Option<usize>,
    /// `h_α = [e_α, e_{−α}]`.
    pub coroot: Vector,
    /// Coefficients over the simple roots.
    pub coefficients: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: CartanMarking,
    pub roots: Vec<Root>,
    /// Indices into `roots`, ordered as the marked Cartan basis allows.
    pub simple: Vec<usize>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn find(&self, values: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.values == values)
    }

    pub fn find_by_coefficients(&self, coefficients: &[i64]) -> Option<usize> {
        self.roots
            .iter()
            .position(|r| r.coefficients == coefficients)
    }

    pub fn negative(&self, index: usize) -> usize {
        let neg: Vec<i64> = self.roots[index].values.iter().map(|x| -x).collect();
        self.find(&neg).expect("roots come in ± pairs")
    }

    /// `α(h)` for `h` given in the algebra's coordinates (must lie in `H`).
    pub fn evaluate(&self, root: usize, h: &[Rational]) -> Rational {
        self.cartan
            .indices()
            .iter()
            .zip(&self.roots[root].values)
            .fold(Rational::zero(), |acc, (&i, &v)| acc + &h[i - 1] * rat(v))
    }

    pub fn label(&self, root: usize, names: &[&str]) -> String {
        let mut out = String::new();
        for (c, name) in self.roots[root].coefficients.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{name}"));
            } else {
                out.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        out
    }
}

fn to_i64(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::UnsupportedBasis(format!(
            "root value {x} is not an integer"
        )));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::UnsupportedBasis(format!("root value {x} is out of range")))
}

/// Splits `block` (invariant under `ad(h)`) into eigenspaces of `ad(h)`.
fn split(
    algebra: &LieAlgebra,
    h: &[Rational],
    block: &Subspace,
) -> Result<Vec<(Rational, Subspace)>> {
    let n = algebra.dim();
    let basis = block.basis_vectors();
    let ad = algebra.ad(h)?;
    let mut columns = Vec::with_capacity(basis.len());
    for b in &basis {
        let image = ad.apply(b)?;
        columns.push(
            block
                .coordinates(&image)?
                .ok_or_else(|| Error::InvalidCartan("Cartan elements do not commute".into()))?,
        );
    }
    let k = basis.len();
    let restricted = RationalMatrix::from_columns(k, &columns)?;
    let (eigen, rest) =
        rational_roots(&characteristic_polynomial(&restricted)).ok_or_else(|| {
            Error::UnsupportedBasis("characteristic polynomial too large to factor".into())
        })?;
    if rest > 0 {
        return Err(Error::UnsupportedBasis(
            "ad(h) has non-rational eigenvalues".into(),
        ));
    }
    let mut out = Vec::with_capacity(eigen.len());
    let mut total = 0;
    for (lambda, _) in eigen {
        let shifted = restricted.sub(&RationalMatrix::identity(k).scale(&lambda))?;
        let kernel = nullspace(&shifted);
        total += kernel.dim();
        let vectors = kernel
            .basis()
            .row_iter()
            .map(|c| {
                let mut v = vector::zeros(n);
                for (ci, b) in c.iter().zip(&basis) {
                    vector::axpy(&mut v, ci, b);
                }
                v
            })
            .collect();
        out.push((lambda, Subspace::from_spanning(n, vectors)?));
    }
    if total != k {
        return Err(Error::NotSemisimple("ad(h) is not diagonalizable".into()));
    }
    Ok(out)
}

/// Simultaneous eigenspaces of `ad(h_1), …, ad(h_l)`.
pub fn root_decomposition(algebra: &LieAlgebra, cartan: &CartanMarking) -> Result<RootDatum> {
    cartan.check(algebra)?;
    if !algebra.is_semisimple() {
        return Err(Error::NotSemisimple(format!(
            "{} has a degenerate Killing form",
            algebra.name()
        )));
    }
    let n = algebra.dim();
    let l = cartan.rank();
    let hs: Vec<Vector> = cartan
        .indices()
        .iter()
        .map(|&i| algebra.basis_vector(i))
        .collect();

    let mut blocks: Vec<(Vec<Rational>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for h in &hs {
        let mut next = Vec::new();
        for (weight, block) in blocks {
            for (lambda, piece) in split(algebra, h, &block)? {
                let mut w = weight.clone();
                w.push(lambda);
                next.push((w, piece));
            }
        }
        blocks = next;
    }

    let h_span = cartan.subspace(algebra);
    let mut raw = Vec::new();
    for (weight, space) in blocks {
        if weight.iter().all(Zero::is_zero) {
            if space != h_span {
                return Err(Error::InvalidCartan(format!(
                    "zero weight space has dimension {} but the marked span has {l}",
                    space.dim()
                )));
            }
            continue;
        }
        if space.dim() != 1 {
            return Err(Error::NotSemisimple(format!(
                "a root space has dimension {}",
                space.dim()
            )));
        }
        let values = weight.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
        let v = space.basis().row(0).to_vec();
        let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        let (vector, basis_index) = if support.len() == 1 {
            (vector::unit(n, support[0]), Some(support[0] + 1))
        } else {
            (v, None)
        };
        raw.push((values, vector, basis_index));
    }
    if raw.len() + l != n {
        return Err(Error::InvalidCartan(
            "root spaces and H do not fill the algebra".into(),
        ));
    }
    raw.sort_by(|a, b| (a.2.unwrap_or(usize::MAX), &a.0).cmp(&(b.2.unwrap_or(usize::MAX), &b.0)));

    let find = |vals: &[i64]| raw.iter().position(|r| r.0 == vals);
    let mut coroots = Vec::with_capacity(raw.len());
    for r in &raw {
        let neg: Vec<i64> = r.0.iter().map(|x| -x).collect();
        let j = find(&neg)
            .ok_or_else(|| Error::NotSemisimple("roots do not come in ± pairs".into()))?;
        coroots.push(algebra.bracket(&r.1, &raw[j].1)?);
    }

    let values_of = |simple: &[usize]| -> Result<Option<(RationalMatrix, Vec<Vec<i64>>)>> {
        let m = RationalMatrix::from_columns(
            l,
            &simple
                .iter()
                .map(|&i| raw[i].0.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<Vector>>(),
        )?;
        let mut all = Vec::with_capacity(raw.len());
        for r in &raw {
            let target: Vector = r.0.iter().map(|&x| rat(x)).collect();
            let Some(c) = solve(&m, &target)? else {
                return Ok(None);
            };
            if c.iter().any(|x| !x.is_integer()) {
                return Ok(None);
            }
            let c = c.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
            if c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0) {
                return Ok(None);
            }
            all.push(c);
        }
        Ok(Some((m, all)))
    };

    // When the marked basis is h_k = [e_k, f_k] for simple roots α_k with
    // α_k(h_k) = 2, take those as the simple roots. Otherwise the positive
    // system comes from a regular element and the simple roots are the
    // indecomposable positive ones.
    let adapted: Option<Vec<usize>> = hs
        .iter()
        .enumerate()
        .map(|(k, h)| (0..raw.len()).find(|&i| raw[i].0[k] == 2 && &coroots[i] == h))
        .collect();
    let from_coroots = match adapted {
        Some(simple) => values_of(&simple)?.map(|found| (simple, found)),
        None => None,
    };
    let (simple, all_coefficients) = match from_coroots {
        Some((simple, (_, c))) => (simple, c),
        None => {
            let regular = regular_values(&raw.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), 1);
            let positive: Vec<bool> = regular.values.iter().map(|v| v.is_positive()).collect();
            let mut simple: Vec<usize> = (0..raw.len())
                .filter(|&i| positive[i])
                .filter(|&i| {
                    !(0..raw.len()).any(|j| {
                        positive[j] && {
                            let rest: Vec<i64> =
                                raw[i].0.iter().zip(&raw[j].0).map(|(a, b)| a - b).collect();
                            find(&rest).is_some_and(|k| positive[k])
                        }
                    })
                })
                .collect();
            if simple.len() != l {
                return Err(Error::InvalidCartan(format!(
                    "found {} simple roots for rank {l}",
                    simple.len()
                )));
            }
            simple.sort_by_key(|&i| raw[i].2.unwrap_or(usize::MAX));
            let (_, c) = values_of(&simple)?.ok_or_else(|| {
                Error::UnsupportedBasis("roots are not integral over the simple roots".into())
            })?;
            (simple, c)
        }
    };

    let roots = raw
        .into_iter()
        .zip(coroots)
        .zip(all_coefficients)
        .map(
            |(((values, vector, basis_index), coroot), coefficients)| Root {
                values,
                vector,
                basis_index,
                coroot,
                coefficients,
            },
        )
        .collect();
    Ok(RootDatum {
        cartan: cartan.clone(),
        roots,
        simple,
    })
}

/// `(p, q)`: the `α`-string through `β` is `β − pα, …, β + qα`.
pub fn alpha_string(rd: &RootDatum, alpha: usize, beta: usize) -> (usize, usize) {
    let a = &rd.roots[alpha].values;
    let b = &rd.roots[beta].values;
    let step = |k: i64| -> Vec<i64> { b.iter().zip(a).map(|(y, x)| y + k * x).collect() };
    let mut p = 0;
    while rd.find(&step(-(p as i64 + 1))).is_some() {
        p += 1;
    }
    let mut q = 0;
    while rd.find(&step(q as i64 + 1)).is_some() {
        q += 1;
    }
    (p, q)
}

/// Every `α`-string through `β` with `α ≠ ±β`: `(α, β, p, q)`.
pub fn all_strings(rd: &RootDatum) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..rd.roots.len() {
        for b in 0..rd.roots.len() {
            if a == b || rd.negative(a) == b {
                continue;
            }
            let (p, q) = alpha_string(rd, a, b);
            out.push((a, b, p, q));
        }
    }
    out
}

/// `h0 = Σ t^k h_k` together with `α(h0)` for every root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularElement {
    pub t: u64,
    /// Coordinates in the algebra's basis.
    pub h0: Vector,
    pub values: Vec<Rational>,
}

fn powers(t: u64, l: usize) -> Vec<Rational> {
    let t = rat(t as i64);
    let mut out = Vec::with_capacity(l);
    let mut acc = t.clone();
    for _ in 0..l {
        out.push(acc.clone());
        acc *= &t;
    }
    out
}

struct RegularValues {
    t: u64,
    values: Vec<Rational>,
}

fn regular_values(roots: &[Vec<i64>], from: u64) -> RegularValues {
    let l = roots.first().map_or(0, Vec::len);
    let mut t = from;
    loop {
        let c = powers(t, l);
        let values: Vec<Rational> = roots
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&c)
                    .fold(Rational::zero(), |acc, (&v, ck)| acc + rat(v) * ck)
            })
            .collect();
        if values.iter().all(|v| !v.is_zero()) {
            return RegularValues { t, values };
        }
        t += 1;
    }
}

/// The smallest `t ≥ from` for which `h0 = Σ t^k h_k` is regular.
pub fn regular_cartan_element_from(
    algebra_dim: usize,
    rd: &RootDatum,
    from: u64,
) -> RegularElement {
    let raw: Vec<Vec<i64>> = rd.roots.iter().map(|r| r.values.clone()).collect();
    let RegularValues { t, values } = regular_values(&raw, from.max(1));
    let mut h0 = vector::zeros(algebra_dim);
    for (&i, c) in rd.cartan.indices().iter().zip(powers(t, rd.rank())) {
        h0[i - 1] = c;
    }
    RegularElement { t, h0, values }
}

pub fn regular_cartan_element(algebra_dim: usize, rd: &RootDatum) -> RegularElement {
    regular_cartan_element_from(algebra_dim, rd, 1)
}

/// `Δ = T + ad(a)` with `T(h0) = 0`, checked to vanish on all of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub t: u64,
    pub h0: Vector,
    pub a: Vector,
    pub t_map: LinearMap,
    /// Values of `t` tried before this one whose `T` did not vanish on `H`.
    pub rejected: Vec<u64>,
}

pub const SPLIT_ATTEMPTS: usize = 8;

pub fn split_local_derivation(
    rd: &RootDatum,
    ds: &DerivationSpace<'_>,
    delta: &LinearMap,
) -> Result<Split> {
    let algebra = ds.algebra();
    let n = algebra.dim();
    check_len(n, delta.dim())?;
    let mut rejected = Vec::new();
    let mut from = 1;
    for _ in 0..SPLIT_ATTEMPTS {
        let reg = regular_cartan_element_from(n, rd, from);
        let target = delta.apply(&reg.h0)?;
        // [a, h0] = Δ(h0)  ⇔  ad(h0) a = −Δ(h0)
        let ad_h0 = algebra.ad(&reg.h0)?;
        let rhs: Vector = target.iter().map(|x| -x).collect();
        let a = solve(ad_h0.matrix(), &rhs)?.ok_or(Error::NotLocallyInner { t: reg.t })?;
        let t_map = delta.sub(&algebra.ad(&a)?)?;
        let vanishes = rd
            .cartan
            .indices()
            .iter()
            .map(|&i| t_map.apply(&algebra.basis_vector(i)))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| vector::is_zero(v));
        if vanishes {
            return Ok(Split {
                t: reg.t,
                h0: reg.h0,
                a,
                t_map,
                rejected,
            });
        }
        rejected.push(reg.t);
        from = reg.t + 1;
    }
    Err(Error::RetriesExhausted {
        attempts: SPLIT_ATTEMPTS,
        detail: format!("T = Δ − ad(a) was nonzero on H for t in {rejected:?}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `T(h_i) ≠ 0` for the marked Cartan element with this 1-based index.
    Cartan { index: usize },
    /// `T(e_α)` has a component outside `span{e_α}`.
    NotDiagonal {
        root: usize,
        component: usize,
        value: Rational,
    },
    /// `T(e_{−α}) ≠ −c_α e_{−α}`.
    SignMismatch {
        root: usize,
        c: Rational,
        c_negative: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    /// `c_α` with `T(e_α) = c_α e_α`, per root; `None` where `T(e_α)` left
    /// the line.
    pub coefficients: Vec<Option<Rational>>,
    pub violations: Vec<Violation>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn line_coefficient(
    image: &[Rational],
    line: &[Rational],
) -> std::result::Result<Rational, (usize, Rational)> {
    let pivot = line
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero root vector");
    let c = &image[pivot] / &line[pivot];
    for (k, (y, x)) in image.iter().zip(line).enumerate() {
        let off = y - &c * x;
        if !off.is_zero() {
            return Err((k + 1, off));
        }
    }
    Ok(c)
}

/// Checks `T(H) = 0` and `T(e_{±α}) = ±c_α e_{±α}` for every root.
pub fn restriction_check(
    algebra: &LieAlgebra,
    rd: &RootDatum,
    t: &LinearMap,
) -> Result<RestrictionReport> {
    check_len(algebra.dim(), t.dim())?;
    let mut violations = Vec::new();
    for &i in rd.cartan.indices() {
        if !t.apply(&algebra.basis_vector(i))?.iter().all(Zero::is_zero) {
            violations.push(Violation::Cartan { index: i });
        }
    }
    let mut coefficients = Vec::with_capacity(rd.roots.len());
    for r in &rd.roots {
        let image = t.apply(&r.vector)?;
        coefficients.push(line_coefficient(&image, &r.vector).ok());
    }
    for (k, r) in rd.roots.iter().enumerate() {
        if let Err((component, value)) = line_coefficient(&t.apply(&r.vector)?, &r.vector) {
            violations.push(Violation::NotDiagonal {
                root: k,
                component,
                value,
            });
        }
    }
    for k in 0..rd.roots.len() {
        let m = rd.negative(k);
        if let (Some(c), Some(cn)) = (&coefficients[k], &coefficients[m]) {
            if *cn != -c.clone() {
                violations.push(Violation::SignMismatch {
                    root: k,
                    c: c.clone(),
                    c_negative: cn.clone(),
                });
            }
        }
    }
    Ok(RestrictionReport {
        coefficients,
        violations,
    })
}

/// Failures of the root-space properties:
/// (a) `α + β ∈ R` ⇒ `[e_α, e_β] = n e_{α+β}` with `n ≠ 0`;
/// (b) `α + β ∉ R ∪ {0}` ⇒ `[e_α, e_β] = 0`;
/// (c) `[e_α, e_{−α}]` is a nonzero element of `H`;
/// (d) `dim L = l + |R|` with one-dimensional root spaces.
pub fn root_property_failures(algebra: &LieAlgebra, rd: &RootDatum) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let h = rd.cartan.subspace(algebra);
    if algebra.dim() != rd.rank() + rd.roots.len() {
        failures.push("(d) dim L differs from rank + number of roots".to_string());
    }
    for (a, ra) in rd.roots.iter().enumerate() {
        for (b, rb) in rd.roots.iter().enumerate() {
            let sum: Vec<i64> = ra
                .values
                .iter()
                .zip(&rb.values)
                .map(|(x, y)| x + y)
                .collect();
            let bracket = algebra.bracket(&ra.vector, &rb.vector)?;
            if sum.iter().all(|&x| x == 0) {
                if vector::is_zero(&bracket) || !h.contains(&bracket)? {
                    failures.push(format!("(c) [e_{a}, e_{b}] is not a nonzero element of H"));
                }
            } else if let Some(c) = rd.find(&sum) {
                match line_coefficient(&bracket, &rd.roots[c].vector) {
                    Ok(k) if !k.is_zero() => {}
                    _ => failures.push(format!(
                        "(a) [e_{a}, e_{b}] is not a nonzero multiple of e_{c}"
                    )),
                }
            } else if !vector::is_zero(&bracket) {
                failures.push(format!("(b) [e_{a}, e_{b}] should vanish"));
            }
        }
    }
    Ok(failures)
}

/// `n_{α,β}` with `[e_α, e_β] = n_{α,β} e_{α+β}`, when `α + β` is a root.
pub fn structure_constant(
    algebra: &LieAlgebra,
    rd: &RootDatum,
    a: usize,
    b: usize,
) -> Result<Option<Rational>> {
    let sum: Vec<i64> = rd.roots[a]
        .values
        .iter()
        .zip(&rd.roots[b].values)
        .map(|(x, y)| x + y)
        .collect();
    let Some(c) = rd.find(&sum) else {
        return Ok(None);
    };
    let bracket = algebra.bracket(&rd.roots[a].vector, &rd.roots[b].vector)?;
    Ok(line_coefficient(&bracket, &rd.roots[c].vector).ok())
}

/// For rank 2: the simple roots ordered `(α, β)` so that `aα + bβ` is a root.
pub fn simple_pair_with_root(rd: &RootDatum, a: i64, b: i64) -> Option<(usize, usize)> {
    if rd.simple.len() != 2 {
        return None;
    }
    let (s, t) = (rd.simple[0], rd.simple[1]);
    let combo = |x: usize, y: usize| -> Vec<i64> {
        let mut c = vec![0; 2];
        let xi = rd.simple.iter().position(|&q| q == x).expect("simple");
        let yi = rd.simple.iter().position(|&q| q == y).expect("simple");
        c[xi] += a;
        c[yi] += b;
        c
    };
    if rd.find_by_coefficients(&combo(s, t)).is_some() {
        Some((s, t))
    } else if rd.find_by_coefficients(&combo(t, s)).is_some() {
        Some((t, s))
    } else {
        None
    }
}

/// Facts about the subalgebra generated by `e_{±γ}, e_{±δ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFacts {
    pub bracket_vanishes: bool,
    pub dim: usize,
    pub der_dim: usize,
    pub center_dim: usize,
}

pub fn pair_subalgebra(
    algebra: &LieAlgebra,
    rd: &RootDatum,
    gamma: usize,
    delta: usize,
) -> Result<PairFacts> {
    let gens =
        [gamma, rd.negative(gamma), delta, rd.negative(delta)].map(|k| rd.roots[k].vector.clone());
    let bracket_vanishes = vector::is_zero(&algebra.bracket(&gens[0], &gens[2])?);
    let sub = algebra.subalgebra_generated(&gens)?;
    let restricted = algebra.restrict_to(&sub)?;
    Ok(PairFacts {
        bracket_vanishes,
        dim: sub.dim(),
        der_dim: derivation_space(&restricted).dim(),
        center_dim: restricted.center().dim(),
    })
}
