//! Numerical discovery of integrable complex structures.
//!
//! Structures are parametrised by the big cell `Z ↦ ⟨ω^i + Σ_j Z_ij ω̄^j⟩`
//! around a reference structure, and the integrability residual is driven
//! to zero by damped Gauss–Newton steps. Candidates are only reported after
//! exact rationalisation and verification.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::LieAlgebraSpec;
use crate::complex::{is_integrable, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{Form, Monomial};
use crate::linalg::Matrix;
use crate::scalar::{rational, ComplexScalar, Gaussian, Rational, Scalar};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_DENBOUND: u32 = 64;
pub const DEFAULT_RESTARTS: usize = 200;

const SNAP_ITER: usize = 50;
const BATCH: usize = 8;
const MAX_ITER: usize = 200;

/// A point `Z` of the chart around `reference`.
#[derive(Clone, Debug)]
pub struct CellParameter {
    pub reference: AlmostComplexStructure<Rational>,
    /// Row-major `n×n`.
    pub z: Vec<Complex64>,
}

impl CellParameter {
    pub fn n(&self) -> usize {
        self.reference.n()
    }

    /// `span(η) ∩ span(η̄) = 0`, i.e. `[[I, Z], [Z̄, I]]` is invertible.
    pub fn is_admissible(&self) -> bool {
        admissible(self.n(), &self.z)
    }
}

fn admissible(n: usize, z: &[Complex64]) -> bool {
    let big = DMatrix::from_fn(2 * n, 2 * n, |a, b| match (a < n, b < n) {
        (true, true) | (false, false) => {
            if a == b {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            }
        }
        (true, false) => z[a * n + (b - n)],
        (false, true) => z[(a - n) * n + b].conj(),
    });
    big.determinant().norm() > 1e-9
}

/// The integrability residual as a function of `Z`, with analytic Jacobian.
///
/// Everything is computed in the frame of the reference structure, where
/// `η^i = θ^i + Σ_j Z_ij θ^(n+j)` already has unit leading coefficient.
#[derive(Clone, Debug)]
pub struct ResidualProblem {
    n: usize,
    images: Vec<Form<Complex64>>,
    basis: Vec<Monomial>,
}

impl ResidualProblem {
    pub fn new(spec: &LieAlgebraSpec, reference: &AlmostComplexStructure<Rational>) -> Result<Self> {
        spec.require_lie()?;
        if spec.dim() != reference.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: reference.dim(),
            });
        }
        let frame = reference.frame();
        let n = frame.n;
        let images = frame
            .differential_images(spec)
            .iter()
            .map(|f| f.map(to_c64))
            .collect();
        Ok(ResidualProblem {
            n,
            images,
            basis: Monomial::all(2 * n, n + 2),
        })
    }

    pub fn unknowns(&self) -> usize {
        self.n * self.n
    }

    fn eta(&self, z: &[Complex64]) -> Vec<Form<Complex64>> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let mut f = Form::generator(2 * n, k + 1);
                for l in 0..n {
                    f.add_term(Monomial::generator(n + l + 1), z[k * n + l]);
                }
                f
            })
            .collect()
    }

    fn d_eta(&self, z: &[Complex64]) -> Vec<Form<Complex64>> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let mut f = self.images[k].clone();
                for l in 0..n {
                    if z[k * n + l] != Complex64::zero() {
                        f = &f + &self.images[n + l].scale(&z[k * n + l]);
                    }
                }
                f
            })
            .collect()
    }

    /// Coefficients of `dη^i ∧ η^1 ∧ ... ∧ η^n`, stacked over `i`.
    pub fn residual_vector(&self, z: &[Complex64]) -> Vec<Complex64> {
        let eta = self.eta(z);
        let top = eta
            .iter()
            .fold(Form::constant(2 * self.n, Complex64::new(1.0, 0.0)), |acc, e| acc.wedge(e));
        self.d_eta(z)
            .iter()
            .flat_map(|d| d.wedge(&top).to_vector(&self.basis))
            .collect()
    }

    /// Residual vector and its complex derivatives `∂r/∂Z_kl` (one column
    /// per entry of `Z`); the residual is holomorphic in `Z`.
    pub fn evaluate(&self, z: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let n = self.n;
        let m = 2 * n;
        let one = Form::constant(m, Complex64::new(1.0, 0.0));
        let eta = self.eta(z);
        let mut prefix = vec![one.clone()];
        for e in &eta {
            let next = prefix.last().unwrap().wedge(e);
            prefix.push(next);
        }
        let mut suffix = vec![one; n + 1];
        for k in (0..n).rev() {
            suffix[k] = eta[k].wedge(&suffix[k + 1]);
        }
        let top = &prefix[n];
        let d_eta = self.d_eta(z);
        let r: Vec<Complex64> = d_eta
            .iter()
            .flat_map(|d| d.wedge(top).to_vector(&self.basis))
            .collect();
        let mut columns = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                let g = prefix[k]
                    .wedge(&Form::generator(m, n + l + 1))
                    .wedge(&suffix[k + 1]);
                let col: Vec<Complex64> = (0..n)
                    .flat_map(|i| {
                        let mut f = d_eta[i].wedge(&g);
                        if i == k {
                            f = &f + &self.images[n + l].wedge(top);
                        }
                        f.to_vector(&self.basis)
                    })
                    .collect();
                columns.push(col);
            }
        }
        (r, columns)
    }

    pub fn cost(&self, z: &[Complex64]) -> f64 {
        self.residual_vector(z).iter().map(|c| c.norm_sqr()).sum()
    }

    /// Real residual `(Re r, Im r)` and real Jacobian with respect to
    /// `(Re Z, Im Z)`.
    pub fn real_system(&self, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let z = to_complex(x);
        let (r, cols) = self.evaluate(&z);
        let k = r.len();
        let u = z.len();
        let res = DVector::from_fn(2 * k, |a, _| if a < k { r[a].re } else { r[a - k].im });
        let jac = DMatrix::from_fn(2 * k, 2 * u, |a, b| {
            let c = if b < u { cols[b][a % k] } else { cols[b - u][a % k] * Complex64::i() };
            if a < k {
                c.re
            } else {
                c.im
            }
        });
        (res, jac)
    }
}

fn to_c64(z: &Gaussian<Rational>) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// `(Re Z, Im Z)` back to complex entries.
fn to_complex(x: &[f64]) -> Vec<Complex64> {
    let u = x.len() / 2;
    (0..u).map(|k| Complex64::new(x[k], x[u + k])).collect()
}

fn to_real(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|c| c.re).chain(z.iter().map(|c| c.im)).collect()
}

/// Sum of squared coefficient norms of `dη^i ∧ η^1 ∧ ... ∧ η^n`.
pub fn residual(spec: &LieAlgebraSpec, cell: &CellParameter) -> Result<f64> {
    if !cell.is_admissible() {
        return Err(Error::Inadmissible);
    }
    Ok(ResidualProblem::new(spec, &cell.reference)?.cost(&cell.z))
}

/// Maximum relative deviation between the analytic Jacobian and central
/// differences with step `h`.
pub fn jacobian_check(problem: &ResidualProblem, z: &[Complex64], h: f64) -> f64 {
    let x = to_real(z);
    let (_, jac) = problem.real_system(&x);
    let mut fd = DMatrix::zeros(jac.nrows(), jac.ncols());
    for b in 0..x.len() {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[b] += h;
        minus[b] -= h;
        let rp = problem.real_system(&plus).0;
        let rm = problem.real_system(&minus).0;
        fd.set_column(b, &((rp - rm) / (2.0 * h)));
    }
    let scale = jac.norm().max(1.0);
    (fd - jac).norm() / scale
}

/// `det(I - Z̄Z)`, real, vanishing exactly on inadmissible `Z`.
fn degeneracy(n: usize, z: &[Complex64]) -> f64 {
    let zm = DMatrix::from_fn(n, n, |i, j| z[i * n + j]);
    let zb = zm.map(|c| c.conj());
    let nm = DMatrix::<Complex64>::identity(n, n) - &zb * &zm;
    nm.determinant().re
}

/// The residual with its Jacobian, replaced by a large constant on
/// degenerate spans.
fn guarded_system(problem: &ResidualProblem, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
    let (r, jac) = problem.real_system(x);
    let delta = degeneracy(problem.n, &to_complex(x));
    if delta.abs() > 1e-12 {
        (r, jac)
    } else {
        let big = DVector::from_element(r.len(), 1e6);
        (big, DMatrix::zeros(jac.nrows(), jac.ncols()))
    }
}

/// Damped Gauss–Newton on the free coordinates of `x`.
fn levenberg_marquardt(problem: &ResidualProblem, x: &mut [f64], free: &[bool], tol: f64, max_iter: usize) -> f64 {
    let idx: Vec<usize> = (0..x.len()).filter(|&k| free[k]).collect();
    let (mut r, mut jac) = guarded_system(problem, x);
    let mut cost = r.norm_squared();
    if idx.is_empty() {
        return cost;
    }
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        if cost < tol {
            break;
        }
        let j = DMatrix::from_fn(jac.nrows(), idx.len(), |a, b| jac[(a, idx[b])]);
        let jt = j.transpose();
        let a = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        while lambda < 1e12 {
            let mut damped = a.clone();
            for k in 0..idx.len() {
                damped[(k, k)] += lambda * (a[(k, k)] + 1e-9);
            }
            let Some(step) = damped.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let mut trial = x.to_vec();
            for (k, &c) in idx.iter().enumerate() {
                trial[c] += step[k];
            }
            let (tr, tj) = guarded_system(problem, &trial);
            let tc = tr.norm_squared();
            if tc < cost {
                x.copy_from_slice(&trial);
                r = tr;
                jac = tj;
                cost = tc;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    cost
}

/// The rational with denominator at most `bound` closest to `x`, found from
/// the continued fraction expansion and its semiconvergents.
pub fn best_rational(x: f64, bound: u32) -> Rational {
    let bound = bound.max(1) as i128;
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    loop {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let q2 = a * q1 + q0;
        if q2 > bound {
            let k = (bound - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let cand = [(p1, q1), (ps, qs)];
            let best = cand
                .iter()
                .filter(|(_, q)| *q > 0)
                .min_by(|a, b| {
                    let ea = (x - a.0 as f64 / a.1 as f64).abs();
                    let eb = (x - b.0 as f64 / b.1 as f64).abs();
                    ea.partial_cmp(&eb).unwrap()
                })
                .copied()
                .unwrap_or((p1, q1));
            return Rational::new(BigInt::from(best.0), BigInt::from(best.1));
        }
        let p2 = a * p1 + p0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - v.floor();
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    Rational::new(BigInt::from(p1), BigInt::from(q1))
}

/// An exact witness in the chart.
#[derive(Clone, Debug)]
pub struct ExactWitness {
    pub z: Matrix<Gaussian<Rational>>,
    pub acs: AlmostComplexStructure<Rational>,
}

/// The structure with `(1,0)`-forms `ω^i + Σ_j Z_ij ω̄^j`.
pub fn structure_from_chart(
    reference: &AlmostComplexStructure<Rational>,
    z: &Matrix<Gaussian<Rational>>,
) -> Result<AlmostComplexStructure<Rational>> {
    let base = reference.coframe();
    let m = reference.dim();
    let n = reference.n();
    let coframe = (0..n)
        .map(|i| {
            (0..m)
                .map(|k| {
                    (0..n).fold(base[i][k].clone(), |acc, j| acc + z.get(i, j).clone() * base[j][k].conj())
                })
                .collect()
        })
        .collect();
    AlmostComplexStructure::from_coframe(coframe)
}

fn exact_check(spec: &LieAlgebraSpec, reference: &AlmostComplexStructure<Rational>, values: &[Rational]) -> Option<ExactWitness> {
    let u = values.len() / 2;
    let n = reference.n();
    let z = Matrix::from_fn(n, n, |i, j| Gaussian::new(values[i * n + j].clone(), values[u + i * n + j].clone()));
    let acs = structure_from_chart(reference, &z).ok()?;
    is_integrable(spec, &acs).ok()?.then_some(ExactWitness { z, acs })
}

/// Rounds an approximate solution to an exact integrable structure.
///
/// Plain rounding is tried first. Failing that, coordinates are fixed one at
/// a time to nearby rationals (nearly exact values first, then the nearest
/// integers and halves), re-solving for the remaining coordinates after each
/// step; the fully fixed point is then verified exactly.
pub fn rationalize(
    spec: &LieAlgebraSpec,
    reference: &AlmostComplexStructure<Rational>,
    z: &[Complex64],
    denbound: u32,
    tol: f64,
) -> Result<Option<ExactWitness>> {
    let problem = ResidualProblem::new(spec, reference)?;
    if problem.cost(z) >= tol {
        return Ok(None);
    }
    let mut x = to_real(z);
    let rounded: Vec<Rational> = x.iter().map(|&v| best_rational(v, denbound)).collect();
    if let Some(w) = exact_check(spec, reference, &rounded) {
        return Ok(Some(w));
    }
    let len = x.len();
    let mut fixed: Vec<Option<Rational>> = vec![None; len];
    let mut failures = 0;
    while fixed.iter().any(|f| f.is_none()) {
        let mut candidates: Vec<(u8, f64, usize, Rational)> = Vec::new();
        for k in (0..len).filter(|&k| fixed[k].is_none()) {
            let q = best_rational(x[k], denbound);
            let err = (x[k] - q.to_f64().unwrap_or(f64::NAN)).abs();
            if err < 1e-7 {
                candidates.push((0, q.denom().to_f64().unwrap_or(1.0), k, q));
                continue;
            }
            candidates.push((1, x[k].abs(), k, Rational::zero()));
            for den in [1i64, 2] {
                let q = rational((x[k] * den as f64).round() as i64, den);
                let err = (x[k] - q.to_f64().unwrap_or(f64::NAN)).abs();
                candidates.push((1 + den as u8, err, k, q));
            }
        }
        candidates.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
        candidates.dedup_by(|a, b| a.2 == b.2 && a.3 == b.3);
        let mut accepted = false;
        for (_, _, k, q) in candidates.into_iter().take(4 * len) {
            let mut trial = x.clone();
            trial[k] = q.to_f64().unwrap_or(f64::NAN);
            let free: Vec<bool> = (0..len).map(|c| c != k && fixed[c].is_none()).collect();
            levenberg_marquardt(&problem, &mut trial, &free, tol * 1e-6, SNAP_ITER);
            let cost = problem.cost(&to_complex(&trial));
            if cost < tol && admissible(problem.n, &to_complex(&trial)) {
                x = trial;
                fixed[k] = Some(q);
                accepted = true;
                break;
            }
            failures += 1;
            if failures > 2 * len {
                return Ok(None);
            }
        }
        if !accepted {
            return Ok(None);
        }
    }
    let values: Vec<Rational> = fixed.into_iter().map(|f| f.expect("all fixed")).collect();
    Ok(exact_check(spec, reference, &values))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Witness,
    NoneFound,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: Outcome,
    pub restarts_used: usize,
    pub final_residual: f64,
    pub seed: u64,
    pub witness: Option<ExactWitness>,
    /// A converged floating point candidate that did not rationalise.
    pub unverified: Option<Vec<Complex64>>,
}

impl SearchReport {
    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Witness => "witness found and verified exactly",
            Outcome::NoneFound => "no witness found (not a nonexistence proof)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
    pub denbound: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            restarts: DEFAULT_RESTARTS,
            tol: DEFAULT_TOL,
            denbound: DEFAULT_DENBOUND,
        }
    }
}

/// A random admissible `Z` with entries in the unit disk, drawn from the
/// stream belonging to `restart`.
pub fn random_start(n: usize, seed: u64, restart: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    loop {
        let z: Vec<Complex64> = (0..n * n)
            .map(|_| {
                let r: f64 = rng.gen::<f64>().sqrt();
                let t: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(r, t)
            })
            .collect();
        if admissible(n, &z) {
            return z;
        }
    }
}

struct Attempt {
    cost: f64,
    z: Vec<Complex64>,
    witness: Option<ExactWitness>,
}

fn attempt(
    spec: &LieAlgebraSpec,
    reference: &AlmostComplexStructure<Rational>,
    problem: &ResidualProblem,
    opts: &SearchOptions,
    restart: usize,
) -> Attempt {
    let z0 = random_start(problem.n, opts.seed, restart);
    let mut x = to_real(&z0);
    let free = vec![true; x.len()];
    levenberg_marquardt(problem, &mut x, &free, opts.tol * 1e-6, MAX_ITER);
    let z = to_complex(&x);
    let cost = problem.cost(&z);
    let witness = if cost < opts.tol && admissible(problem.n, &z) {
        rationalize(spec, reference, &z, opts.denbound, opts.tol).ok().flatten()
    } else {
        None
    };
    Attempt { cost, z, witness }
}

/// Pairings `e^a + i e^b` of the coordinates into complex coframes, one per
/// perfect matching and choice of orientation on all pairs but the first.
/// The standard structure comes first.
pub fn reference_structures(m: usize) -> Result<Vec<AlmostComplexStructure<Rational>>> {
    fn matchings(rest: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let Some((&a, tail)) = rest.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for k in 0..tail.len() {
            let others: Vec<usize> = tail.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &v)| v).collect();
            for mut sub in matchings(&others) {
                sub.insert(0, (a, tail[k]));
                out.push(sub);
            }
        }
        out
    }
    if m % 2 == 1 {
        return Err(Error::OddDimension(m));
    }
    let n = m / 2;
    let coords: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    for pairs in matchings(&coords) {
        for signs in 0..1usize << n.saturating_sub(1) {
            let coframe = pairs
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| {
                    let s = if k > 0 && (signs >> (k - 1)) & 1 == 1 { -1 } else { 1 };
                    let mut row = vec![Gaussian::zero(); m];
                    row[a] = g(1, 0);
                    row[b] = g(0, s);
                    row
                })
                .collect();
            out.push(AlmostComplexStructure::from_coframe(coframe)?);
        }
    }
    Ok(out)
}

/// Multi-start search; restart `r` works in the chart around reference
/// structure `r mod k`, cycling through [`reference_structures`].
///
/// Restarts run in parallel in fixed-size batches; the reported witness is
/// the one from the smallest restart index, so the result does not depend
/// on the thread count.
pub fn minimize(spec: &LieAlgebraSpec, opts: &SearchOptions) -> Result<SearchReport> {
    if !spec.is_nilpotent()? {
        return Err(Error::NotNilpotent);
    }
    let references = reference_structures(spec.dim())?;
    let problems = references
        .iter()
        .map(|r| ResidualProblem::new(spec, r))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<Attempt> = None;
    let mut start = 0;
    while start < opts.restarts {
        let end = (start + BATCH).min(opts.restarts);
        let results: Vec<Attempt> = (start..end)
            .into_par_iter()
            .map(|r| {
                let k = r % references.len();
                attempt(spec, &references[k], &problems[k], opts, r)
            })
            .collect();
        for (offset, a) in results.into_iter().enumerate() {
            if a.witness.is_some() {
                return Ok(SearchReport {
                    outcome: Outcome::Witness,
                    restarts_used: start + offset + 1,
                    final_residual: a.cost,
                    seed: opts.seed,
                    witness: a.witness,
                    unverified: None,
                });
            }
            if best.as_ref().map_or(true, |b| a.cost < b.cost) {
                best = Some(a);
            }
        }
        start = end;
    }
    let best = best.expect("at least one restart");
    let converged = best.cost < opts.tol;
    Ok(SearchReport {
        outcome: Outcome::NoneFound,
        restarts_used: opts.restarts,
        final_residual: best.cost,
        seed: opts.seed,
        witness: None,
        unverified: converged.then_some(best.z),
    })
}

/// A solution `Λ = ⟨e^1 + a e^2, e^3 + b e^4, e^5 + c e^6⟩` of the ansatz.
#[derive(Clone, Debug)]
pub struct AnsatzWitness {
    pub a: Gaussian<Rational>,
    pub b: Gaussian<Rational>,
    pub c: Gaussian<Rational>,
    pub acs: AlmostComplexStructure<Rational>,
}

type G = Gaussian<Rational>;

fn g(re: i64, im: i64) -> G {
    Gaussian::new(rational(re, 1), rational(im, 1))
}

fn ansatz_structure(a: &G, b: &G, c: &G) -> Result<AlmostComplexStructure<Rational>> {
    let mut rows = vec![vec![G::zero(); 6]; 3];
    for (k, x) in [a, b, c].into_iter().enumerate() {
        rows[k][2 * k] = G::one();
        rows[k][2 * k + 1] = x.clone();
    }
    AlmostComplexStructure::from_coframe(rows)
}


/// Samples of the two-parameter families solving
/// `(e^1 + a e^2) ∧ (e^3 + b e^4) ∧ (de^5 + c de^6) = 0`: first with `c = i`
/// (solving for `b` over a list of small values of `a`), then with `a = i`
/// (solving for `c` over small values of `b`). Only nondegenerate, exactly
/// integrable solutions are returned.
pub fn solve_ll_ansatz(spec: &LieAlgebraSpec) -> Result<Vec<AnsatzWitness>> {
    if spec.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: spec.dim(),
        });
    }
    spec.require_lie()?;
    let low = |f: &Form<Rational>| f.terms().all(|(m, _)| m.max_index() <= 4);
    if !low(spec.de(5)) || !low(spec.de(6)) {
        return Err(Error::Precondition(
            "de5 and de6 must lie in the exterior square of <e1..e4>".into(),
        ));
    }
    let top = Monomial::new(&[1, 2, 3, 4]).expect("valid");
    // P(a,b,c) = Σ p[x][y][z] a^x b^y c^z with x,y,z ∈ {0,1}
    let mut p = [[[G::zero(), G::zero()], [G::zero(), G::zero()]], [[G::zero(), G::zero()], [G::zero(), G::zero()]]];
    for x in 0..2 {
        for y in 0..2 {
            for zc in 0..2 {
                let first = Form::<Rational>::generator(6, 1 + x);
                let second = Form::<Rational>::generator(6, 3 + y);
                let d = spec.de(5 + zc);
                let coeff = first.wedge(&second).wedge(d).coeff(top);
                p[x][y][zc] = Gaussian::from_real(coeff);
            }
        }
    }
    let eval = |a: &G, b: &G, c: &G| -> G {
        let mut s = G::zero();
        for (x, ax) in [G::one(), a.clone()].iter().enumerate() {
            for (y, by) in [G::one(), b.clone()].iter().enumerate() {
                for (zc, cz) in [G::one(), c.clone()].iter().enumerate() {
                    s = s + p[x][y][zc].clone() * ax.clone() * by.clone() * cz.clone();
                }
            }
        }
        s
    };
    let i = g(0, 1);
    let nonreal = |z: &G| !z.im.is_zero();
    let mut out: Vec<AnsatzWitness> = Vec::new();
    let push = |a: G, b: G, c: G, out: &mut Vec<AnsatzWitness>| {
        if !(nonreal(&a) && nonreal(&b) && nonreal(&c)) {
            return;
        }
        if out.iter().any(|w| w.a == a && w.b == b && w.c == c) {
            return;
        }
        if let Ok(acs) = ansatz_structure(&a, &b, &c) {
            if is_integrable(spec, &acs).unwrap_or(false) {
                out.push(AnsatzWitness { a, b, c, acs });
            }
        }
    };
    let zero = G::zero();
    let identically_zero = [g(0, 1), g(1, 2), g(2, 3)]
        .iter()
        .all(|a| [g(0, 1), g(3, 1)].iter().all(|b| [g(0, 1), g(1, 5)].iter().all(|c| eval(a, b, c) == zero)));
    if identically_zero {
        push(i.clone(), i.clone(), i.clone(), &mut out);
        return Ok(out);
    }
    let samples = [g(0, 2), g(0, 1), g(0, -1), g(0, -2), g(1, 1), g(-1, 1), g(1, -1), g(-1, -1), g(0, 3), g(0, -3)];
    for a in &samples {
        // P(a,b,i) = u + v b
        let u = eval(a, &zero, &i);
        let v = eval(a, &G::one(), &i) - u.clone();
        if let Some(r) = v.recip() {
            push(a.clone(), -u * r, i.clone(), &mut out);
        } else if u.is_zero() {
            for b in &samples {
                push(a.clone(), b.clone(), i.clone(), &mut out);
            }
        }
    }
    for b in &samples {
        // P(i,b,c) = u + v c
        let u = eval(&i, b, &zero);
        let v = eval(&i, b, &G::one()) - u.clone();
        if let Some(r) = v.recip() {
            push(i.clone(), b.clone(), -u * r, &mut out);
        } else if u.is_zero() {
            for c in &samples {
                push(i.clone(), b.clone(), c.clone(), &mut out);
            }
        }
    }
    Ok(out)
}
