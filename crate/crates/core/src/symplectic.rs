//! Closed 2-forms and invariant symplectic forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::LieAlgebraSpec;
use crate::cohomology::{betti, rank_d1, CochainComplex};
use crate::error::{Error, Result};
use crate::exterior::{Form, Monomial};
use crate::linalg::{span_contains, Matrix};
use crate::scalar::{int, lcm_of_denominators, Rational};

/// `L(g)`, the kernel of `d` on 2-forms.
#[derive(Clone, Debug)]
pub struct ClosedTwoForms {
    pub dim: usize,
    /// Echelon basis scaled to primitive integer coefficients.
    pub basis: Vec<Form<Rational>>,
}

fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = lcm_of_denominators(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub fn closed_two_forms(spec: &LieAlgebraSpec) -> Result<ClosedTwoForms> {
    let complex = CochainComplex::build(spec)?;
    let m = spec.dim();
    let basis2 = &complex.bases[2];
    let kernel = complex.matrices[2].kernel();
    let basis: Vec<Form<Rational>> = if kernel.is_empty() {
        Vec::new()
    } else {
        let (rref, pivots) = Matrix::from_rows(kernel).rref();
        (0..pivots.len())
            .map(|r| Form::from_vector(m, basis2, &primitive(rref.row(r))))
            .collect()
    };
    let expected = betti(spec)?.get(2) + rank_d1(spec)?;
    if basis.len() != expected {
        return Err(Error::Inconsistent(format!(
            "dim L(g) = {} but b2 + rank d1 = {expected}",
            basis.len()
        )));
    }
    Ok(ClosedTwoForms {
        dim: basis.len(),
        basis,
    })
}

/// Coefficients of `(Σ x_k β_k)^n` on the volume form, keyed by the sorted
/// multiset of variable indices.
pub fn top_power_polynomial(forms: &ClosedTwoForms, n: usize) -> BTreeMap<Vec<usize>, Rational> {
    let m = 2 * n;
    let vol = Monomial::new(&(1..=m).collect::<Vec<_>>()).expect("volume monomial");
    let mut layer: Vec<(Vec<usize>, Form<Rational>)> = vec![(Vec::new(), Form::constant(m, Rational::one()))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (idx, f) in &layer {
            let start = idx.last().copied().unwrap_or(0);
            for k in start..forms.dim {
                let g = f.wedge(&forms.basis[k]);
                if !g.is_zero() {
                    let mut j = idx.clone();
                    j.push(k);
                    next.push((j, g));
                }
            }
        }
        layer = next;
    }
    let factorial = |k: usize| (1..=k as i64).fold(Rational::one(), |a, b| a * int(b));
    let mut poly = BTreeMap::new();
    for (idx, f) in layer {
        let c = f.coeff(vol);
        if c.is_zero() {
            continue;
        }
        let mut multinomial = factorial(n);
        let mut run = 1;
        for w in 0..idx.len() {
            if w + 1 < idx.len() && idx[w + 1] == idx[w] {
                run += 1;
            } else {
                multinomial = multinomial / factorial(run);
                run = 1;
            }
        }
        poly.insert(idx, c * multinomial);
    }
    poly
}

fn evaluate(poly: &BTreeMap<Vec<usize>, Rational>, x: &[i64]) -> Rational {
    poly.iter()
        .map(|(idx, c)| c * idx.iter().fold(Rational::one(), |a, &k| a * int(x[k])))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Visits `{0..=bound}^len` by increasing coordinate sum, lexicographically
/// descending within each sum, until `f` returns true.
fn graded_lex_scan(len: usize, bound: usize, mut f: impl FnMut(&[i64]) -> bool) -> Option<Vec<i64>> {
    fn fill(x: &mut Vec<i64>, pos: usize, left: usize, bound: usize, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if pos == x.len() {
            return left == 0 && f(x);
        }
        let rest = (x.len() - pos - 1) * bound;
        let hi = left.min(bound);
        let lo = left.saturating_sub(rest);
        for v in (lo..=hi).rev() {
            x[pos] = v as i64;
            if fill(x, pos + 1, left - v, bound, f) {
                return true;
            }
        }
        false
    }
    let mut x = vec![0; len];
    for total in 1..=len * bound {
        if fill(&mut x, 0, total, bound, &mut f) {
            return Some(x);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticReport {
    pub exists: bool,
    /// Integer coefficients on the monomial basis.
    #[serde(serialize_with = "serialize_form")]
    pub witness: Option<Form<Rational>>,
    pub dim: Option<usize>,
    pub nonzero_coefficients: usize,
}

fn serialize_form<S: serde::Serializer>(f: &Option<Form<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_some(&f.to_string()),
        None => s.serialize_none(),
    }
}

pub fn exists_symplectic(spec: &LieAlgebraSpec) -> Result<SymplecticReport> {
    let m = spec.dim();
    if m % 2 == 1 {
        return Err(Error::OddDimension(m));
    }
    let n = m / 2;
    let forms = closed_two_forms(spec)?;
    let poly = top_power_polynomial(&forms, n);
    if poly.is_empty() {
        return Ok(SymplecticReport {
            exists: false,
            witness: None,
            dim: None,
            nonzero_coefficients: 0,
        });
    }
    let x = graded_lex_scan(forms.dim, n, |x| !evaluate(&poly, x).is_zero())
        .ok_or_else(|| Error::Inconsistent("nonzero polynomial vanishes on the grid".into()))?;
    let sigma = forms
        .basis
        .iter()
        .zip(&x)
        .filter(|(_, &c)| c != 0)
        .fold(Form::zero(m), |acc, (b, &c)| acc + b.scale(&int(c)));
    if !is_symplectic(spec, &sigma) {
        return Err(Error::Inconsistent("grid witness is not symplectic".into()));
    }
    Ok(SymplecticReport {
        exists: true,
        witness: Some(sigma),
        dim: Some(forms.dim),
        nonzero_coefficients: poly.len(),
    })
}

/// `dσ = 0` and `σ^{m/2} ≠ 0`.
pub fn is_symplectic(spec: &LieAlgebraSpec, sigma: &Form<Rational>) -> bool {
    let m = spec.dim();
    if m % 2 == 1 || sigma.degree().map_or(false, |d| d != 2) || !spec.differential(sigma).is_zero() {
        return false;
    }
    let power = (0..m / 2).fold(Form::constant(m, Rational::one()), |acc, _| acc.wedge(sigma));
    !power.is_zero()
}

pub fn moduli_dim_symplectic(spec: &LieAlgebraSpec) -> Result<Option<usize>> {
    if !exists_symplectic(spec)?.exists {
        return Ok(None);
    }
    Ok(Some(betti(spec)?.get(2) + rank_d1(spec)?))
}

/// The antisymmetric matrix `A` with `σ = Σ_{i<j} A_ij e^{ij}`.
pub fn two_form_matrix(sigma: &Form<Rational>) -> Result<Matrix<Rational>> {
    let m = sigma.dim();
    let mut a = Matrix::zeros(m, m);
    for (mon, c) in sigma.terms() {
        let idx: Vec<usize> = mon.indices().collect();
        if idx.len() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                found: idx.len(),
            });
        }
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        a.set(i, j, c.clone());
        a.set(j, i, -c.clone());
    }
    Ok(a)
}

/// Pfaffian by expansion along the first row; `Pf(e^12 + e^34 + ...) = 1`.
pub fn pfaffian(a: &Matrix<Rational>) -> Rational {
    fn pf(a: &Matrix<Rational>, idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return Rational::one();
        }
        if idx.len() % 2 == 1 {
            return Rational::zero();
        }
        let mut total = Rational::zero();
        for k in 1..idx.len() {
            let c = a.get(idx[0], idx[k]);
            if c.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(t, _)| t + 1 != k).map(|(_, &v)| v).collect();
            let term = c * pf(a, &rest);
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    pf(a, &idx)
}

/// The splitting `σ = e^6∧f^1 + e^5∧f^2 + ξ` with `ξ ∈ Λ²⟨e^1..e^4⟩`,
/// together with the identities it is expected to satisfy.
#[derive(Clone, Debug)]
pub struct SigmaDecomposition {
    pub f1: Form<Rational>,
    pub f2: Form<Rational>,
    pub xi: Form<Rational>,
    /// `de^6 = e^5∧f^3 + ν`.
    pub f3: Form<Rational>,
    pub nu: Form<Rational>,
    /// `df^1 = 0`.
    pub f1_closed: bool,
    /// `df^2 = -g∧f^3 + a ν`, `a` the `e^5` coefficient of `f^1` and `g = f^1 - a e^5`.
    pub f2_equation: bool,
    /// `ν∧g + de^5∧f^2 ∈ d(Λ²⟨e^1..e^4⟩)`, `g = f^1 - a e^5`.
    pub exact_membership: bool,
}

impl SigmaDecomposition {
    pub fn passed(&self) -> bool {
        self.f1_closed && self.f2_equation && self.exact_membership
    }
}

pub fn decompose_sigma(spec: &LieAlgebraSpec, sigma: &Form<Rational>) -> Result<SigmaDecomposition> {
    if spec.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: spec.dim(),
        });
    }
    if !spec.is_triangular() {
        return Err(Error::NotTriangular);
    }
    if !spec.differential(sigma).is_zero() {
        return Err(Error::NotClosed);
    }
    let m = 6;
    let f1 = sigma.factor_out(6);
    let rest = sigma.filter(|mon| !mon.contains(6));
    let f2 = rest.factor_out(5);
    let xi = rest.filter(|mon| !mon.contains(5));
    let de6 = spec.de(6);
    let f3 = de6.factor_out(5);
    let nu = de6.filter(|mon| !mon.contains(5));
    let a = f1.coeff(Monomial::generator(5));
    let g = f1.filter(|mon| !mon.contains(5));
    let f1_closed = spec.differential(&f1).is_zero();
    let f2_equation = spec.differential(&f2) == -g.wedge(&f3) + nu.scale(&a);
    let d_part = Monomial::all(4, 2);
    let basis3 = Monomial::all(m, 3);
    let images: Vec<Vec<Rational>> = d_part
        .iter()
        .map(|&mon| spec.differential(&Form::monomial(m, mon, Rational::one())).to_vector(&basis3))
        .collect();
    let target = (nu.wedge(&g) + spec.de(5).wedge(&f2)).to_vector(&basis3);
    let exact_membership = span_contains(&images, &target);
    Ok(SigmaDecomposition {
        f1,
        f2,
        xi,
        f3,
        nu,
        f1_closed,
        f2_equation,
        exact_membership,
    })
}
