use num_traits::{One, Zero};
use serde::Serialize;

use super::acs::{require_integrable, AlmostComplexStructure, Frame};
use super::frames::filtered_coframe;
use crate::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{Form, Monomial};
use crate::linalg::Matrix;
use crate::scalar::{Gaussian, Rational, Scalar};

type C<R> = Gaussian<R>;

/// Solutions of the linearised integrability equation at a complex
/// structure, for deformations `ω^i + t Σ_j Z[i][j] ω̄^j`.
#[derive(Clone, Debug)]
pub struct DeformationKernel<R: Scalar> {
    pub dim: usize,
    /// Basis of the kernel, each an `n×n` matrix `Z`.
    pub basis: Vec<Matrix<C<R>>>,
    /// Kernel dimension of the holomorphic system in a filtered coframe
    /// (complex dimension three only).
    pub dos_dim: Option<usize>,
    /// `α, β, γ` of the filtered coframe, in its frame coordinates.
    pub dos_forms: Option<[Form<C<R>>; 3]>,
}

/// `ᾱ^i_j` with `(dω^i)^{1,1} = Σ_j ω^j ∧ ᾱ^i_j`.
fn mixed_coefficients<R: Scalar>(frame: &Frame<R>, images: &[Form<C<R>>]) -> Vec<Vec<Form<C<R>>>> {
    let n = frame.n;
    (0..n)
        .map(|i| {
            let part = frame.component(&images[i], 1, 1);
            (1..=n).map(|j| part.factor_out(j)).collect()
        })
        .collect()
}

fn antiholomorphic<R: Scalar>(n: usize, row: &[C<R>]) -> Form<C<R>> {
    let mut f = Form::zero(2 * n);
    for (j, c) in row.iter().enumerate() {
        f.add_term(Monomial::generator(n + j + 1), c.clone());
    }
    f
}

/// The `(0,2)`-components of `dσ̄^i - Σ_j σ̄^j ∧ ᾱ^i_j`, stacked over `i`.
fn tang_residual<R: Scalar>(
    frame: &Frame<R>,
    images: &[Form<C<R>>],
    alpha: &[Vec<Form<C<R>>>],
    z: &Matrix<C<R>>,
) -> Vec<C<R>> {
    let n = frame.n;
    let target = frame.basis(0, 2);
    let sigma: Vec<Form<C<R>>> = (0..n).map(|i| antiholomorphic(n, z.row(i))).collect();
    let mut out = Vec::with_capacity(n * target.len());
    for i in 0..n {
        let mut e = frame.differential(images, &sigma[i]);
        for j in 0..n {
            e = &e - &sigma[j].wedge(&alpha[i][j]);
        }
        out.extend(frame.component(&e, 0, 2).to_vector(&target));
    }
    out
}

fn unit<R: Scalar>(n: usize, k: usize, l: usize) -> Matrix<C<R>> {
    let mut z = Matrix::zeros(n, n);
    z.set(k, l, C::<R>::one());
    z
}

fn linear_system<R: Scalar>(n: usize, mut column: impl FnMut(&Matrix<C<R>>) -> Vec<C<R>>) -> Matrix<C<R>> {
    let cols: Vec<Vec<C<R>>> = (0..n * n).map(|u| column(&unit(n, u / n, u % n))).collect();
    Matrix::from_columns(&cols)
}

fn vector_to_matrix<R: Scalar>(n: usize, v: &[C<R>]) -> Matrix<C<R>> {
    Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())
}

pub fn deformation_kernel<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
) -> Result<DeformationKernel<R>> {
    require_integrable(spec, j)?;
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let alpha = mixed_coefficients(&frame, &images);
    let n = frame.n;
    let system = linear_system(n, |z| tang_residual(&frame, &images, &alpha, z));
    let basis: Vec<Matrix<C<R>>> = system
        .kernel()
        .iter()
        .map(|v| vector_to_matrix(n, v))
        .collect();
    let (dos_dim, dos_forms) = if n == 3 && spec.is_nilpotent()? {
        let (dim, forms) = dos_kernel(spec, j)?;
        if dim != basis.len() {
            return Err(Error::Inconsistent(format!(
                "holomorphic system has kernel dimension {dim}, linearised equation {}",
                basis.len()
            )));
        }
        (Some(dim), Some(forms))
    } else {
        (None, None)
    };
    Ok(DeformationKernel {
        dim: basis.len(),
        basis,
        dos_dim,
        dos_forms,
    })
}

/// Kernel of `∂σ¹ = 0, ∂σ² = σ¹∧α, ∂σ³ = σ¹∧β + σ²∧γ` in a filtered coframe,
/// where `dω² ≡ ω¹∧ᾱ` and `dω³ ≡ ω¹∧β̄ + ω²∧γ̄` modulo `Λ^{2,0}`.
pub fn dos_kernel<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
) -> Result<(usize, [Form<C<R>>; 3])> {
    if j.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: j.dim(),
        });
    }
    let filtered = j.with_coframe(filtered_coframe(spec, j, false)?)?;
    let frame = filtered.frame();
    let images = frame.differential_images(spec);
    let m11: Vec<Form<C<R>>> = images[..3].iter().map(|d| frame.component(d, 1, 1)).collect();
    let theta = |a: usize| Form::<C<R>>::generator(6, a);
    let alpha_bar = m11[1].factor_out(1);
    let beta_bar = m11[2].factor_out(1);
    let gamma_bar = m11[2].factor_out(2);
    let filtered_ok = m11[0].is_zero()
        && m11[1] == theta(1).wedge(&alpha_bar)
        && m11[2] == &theta(1).wedge(&beta_bar) + &theta(2).wedge(&gamma_bar);
    if !filtered_ok {
        return Err(Error::Inconsistent("coframe is not filtered".into()));
    }
    let alpha = frame.conjugate(&alpha_bar);
    let beta = frame.conjugate(&beta_bar);
    let gamma = frame.conjugate(&gamma_bar);
    let target = frame.basis(2, 0);
    let del = |f: &Form<C<R>>| frame.component(&frame.differential(&images, f), 2, 0);
    let system = linear_system(3, |s| {
        let sigma: Vec<Form<C<R>>> = (0..3)
            .map(|i| {
                let mut f = Form::zero(6);
                for (a, c) in s.row(i).iter().enumerate() {
                    f.add_term(Monomial::generator(a + 1), c.clone());
                }
                f
            })
            .collect();
        let eqs = [
            del(&sigma[0]),
            &del(&sigma[1]) - &sigma[0].wedge(&alpha),
            &(&del(&sigma[2]) - &sigma[0].wedge(&beta)) - &sigma[1].wedge(&gamma),
        ];
        eqs.iter().flat_map(|e| e.to_vector(&target)).collect()
    });
    Ok((system.kernel().len(), [alpha, beta, gamma]))
}

/// Truncated power series in `t` up to `t²`.
type Series<R> = [Form<C<R>>; 3];

fn series_wedge<R: Scalar>(a: &Series<R>, b: &Series<R>) -> Series<R> {
    let mut out: Series<R> = std::array::from_fn(|_| Form::zero(a[0].dim()));
    for p in 0..3 {
        for q in 0..3 - p {
            if a[p].is_zero() || b[q].is_zero() {
                continue;
            }
            out[p + q] = &out[p + q] + &a[p].wedge(&b[q]);
        }
    }
    out
}

/// Coefficients of `dη^i ∧ η^1 ∧ ... ∧ η^n` for
/// `η^i = ω^i + t Σ A_ij ω̄^j + t² Σ B_ij ω̄^j`.
fn integrability_series<R: Scalar>(
    frame: &Frame<R>,
    images: &[Form<C<R>>],
    a: &Matrix<C<R>>,
    b: &Matrix<C<R>>,
) -> Vec<Series<R>> {
    let n = frame.n;
    let m = 2 * n;
    let eta: Vec<Series<R>> = (0..n)
        .map(|i| {
            [
                Form::generator(m, i + 1),
                antiholomorphic(n, a.row(i)),
                antiholomorphic(n, b.row(i)),
            ]
        })
        .collect();
    let mut top: Series<R> = [Form::constant(m, C::<R>::one()), Form::zero(m), Form::zero(m)];
    for e in &eta {
        top = series_wedge(&top, e);
    }
    eta.iter()
        .map(|e| {
            let de: Series<R> = std::array::from_fn(|k| frame.differential(images, &e[k]));
            series_wedge(&de, &top)
        })
        .collect()
}

fn stack<R: Scalar>(forms: &[Form<C<R>>], basis: &[Monomial]) -> Vec<C<R>> {
    forms.iter().flat_map(|f| f.to_vector(basis)).collect()
}

/// Whether `Z` is in the kernel of the linearised equation.
pub fn is_infinitesimal_deformation<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
    z: &Matrix<C<R>>,
) -> Result<bool> {
    require_integrable(spec, j)?;
    let n = j.n();
    if z.rows() != n || z.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.rows(),
        });
    }
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let alpha = mixed_coefficients(&frame, &images);
    Ok(tang_residual(&frame, &images, &alpha, z).iter().all(|c| c.is_zero()))
}

/// A second-order term `B` making `ω + t Zω̄ + t² Bω̄` integrable to order
/// `t²`, or `None` when the first-order deformation is obstructed.
pub fn second_order_extension<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
    z: &Matrix<C<R>>,
) -> Result<Option<Matrix<C<R>>>> {
    if !is_infinitesimal_deformation(spec, j, z)? {
        return Err(Error::NotInKernel);
    }
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let n = frame.n;
    let basis = Monomial::all(2 * n, n + 2);
    let zero = Matrix::zeros(n, n);
    let at_order = |a: &Matrix<C<R>>, b: &Matrix<C<R>>, k: usize| -> Vec<C<R>> {
        let s = integrability_series(&frame, &images, a, b);
        let forms: Vec<Form<C<R>>> = s.into_iter().map(|x| x[k].clone()).collect();
        stack(&forms, &basis)
    };
    if at_order(z, &zero, 1).iter().any(|c| !c.is_zero()) {
        return Err(Error::Inconsistent(
            "first-order term does not vanish on a kernel element".into(),
        ));
    }
    let q = at_order(z, &zero, 2);
    let system = linear_system(n, |b| at_order(b, &zero, 1));
    let rhs: Vec<C<R>> = q.into_iter().map(|c| -c).collect();
    Ok(system.solve(&rhs).map(|v| vector_to_matrix(n, &v)))
}

/// A 1-form `α` with `de^i = e^i ∧ α` for every `i`, if one exists.
pub fn has_full_moduli(spec: &LieAlgebraSpec) -> Result<Option<Vec<Rational>>> {
    spec.require_lie()?;
    let m = spec.dim();
    let pairs = Monomial::all(m, 2);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for i in 1..=m {
        let cols: Vec<Vec<Rational>> = (1..=m)
            .map(|k| {
                Form::<Rational>::generator(m, i)
                    .wedge(&Form::generator(m, k))
                    .to_vector(&pairs)
            })
            .collect();
        let target = spec.de(i).to_vector(&pairs);
        for (r, t) in target.into_iter().enumerate() {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
            rhs.push(t);
        }
    }
    Ok(Matrix::from_rows(rows).solve(&rhs))
}

/// Serializable view of a kernel for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct KernelSummary {
    pub dim: usize,
    pub dos_dim: Option<usize>,
}

impl<R: Scalar> DeformationKernel<R> {
    pub fn summary(&self) -> KernelSummary {
        KernelSummary {
            dim: self.dim,
            dos_dim: self.dos_dim,
        }
    }
}
