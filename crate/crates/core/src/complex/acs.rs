use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{antiderivation, Form, Monomial};
use crate::linalg::{span_rank, Matrix};
use crate::scalar::{ComplexScalar, Gaussian, Rational, Scalar, Surd};

/// A linear `J` on `g` with `J² = -1`, together with a basis of `Λ^{1,0}`.
///
/// `J` acts on 1-forms by `λ ↦ λ∘J`; `Λ^{1,0} = {λ : λ∘J = iλ}`. Column `k`
/// of the matrix is `J e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure<R: Scalar> {
    j: Matrix<R>,
    coframe: Vec<Vec<Gaussian<R>>>,
}

impl<R: Scalar> AlmostComplexStructure<R> {
    pub fn from_matrix(j: Matrix<R>) -> Result<Self> {
        let m = j.rows();
        if j.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: j.cols(),
            });
        }
        if m % 2 == 1 {
            return Err(Error::OddDimension(m));
        }
        if j.mul(&j) != Matrix::identity(m).scale(&-R::one()) {
            return Err(Error::NotAlmostComplex);
        }
        let n = m / 2;
        let mut coframe: Vec<Vec<Gaussian<R>>> = Vec::with_capacity(n);
        for k in 0..m {
            let mut x = vec![R::zero(); m];
            x[k] = R::one();
            let w = project_10(&j, &x);
            let mut trial = coframe.clone();
            trial.push(w.clone());
            if span_rank(&trial) == trial.len() {
                coframe.push(w);
            }
            if coframe.len() == n {
                break;
            }
        }
        Ok(AlmostComplexStructure { j, coframe })
    }

    /// The unique `J` whose `(1,0)`-forms are spanned by `coframe`.
    pub fn from_coframe(coframe: Vec<Vec<Gaussian<R>>>) -> Result<Self> {
        let n = coframe.len();
        let m = 2 * n;
        if n == 0 {
            return Err(Error::DimensionOutOfRange(0));
        }
        if let Some(v) = coframe.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        let p = frame_matrix(&coframe);
        let pinv = p.inverse().ok_or(Error::DegenerateSpan)?;
        let i = Gaussian::<R>::i();
        let diag = Matrix::from_fn(m, m, |a, b| {
            if a != b {
                Gaussian::zero()
            } else if a < n {
                i.clone()
            } else {
                -i.clone()
            }
        });
        let jc = pinv.mul(&diag).mul(&p);
        if (0..m).any(|a| (0..m).any(|b| !jc.get(a, b).im.is_zero())) {
            return Err(Error::NotReal);
        }
        Ok(AlmostComplexStructure {
            j: jc.map(|z| z.re.clone()),
            coframe,
        })
    }

    /// `J e_(2k-1) = e_(2k)`, coframe `e^1 + i e^2, e^3 + i e^4, ...`.
    pub fn standard(m: usize) -> Result<Self> {
        if m % 2 == 1 {
            return Err(Error::OddDimension(m));
        }
        let j = Matrix::from_fn(m, m, |a, b| {
            if b % 2 == 0 && a == b + 1 {
                R::one()
            } else if b % 2 == 1 && a + 1 == b {
                -R::one()
            } else {
                R::zero()
            }
        });
        Self::from_matrix(j)
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn n(&self) -> usize {
        self.j.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.j
    }

    pub fn coframe(&self) -> &[Vec<Gaussian<R>>] {
        &self.coframe
    }

    pub fn coframe_forms(&self) -> Vec<Form<Gaussian<R>>> {
        self.coframe.iter().map(|v| Form::from_linear(v)).collect()
    }

    /// `λ∘J` for a real 1-form.
    pub fn j_star(&self, x: &[R]) -> Vec<R> {
        self.j.vec_mul(x)
    }

    /// `x - i J*x`, the `(1,0)`-form with real part `x`.
    pub fn project_10(&self, x: &[R]) -> Vec<Gaussian<R>> {
        project_10(&self.j, x)
    }

    pub fn is_type_10(&self, v: &[Gaussian<R>]) -> bool {
        let jc = self.j.map(|x| Gaussian::from_real(x.clone()));
        let lhs = jc.vec_mul(v);
        lhs.iter()
            .zip(v)
            .all(|(a, b)| *a == Gaussian::i() * b.clone())
    }

    /// `-J`, whose `(1,0)`-forms are the conjugates.
    pub fn negate(&self) -> Self {
        AlmostComplexStructure {
            j: self.j.scale(&-R::one()),
            coframe: self
                .coframe
                .iter()
                .map(|v| v.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }

    /// The same `J` with another basis of `Λ^{1,0}`.
    pub fn with_coframe(&self, coframe: Vec<Vec<Gaussian<R>>>) -> Result<Self> {
        let other = Self::from_coframe(coframe)?;
        if other.j != self.j {
            return Err(Error::Precondition(
                "coframe does not span the (1,0)-forms of J".into(),
            ));
        }
        Ok(other)
    }

    pub fn frame(&self) -> Frame<R> {
        Frame::new(&self.coframe)
    }
}

impl AlmostComplexStructure<Rational> {
    pub fn to_surd(&self) -> AlmostComplexStructure<Surd> {
        AlmostComplexStructure {
            j: self.j.map(|x| Surd::from_rational_value(x.clone())),
            coframe: self
                .coframe
                .iter()
                .map(|v| v.iter().map(crate::scalar::gaussian_to_surd).collect())
                .collect(),
        }
    }
}

impl AlmostComplexStructure<Surd> {
    /// Drops to rational arithmetic when no irrational entry occurs.
    pub fn to_rational(&self) -> Option<AlmostComplexStructure<Rational>> {
        let j: Option<Vec<Vec<Rational>>> = self
            .j
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_rational().then(|| x.rational_part().clone()))
                    .collect()
            })
            .collect();
        let coframe: Option<Vec<Vec<Gaussian<Rational>>>> = self
            .coframe
            .iter()
            .map(|v| v.iter().map(crate::scalar::surd_to_gaussian).collect())
            .collect();
        Some(AlmostComplexStructure {
            j: Matrix::from_rows(j?),
            coframe: coframe?,
        })
    }
}

fn project_10<R: Scalar>(j: &Matrix<R>, x: &[R]) -> Vec<Gaussian<R>> {
    let jx = j.vec_mul(x);
    x.iter()
        .zip(jx)
        .map(|(a, b)| Gaussian::new(a.clone(), -b))
        .collect()
}

/// Rows `ω^1..ω^n, ω̄^1..ω̄^n`.
fn frame_matrix<R: Scalar>(coframe: &[Vec<Gaussian<R>>]) -> Matrix<Gaussian<R>> {
    let mut rows = coframe.to_vec();
    rows.extend(
        coframe
            .iter()
            .map(|v| v.iter().map(|z| z.conj()).collect::<Vec<_>>()),
    );
    Matrix::from_rows(rows)
}

/// Coordinates relative to `θ^1..θ^2n = ω^1..ω^n, ω̄^1..ω̄^n`.
///
/// Indices `1..=n` are holomorphic, `n+1..=2n` antiholomorphic.
#[derive(Clone, Debug)]
pub struct Frame<R: Scalar> {
    pub n: usize,
    to_frame: Matrix<Gaussian<R>>,
    from_frame: Matrix<Gaussian<R>>,
}

impl<R: Scalar> Frame<R> {
    pub fn new(coframe: &[Vec<Gaussian<R>>]) -> Self {
        let p = frame_matrix(coframe);
        let pinv = p.inverse().expect("coframe spans a complement of its conjugate");
        Frame {
            n: coframe.len(),
            to_frame: pinv.transpose(),
            from_frame: p.transpose(),
        }
    }

    pub fn to_frame(&self, f: &Form<Gaussian<R>>) -> Form<Gaussian<R>> {
        f.pullback(&self.to_frame).expect("dimension")
    }

    pub fn from_frame(&self, f: &Form<Gaussian<R>>) -> Form<Gaussian<R>> {
        f.pullback(&self.from_frame).expect("dimension")
    }

    /// `dθ^a` in frame coordinates.
    pub fn differential_images(&self, spec: &LieAlgebraSpec) -> Vec<Form<Gaussian<R>>> {
        let m = 2 * self.n;
        (1..=m)
            .map(|a| {
                let theta = Form::generator(m, a);
                self.to_frame(&spec.differential_in(&self.from_frame(&theta)))
            })
            .collect()
    }

    /// `d` expressed in frame coordinates.
    pub fn differential(&self, images: &[Form<Gaussian<R>>], f: &Form<Gaussian<R>>) -> Form<Gaussian<R>> {
        antiderivation(images, f)
    }

    pub fn bidegree(&self, m: Monomial) -> (usize, usize) {
        let p = m.indices().filter(|&i| i <= self.n).count();
        (p, m.degree() - p)
    }

    pub fn component(&self, f: &Form<Gaussian<R>>, p: usize, q: usize) -> Form<Gaussian<R>> {
        f.filter(|m| self.bidegree(m) == (p, q))
    }

    /// Complex conjugation of a form given in frame coordinates.
    pub fn conjugate(&self, f: &Form<Gaussian<R>>) -> Form<Gaussian<R>> {
        let n = self.n;
        let mut out = Form::zero(f.dim());
        for (m, c) in f.terms() {
            let swapped: Vec<usize> = m
                .indices()
                .map(|i| if i <= n { i + n } else { i - n })
                .collect();
            let (neg, mon) = Monomial::from_unsorted(&swapped).expect("distinct");
            let c = c.conj();
            out.add_term(mon, if neg { -c } else { c });
        }
        out
    }

    /// Monomials of bidegree `(p,q)` in canonical order.
    pub fn basis(&self, p: usize, q: usize) -> Vec<Monomial> {
        Monomial::all(2 * self.n, p + q)
            .into_iter()
            .filter(|&m| self.bidegree(m) == (p, q))
            .collect()
    }
}

/// Decomposition of a complex form into `(p,q)`-components, each given in the
/// original coordinates.
pub fn type_components<R: Scalar>(
    f: &Form<Gaussian<R>>,
    j: &AlmostComplexStructure<R>,
) -> Result<BTreeMap<(usize, usize), Form<Gaussian<R>>>> {
    if f.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: f.dim(),
        });
    }
    let frame = j.frame();
    let g = frame.to_frame(f);
    let mut parts: BTreeMap<(usize, usize), Form<Gaussian<R>>> = BTreeMap::new();
    for (m, c) in g.terms() {
        parts
            .entry(frame.bidegree(m))
            .or_insert_with(|| Form::zero(f.dim()))
            .add_term(m, c.clone());
    }
    Ok(parts
        .into_iter()
        .map(|(k, v)| (k, frame.from_frame(&v)))
        .collect())
}

fn check_dims<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<()> {
    spec.require_lie()?;
    if spec.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: j.dim(),
        });
    }
    Ok(())
}

/// `(p,q)`-parts of `dω^a` for every coframe element, in frame coordinates.
fn coframe_differentials<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
) -> (Frame<R>, Vec<Form<Gaussian<R>>>) {
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let ds = images[..frame.n].to_vec();
    (frame, ds)
}

/// Whether every `dω^a` has zero `(0,2)`-component.
pub fn zero_two_vanishes<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<bool> {
    check_dims(spec, j)?;
    let (frame, ds) = coframe_differentials(spec, j);
    Ok(ds.iter().all(|d| frame.component(d, 0, 2).is_zero()))
}

/// Whether `[JX,JY] = [X,Y] + J[JX,Y] + J[X,JY]` on all basis pairs.
pub fn nijenhuis_vanishes<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<bool> {
    check_dims(spec, j)?;
    let m = spec.dim();
    let brackets: Vec<Vec<Vec<R>>> = (1..=m)
        .map(|a| {
            (1..=m)
                .map(|b| {
                    spec.dual_bracket(a, b)
                        .expect("indices in range")
                        .iter()
                        .map(R::from_rational)
                        .collect()
                })
                .collect()
        })
        .collect();
    let bracket = |x: &[R], y: &[R]| -> Vec<R> {
        let mut out = vec![R::zero(); m];
        for a in 0..m {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..m {
                if y[b].is_zero() || a == b {
                    continue;
                }
                let c = x[a].clone() * y[b].clone();
                for (o, v) in out.iter_mut().zip(&brackets[a][b]) {
                    *o = o.clone() + c.clone() * v.clone();
                }
            }
        }
        out
    };
    let jm = j.matrix();
    for a in 0..m {
        for b in a + 1..m {
            let mut x = vec![R::zero(); m];
            x[a] = R::one();
            let mut y = vec![R::zero(); m];
            y[b] = R::one();
            let jx = jm.mul_vec(&x);
            let jy = jm.mul_vec(&y);
            let lhs = bracket(&jx, &jy);
            let t1 = bracket(&x, &y);
            let t2 = jm.mul_vec(&bracket(&jx, &y));
            let t3 = jm.mul_vec(&bracket(&x, &jy));
            let ok = (0..m).all(|k| {
                (lhs[k].clone() - t1[k].clone() - t2[k].clone() - t3[k].clone()).is_zero()
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Integrability, decided by both the Nijenhuis tensor and the `(0,2)`-parts
/// of `dω^a`; disagreement is reported as an error.
pub fn is_integrable<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<bool> {
    let by_tensor = nijenhuis_vanishes(spec, j)?;
    let by_types = zero_two_vanishes(spec, j)?;
    if by_tensor != by_types {
        return Err(Error::Inconsistent(format!(
            "Nijenhuis tensor says {by_tensor}, (0,2)-components say {by_types}"
        )));
    }
    Ok(by_tensor)
}

pub fn require_integrable<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<()> {
    if is_integrable(spec, j)? {
        Ok(())
    } else {
        Err(Error::NotIntegrable)
    }
}

/// `d(Λ^{1,0}) ⊆ Λ^{1,1}`.
pub fn is_abelian_structure<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<bool> {
    check_dims(spec, j)?;
    let (frame, ds) = coframe_differentials(spec, j);
    Ok(ds.iter().all(|d| d.terms().all(|(m, _)| frame.bidegree(m) == (1, 1))))
}

/// `d(Λ^{1,0}) ⊆ Λ^{2,0}`.
pub fn is_complex_lie_structure<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
) -> Result<bool> {
    check_dims(spec, j)?;
    let (frame, ds) = coframe_differentials(spec, j);
    Ok(ds.iter().all(|d| d.terms().all(|(m, _)| frame.bidegree(m) == (2, 0))))
}
