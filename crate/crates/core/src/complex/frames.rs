use num_traits::Zero;
use serde::Serialize;

use super::acs::{require_integrable, AlmostComplexStructure};
use crate::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{Form, Monomial};
use crate::linalg::{intersect, row_basis, span_contains, span_rank, Matrix};
use crate::scalar::{ComplexScalar, Gaussian, Scalar};

type C<R> = Gaussian<R>;

/// A basis `ω^1..ω^n` of `Λ^{1,0}` with `dω^(i+1) ∈ I(ω^1..ω^i)`, or, in
/// abelian mode, `dω^(i+1) ∈ Λ²⟨ω^1..ω^i, ω̄^1..ω̄^i⟩`.
///
/// Each step takes the first reduced echelon vector (in coordinates relative
/// to the input coframe) that enlarges the span, so an already filtered
/// coframe is returned unchanged up to echelon normalisation.
pub fn filtered_coframe<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
    abelian_mode: bool,
) -> Result<Vec<Vec<C<R>>>> {
    require_integrable(spec, j)?;
    if !spec.is_nilpotent()? {
        return Err(Error::NotNilpotent);
    }
    if abelian_mode && !super::acs::is_abelian_structure(spec, j)? {
        return Err(Error::NotAbelian);
    }
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let n = frame.n;
    let m = 2 * n;
    let pairs = Monomial::all(m, 2);
    let as_form = |w: &[C<R>]| {
        let mut f = Form::zero(m);
        for (a, c) in w.iter().enumerate() {
            f.add_term(Monomial::generator(a + 1), c.clone());
        }
        f
    };
    let mut chosen: Vec<Vec<C<R>>> = Vec::new();
    while chosen.len() < n {
        let ws: Vec<Form<C<R>>> = chosen.iter().map(|w| as_form(w)).collect();
        let mut target: Vec<Vec<C<R>>> = Vec::new();
        if abelian_mode {
            let mut both = ws.clone();
            both.extend(ws.iter().map(|w| frame.conjugate(w)));
            for a in 0..both.len() {
                for b in a + 1..both.len() {
                    target.push(both[a].wedge(&both[b]).to_vector(&pairs));
                }
            }
        } else {
            for w in &ws {
                for b in 1..=m {
                    target.push(w.wedge(&Form::generator(m, b)).to_vector(&pairs));
                }
            }
        }
        let mut cols: Vec<Vec<C<R>>> = images[..n].iter().map(|d| d.to_vector(&pairs)).collect();
        cols.extend(target);
        let kernel: Vec<Vec<C<R>>> = Matrix::from_columns(&cols)
            .kernel()
            .into_iter()
            .map(|k| k[..n].to_vec())
            .collect();
        let candidates = row_basis(&kernel, n);
        let next = candidates.into_iter().find(|v| {
            let mut trial = chosen.clone();
            trial.push(v.clone());
            span_rank(&trial) == trial.len()
        });
        match next {
            Some(v) => chosen.push(v),
            None => {
                return Err(Error::Inconsistent(format!(
                    "no filtered extension after {} coframe elements",
                    chosen.len()
                )))
            }
        }
    }
    let base = j.coframe();
    Ok(chosen
        .iter()
        .map(|c| {
            (0..m)
                .map(|k| {
                    c.iter()
                        .zip(base)
                        .fold(C::<R>::zero(), |acc, (x, w)| acc + x.clone() * w[k].clone())
                })
                .collect()
        })
        .collect())
}

/// `dim (V_i)_C ∩ Λ^{1,0}` along the ascending filtration `V_0 ⊆ V_1 ⊆ ...`.
pub fn v10_dims<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<Vec<usize>> {
    if spec.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: j.dim(),
        });
    }
    let filtration = spec.filtration()?;
    let m = spec.dim();
    Ok(filtration
        .subspaces
        .iter()
        .map(|v| {
            let vc: Vec<Vec<C<R>>> = v
                .iter()
                .map(|x| x.iter().map(|r| C::<R>::from_real(R::from_rational(r))).collect())
                .collect();
            intersect(&vc, j.coframe(), m).len()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameCase {
    /// `ω² = e^3 + i e^4`, `ω³ = e^5 + i e^6`.
    I,
    /// `ω² = e^4 + i e^5`, `ω³ = e^3 + i e^6`.
    II,
}

/// A real basis adapted to a complex structure on a six-dimensional
/// nilpotent Lie algebra.
#[derive(Clone, Debug)]
pub struct CanonicalFrame<R: Scalar> {
    pub case: FrameCase,
    /// Column `i` holds the coordinates of the new `e^(i+1)`.
    pub basis: Matrix<R>,
    /// `ω^1, ω^2, ω^3` in the original coordinates.
    pub coframe: Vec<Vec<C<R>>>,
    /// The structure equations in the new basis.
    pub differentials: Vec<Form<R>>,
}

/// Monomials allowed in `de^3 .. de^6` of an adapted basis.
fn allowed(k: usize) -> &'static [[usize; 2]] {
    match k {
        3 => &[[1, 2]],
        4 => &[[1, 2], [1, 3], [2, 3]],
        5 => &[[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]],
        _ => &[[1, 2], [1, 3], [1, 4], [1, 5], [2, 3], [2, 4], [2, 5], [3, 4]],
    }
}

struct Search<'a, R: Scalar> {
    spec: &'a LieAlgebraSpec,
    j: &'a AlmostComplexStructure<R>,
    pairs: Vec<Monomial>,
}

impl<R: Scalar> Search<'_, R> {
    fn d(&self, x: &[R]) -> Form<R> {
        self.spec.differential_in(&Form::from_linear(x))
    }

    fn minus_j(&self, x: &[R]) -> Vec<R> {
        self.j.j_star(x).into_iter().map(|v| -v).collect()
    }

    fn wedges(&self, es: &[Vec<R>], which: &[[usize; 2]]) -> Vec<Vec<R>> {
        which
            .iter()
            .map(|[a, b]| {
                Form::from_linear(&es[a - 1])
                    .wedge(&Form::from_linear(&es[b - 1]))
                    .to_vector(&self.pairs)
            })
            .collect()
    }

    fn d_in(&self, x: &[R], es: &[Vec<R>], which: &[[usize; 2]]) -> bool {
        span_contains(&row_basis(&self.wedges(es, which), self.pairs.len()), &self.d(x).to_vector(&self.pairs))
    }

    /// `{x : dx ∈ span(wedges)}`, reduced modulo the span of `es`.
    fn admissible(&self, es: &[Vec<R>], which: &[[usize; 2]]) -> Vec<Vec<R>> {
        let m = self.spec.dim();
        let mut cols: Vec<Vec<R>> = (1..=m).map(|i| self.spec.de(i).map(R::from_rational).to_vector(&self.pairs)).collect();
        cols.extend(self.wedges(es, which));
        let kernel: Vec<Vec<R>> = Matrix::from_columns(&cols)
            .kernel()
            .into_iter()
            .map(|k| k[..m].to_vec())
            .collect();
        let mut span = es.to_vec();
        let mut out = Vec::new();
        for v in row_basis(&kernel, m) {
            let mut trial = span.clone();
            trial.push(v.clone());
            if span_rank(&trial) == trial.len() {
                span = trial;
                out.push(v);
            }
        }
        out
    }
}

/// Small integer combinations of `basis`, sparsest first.
fn combinations<R: Scalar>(basis: &[Vec<R>], coefficients: &[i64]) -> Vec<Vec<R>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                coefficients.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    tuples.retain(|t| t.iter().any(|&c| c != 0));
    tuples.sort_by_key(|t| (t.iter().filter(|&&c| c != 0).count(), t.iter().map(|c| c.abs()).sum::<i64>()));
    tuples
        .into_iter()
        .map(|t| {
            let len = basis[0].len();
            (0..len)
                .map(|x| {
                    t.iter()
                        .zip(basis)
                        .fold(R::zero(), |acc, (&c, b)| acc + R::from_i64(c) * b[x].clone())
                })
                .collect()
        })
        .collect()
}

fn independent<R: Scalar>(vs: &[Vec<R>]) -> bool {
    span_rank(vs) == vs.len()
}

/// An adapted real basis of case I or II for an integrable `J` on a
/// six-dimensional nilpotent Lie algebra, found by a bounded search over
/// small integer combinations and verified exactly. Case I is tried first.
pub fn canonical_frame_6d<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
) -> Result<CanonicalFrame<R>> {
    if spec.dim() != 6 || j.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: spec.dim(),
        });
    }
    require_integrable(spec, j)?;
    let filtration = spec.filtration()?;
    if !filtration.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let search = Search {
        spec,
        j,
        pairs: Monomial::all(6, 2),
    };
    let v1: Vec<Vec<C<R>>> = filtration.subspaces[1]
        .iter()
        .map(|x| x.iter().map(|r| C::<R>::from_real(R::from_rational(r))).collect())
        .collect();
    let v1_10 = intersect(&v1, j.coframe(), 6);
    let mut firsts: Vec<Vec<C<R>>> = v1_10.clone();
    for a in 0..v1_10.len() {
        for b in a + 1..v1_10.len() {
            firsts.push(v1_10[a].iter().zip(&v1_10[b]).map(|(x, y)| x.clone() + y.clone()).collect());
        }
    }
    for case in [FrameCase::I, FrameCase::II] {
        for coefficients in [&[0, 1, -1][..], &[0, 1, -1, 2, -2][..]] {
            for w in &firsts {
                let e1: Vec<R> = w.iter().map(|z| z.re.clone()).collect();
                let e2: Vec<R> = w.iter().map(|z| z.im.clone()).collect();
                let found = match case {
                    FrameCase::I => search_case_one(&search, e1, e2, coefficients),
                    FrameCase::II => search_case_two(&search, e1, e2, coefficients),
                };
                if let Some(es) = found {
                    if let Some(frame) = verify(spec, j, case, &es) {
                        return Ok(frame);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(
        "no adapted basis among small integer combinations".into(),
    ))
}

fn search_case_one<R: Scalar>(s: &Search<R>, e1: Vec<R>, e2: Vec<R>, coefficients: &[i64]) -> Option<Vec<Vec<R>>> {
    let base = vec![e1, e2];
    for e3 in combinations(&s.admissible(&base, allowed(3)), coefficients) {
        let e4 = s.minus_j(&e3);
        let es = vec![base[0].clone(), base[1].clone(), e3.clone(), e4.clone()];
        if !independent(&es) || !s.d_in(&e4, &es, allowed(4)) {
            continue;
        }
        for e5 in combinations(&s.admissible(&es, allowed(5)), coefficients) {
            let e6 = s.minus_j(&e5);
            let mut full = es.clone();
            full.push(e5);
            full.push(e6.clone());
            if independent(&full) && s.d_in(&e6, &full, allowed(6)) && one_d_two(s, &full, FrameCase::I) {
                return Some(full);
            }
        }
    }
    None
}

fn search_case_two<R: Scalar>(s: &Search<R>, e1: Vec<R>, e2: Vec<R>, coefficients: &[i64]) -> Option<Vec<Vec<R>>> {
    let base = vec![e1, e2];
    for e3 in combinations(&s.admissible(&base, allowed(3)), coefficients) {
        let e6 = s.minus_j(&e3);
        let three = vec![base[0].clone(), base[1].clone(), e3.clone()];
        if !independent(&[three.clone(), vec![e6.clone()]].concat()) {
            continue;
        }
        let mut directions = s.admissible(&three, allowed(4));
        directions.push(e3.clone());
        for e4 in combinations(&directions, coefficients) {
            let e5 = s.minus_j(&e4);
            let full = vec![
                base[0].clone(),
                base[1].clone(),
                e3.clone(),
                e4.clone(),
                e5.clone(),
                e6.clone(),
            ];
            if independent(&full)
                && s.d_in(&e5, &full, allowed(5))
                && s.d_in(&e6, &full, allowed(6))
                && one_d_two(s, &full, FrameCase::II)
            {
                return Some(full);
            }
        }
    }
    None
}

fn coframe_of<R: Scalar>(es: &[Vec<R>], case: FrameCase) -> Vec<Vec<C<R>>> {
    let pairs = match case {
        FrameCase::I => [(0, 1), (2, 3), (4, 5)],
        FrameCase::II => [(0, 1), (3, 4), (2, 5)],
    };
    pairs
        .iter()
        .map(|&(a, b)| {
            es[a]
                .iter()
                .zip(&es[b])
                .map(|(x, y)| Gaussian::new(x.clone(), y.clone()))
                .collect()
        })
        .collect()
}

/// `dω¹ = 0`, `ω¹∧dω² = 0`, `ω¹∧ω²∧dω³ = 0`.
fn one_d_two<R: Scalar>(s: &Search<R>, es: &[Vec<R>], case: FrameCase) -> bool {
    let w: Vec<Form<C<R>>> = coframe_of(es, case).iter().map(|v| Form::from_linear(v)).collect();
    let d = |f: &Form<C<R>>| s.spec.differential_in(f);
    d(&w[0]).is_zero() && w[0].wedge(&d(&w[1])).is_zero() && w[0].wedge(&w[1]).wedge(&d(&w[2])).is_zero()
}

fn verify<R: Scalar>(
    spec: &LieAlgebraSpec,
    j: &AlmostComplexStructure<R>,
    case: FrameCase,
    es: &[Vec<R>],
) -> Option<CanonicalFrame<R>> {
    let basis = Matrix::from_columns(es);
    let inverse = basis.inverse()?;
    let differentials: Vec<Form<R>> = es
        .iter()
        .map(|e| spec.differential_in(&Form::from_linear(e)).pullback(&inverse).expect("dimension"))
        .collect();
    let shape_ok = differentials[..2].iter().all(|f| f.is_zero())
        && (3..=6).all(|k| {
            let ok: Vec<Monomial> = allowed(k)
                .iter()
                .map(|p| Monomial::new(p).expect("valid"))
                .collect();
            differentials[k - 1].terms().all(|(m, _)| ok.contains(&m))
        });
    let coframe = coframe_of(es, case);
    let spans = coframe.iter().all(|w| j.is_type_10(w));
    (shape_ok && spans).then(|| CanonicalFrame {
        case,
        basis,
        coframe,
        differentials,
    })
}
