//! Two-forms on a four-dimensional space: the wedge pairing, self-dual
//! subspaces and normal forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{parse_form, Form, Monomial};
use crate::linalg::{inertia, span_equal, Matrix};
use crate::scalar::{int, Rational, Scalar, Surd};

fn volume_monomial() -> Monomial {
    Monomial::new(&[1, 2, 3, 4]).unwrap()
}

/// The standard volume element `e^1234`.
pub fn standard_volume<S: Scalar>() -> Form<S> {
    Form::monomial(4, volume_monomial(), S::one())
}

/// `φ(a,b)` defined by `a ∧ b = φ(a,b) υ`.
pub fn pairing<S: Scalar>(a: &Form<S>, b: &Form<S>, volume: &Form<S>) -> Result<S> {
    for f in [a, b, volume] {
        if f.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: f.dim(),
            });
        }
    }
    for f in [a, b] {
        if let Some(k) = f.degrees().into_iter().find(|&k| k != 2) {
            return Err(Error::WrongDegree {
                expected: 2,
                found: k,
            });
        }
    }
    let v = volume.coeff(volume_monomial());
    let inv = v.recip().ok_or(Error::ZeroVolume)?;
    Ok(a.wedge(b).coeff(volume_monomial()) * inv)
}

/// Matrix of `φ` on `Λ²` in the canonical basis `e12, e13, e14, e23, e24, e34`.
pub fn pairing_matrix(volume: &Form<Rational>) -> Result<Matrix<Rational>> {
    let basis: Vec<Form<Rational>> = Monomial::all(4, 2)
        .into_iter()
        .map(|m| Form::monomial(4, m, int(1)))
        .collect();
    let mut out = Matrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            out.set(i, j, pairing(&basis[i], &basis[j], volume)?);
        }
    }
    Ok(out)
}

/// `(positive, negative, zero)` counts of `φ`.
pub fn pairing_signature(volume: &Form<Rational>) -> Result<(usize, usize, usize)> {
    Ok(inertia(&pairing_matrix(volume)?))
}

/// Gram matrix of `φ` on a list of 2-forms.
pub fn gram<S: Scalar>(forms: &[Form<S>], volume: &Form<S>) -> Result<Matrix<S>> {
    let n = forms.len();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, pairing(&forms[i], &forms[j], volume)?);
        }
    }
    Ok(out)
}

/// The spanning forms `e12+e34, e13+e42, a e14 + b e42 + c e23` of `Λ(a,b,c)`.
pub fn lambda_basis<S: Scalar>(a: &S, b: &S, c: &S) -> Vec<Form<S>> {
    let m = |idx: &[usize]| Monomial::new(idx).unwrap();
    vec![
        Form::from_terms(4, [(m(&[1, 2]), S::one()), (m(&[3, 4]), S::one())]),
        Form::from_terms(4, [(m(&[1, 3]), S::one()), (m(&[2, 4]), -S::one())]),
        Form::from_terms(
            4,
            [
                (m(&[1, 4]), a.clone()),
                (m(&[2, 4]), -b.clone()),
                (m(&[2, 3]), c.clone()),
            ],
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaGram {
    #[serde(serialize_with = "serialize_rational_matrix")]
    pub gram: Matrix<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub discriminant: Rational,
    pub positive_definite: bool,
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn serialize_rational_matrix<S: serde::Serializer>(
    m: &Matrix<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    serde::Serialize::serialize(&rows, s)
}

/// Gram matrix of `φ` on `Λ(a,b,c)`, the discriminant `b² - 4ac` and whether
/// `φ` is positive definite there.
pub fn gram_and_discriminant(a: &Rational, b: &Rational, c: &Rational) -> Result<LambdaGram> {
    if a.is_zero() {
        return Err(Error::ZeroLeading);
    }
    let gram = gram(&lambda_basis(a, b, c), &standard_volume())?;
    let discriminant = b * b - int(4) * a * c;
    Ok(LambdaGram {
        gram,
        positive_definite: discriminant.is_negative(),
        discriminant,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaCase {
    Minus,
    Zero,
    Plus,
}

/// The reference triple whose image is `Λ(a,b,c)` in each case.
pub fn reference_triple(case: LambdaCase) -> Vec<Form<Rational>> {
    let texts: [&str; 3] = match case {
        LambdaCase::Minus => ["e12 + e34", "e13 + e42", "e14 + e23"],
        LambdaCase::Zero => ["e12 + e34", "e13", "e14 + e23"],
        LambdaCase::Plus => ["e12 + e34", "e13", "e24"],
    };
    texts.iter().map(|t| parse_form(4, t).unwrap()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaNormalForm {
    pub case: LambdaCase,
    /// Column `i` holds the coefficients of `f^i = θ(e^i)`.
    pub theta: Matrix<Surd>,
}

fn s(r: Rational) -> Surd {
    Surd::from_rational_value(r)
}

/// Builds `θ` from rows `f^i = sum_j coeffs[i][j] e^j`.
fn theta_from_coframe(coeffs: [[Surd; 4]; 4]) -> Matrix<Surd> {
    Matrix::from_fn(4, 4, |j, i| coeffs[i][j].clone())
}

/// A transformation `θ` carrying the reference triple of the appropriate case
/// onto a basis of `Λ(a,b,c)`; the span equality is verified exactly.
pub fn normalize_lambda(a: &Rational, b: &Rational, c: &Rational) -> Result<LambdaNormalForm> {
    if a.is_zero() {
        return Err(Error::ZeroLeading);
    }
    let delta = b * b - int(4) * a * c;
    let zero = Surd::zero();
    let one = Surd::one();
    let (case, theta) = if delta.is_negative() {
        // a x² + b x + c = ((a x + b/2)² + (-Δ/4)) / a: take A = a, B = -b/2,
        // C = 0, D = √(-Δ)/2, so AD - BC is a nonzero multiple of 1.
        let big_a = s(a.clone());
        let big_b = s(-b / int(2));
        let big_c = zero.clone();
        let big_d = Surd::sqrt(&(-&delta)).expect("positive") * s(Rational::new(BigInt::one(), BigInt::from(2)));
        let theta = theta_from_coframe([
            [big_a.clone(), big_b.clone(), zero.clone(), zero.clone()],
            [big_c.clone(), big_d.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), big_d, big_c],
            [zero.clone(), zero.clone(), big_b, big_a],
        ]);
        (LambdaCase::Minus, theta)
    } else if delta.is_zero() {
        let sv = s(-b / (int(2) * a));
        let theta = theta_from_coframe([
            [one.clone(), sv.clone(), zero.clone(), zero.clone()],
            [sv.clone(), -one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), sv.clone(), one.clone()],
            [zero.clone(), zero.clone(), one.clone(), -sv],
        ]);
        (LambdaCase::Zero, theta)
    } else {
        let (sv, tv) = if c.is_zero() {
            (zero.clone(), s(-b / a))
        } else {
            let root = Surd::sqrt(&delta).expect("positive");
            let two_a_inv = s(Rational::one() / (int(2) * a));
            let minus_b = s(-b.clone());
            (
                (minus_b.clone() - root.clone()) * two_a_inv.clone(),
                (minus_b + root) * two_a_inv,
            )
        };
        let t_inv = tv.recip().expect("nonzero root");
        let theta = theta_from_coframe([
            [one.clone(), sv, zero.clone(), zero.clone()],
            [one.clone(), tv.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone(), t_inv],
            [zero.clone(), zero.clone(), s(c / a), tv],
        ]);
        (LambdaCase::Plus, theta)
    };
    let result = LambdaNormalForm { case, theta };
    if !verify_lambda(&result, a, b, c)? {
        return Err(Error::Inconsistent(format!(
            "normal form for ({a},{b},{c}) does not span Λ"
        )));
    }
    Ok(result)
}

/// Whether `θ` maps the case's reference triple onto `Λ(a,b,c)`.
pub fn verify_lambda(n: &LambdaNormalForm, a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
    let basis = Monomial::all(4, 2);
    let image: Vec<Vec<Surd>> = reference_triple(n.case)
        .iter()
        .map(|f| Ok(f.map(|x| s(x.clone())).pullback(&n.theta)?.to_vector(&basis)))
        .collect::<Result<_>>()?;
    let target: Vec<Vec<Surd>> = lambda_basis(&s(a.clone()), &s(b.clone()), &s(c.clone()))
        .iter()
        .map(|f| f.to_vector(&basis))
        .collect();
    Ok(span_equal(&image, &target))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairCase {
    SharedLine,
    Disjoint,
}

/// The plane `{λ : λ ∧ σ = 0}` of a simple nonzero 2-form.
fn divisor_plane(sigma: &Form<Rational>) -> Vec<Vec<Rational>> {
    let cubes = Monomial::all(4, 3);
    let cols: Vec<Vec<Rational>> = (1..=4)
        .map(|i| Form::generator(4, i).wedge(sigma).to_vector(&cubes))
        .collect();
    Matrix::from_columns(&cols).kernel()
}

/// Coefficient `k` with `σ = k u∧v`, for `u∧v` a nonzero multiple of `σ`.
fn ratio(sigma: &Form<Rational>, uv: &Form<Rational>) -> Rational {
    let (m, x) = uv.terms().next().expect("nonzero");
    sigma.coeff(m) / x.clone()
}

/// A basis change `T` with `σ ↦ e12` and `τ ↦ e13` (when `σ∧τ = 0`) or
/// `τ ↦ e34` (otherwise) under pullback by `T`.
pub fn simple_pair_normal_form(
    sigma: &Form<Rational>,
    tau: &Form<Rational>,
) -> Result<(Matrix<Rational>, PairCase)> {
    for f in [sigma, tau] {
        if f.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: f.dim(),
            });
        }
        if let Some(k) = f.degrees().into_iter().find(|&k| k != 2) {
            return Err(Error::WrongDegree {
                expected: 2,
                found: k,
            });
        }
        if !f.wedge(f).is_zero() {
            return Err(Error::NotSimple);
        }
    }
    let basis = Monomial::all(4, 2);
    if sigma.is_zero()
        || tau.is_zero()
        || crate::linalg::span_rank(&[sigma.to_vector(&basis), tau.to_vector(&basis)]) < 2
    {
        return Err(Error::Dependent);
    }
    let ps = divisor_plane(sigma);
    let pt = divisor_plane(tau);
    let lin = |v: &Vec<Rational>| Form::from_linear(v);
    let (frame, case) = if sigma.wedge(tau).is_zero() {
        let line = crate::linalg::intersect(&ps, &pt, 4);
        let u = line[0].clone();
        let pick = |plane: &[Vec<Rational>]| {
            plane
                .iter()
                .find(|v| crate::linalg::span_rank(&[u.clone(), (*v).clone()]) == 2)
                .cloned()
                .expect("plane is two-dimensional")
        };
        let v = pick(&ps);
        let w = pick(&pt);
        let kv = ratio(sigma, &lin(&u).wedge(&lin(&v)));
        let kw = ratio(tau, &lin(&u).wedge(&lin(&w)));
        let v: Vec<Rational> = v.iter().map(|x| x * &kv).collect();
        let w: Vec<Rational> = w.iter().map(|x| x * &kw).collect();
        let mut frame = vec![u, v, w];
        let fourth = (0..4)
            .map(|i| {
                let mut e = vec![int(0); 4];
                e[i] = int(1);
                e
            })
            .find(|e| {
                let mut all = frame.clone();
                all.push(e.clone());
                crate::linalg::span_rank(&all) == 4
            })
            .expect("completion exists");
        frame.push(fourth);
        (frame, PairCase::SharedLine)
    } else {
        let k1 = ratio(sigma, &lin(&ps[0]).wedge(&lin(&ps[1])));
        let k2 = ratio(tau, &lin(&pt[0]).wedge(&lin(&pt[1])));
        let v: Vec<Rational> = ps[1].iter().map(|x| x * &k1).collect();
        let x: Vec<Rational> = pt[1].iter().map(|y| y * &k2).collect();
        (vec![ps[0].clone(), v, pt[0].clone(), x], PairCase::Disjoint)
    };
    let f = Matrix::from_columns(&frame);
    let t = f.inverse().ok_or(Error::Singular)?;
    Ok((t, case))
}

/// `⟨e12+e34, e13+e42, e14+e23⟩` written in the coframe whose `i`-th element
/// is column `i` of `basis`.
pub fn selfdual_space(basis: &Matrix<Rational>) -> Result<Vec<Form<Rational>>> {
    reference_triple(LambdaCase::Minus)
        .iter()
        .map(|f| f.pullback(basis))
        .collect()
}

/// The `φ`-annihilator of a set of 2-forms.
pub fn annihilator(forms: &[Form<Rational>], volume: &Form<Rational>) -> Result<Vec<Form<Rational>>> {
    let basis: Vec<Form<Rational>> = Monomial::all(4, 2)
        .into_iter()
        .map(|m| Form::monomial(4, m, int(1)))
        .collect();
    let rows: Vec<Vec<Rational>> = forms
        .iter()
        .map(|f| basis.iter().map(|b| pairing(f, b, volume)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let monomials = Monomial::all(4, 2);
    Ok(Matrix::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| Form::from_vector(4, &monomials, &v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn f(t: &str) -> Form<Rational> {
        parse_form(4, t).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let v = standard_volume();
        assert_eq!(pairing(&f("e12+e34"), &f("e12+e34"), &v).unwrap(), int(2));
        assert_eq!(pairing(&f("e12"), &f("e13"), &v).unwrap(), int(0));
        assert_eq!(pairing(&f("e12"), &f("e34"), &v).unwrap(), int(1));
        assert_eq!(pairing(&f("e12"), &f("e34"), &Form::zero(4)).unwrap_err(), Error::ZeroVolume);
        assert!(pairing(&f("e1"), &f("e34"), &v).is_err());
    }

    #[test]
    fn pairing_has_split_signature() {
        assert_eq!(pairing_signature(&standard_volume()).unwrap(), (3, 3, 0));
        assert_eq!(pairing_signature(&f("-3*e1234")).unwrap(), (3, 3, 0));
    }

    #[test]
    fn gram_examples() {
        let g = gram_and_discriminant(&int(1), &int(0), &int(1)).unwrap();
        assert_eq!(g.gram, Matrix::identity(3).scale(&int(2)));
        assert_eq!(g.discriminant, int(-4));
        assert!(g.positive_definite);
        let g = gram_and_discriminant(&int(1), &int(0), &int(-1)).unwrap();
        assert_eq!(g.discriminant, int(4));
        assert!(!g.positive_definite);
        assert_eq!(gram_and_discriminant(&int(1), &int(2), &int(1)).unwrap().discriminant, int(0));
        assert_eq!(gram_and_discriminant(&int(0), &int(2), &int(1)).unwrap_err(), Error::ZeroLeading);
    }

    #[test]
    fn normal_form_cases() {
        let n = normalize_lambda(&int(1), &int(0), &int(1)).unwrap();
        assert_eq!(n.case, LambdaCase::Minus);
        assert_eq!(n.theta, Matrix::identity(4));
        let n = normalize_lambda(&int(1), &int(0), &int(-1)).unwrap();
        assert_eq!(n.case, LambdaCase::Plus);
        assert_eq!(n.theta.get(1, 0), &Surd::from_rational_value(int(-1)));
        assert_eq!(n.theta.get(1, 1), &Surd::from_rational_value(int(1)));
        let n = normalize_lambda(&int(1), &int(2), &int(1)).unwrap();
        assert_eq!(n.case, LambdaCase::Zero);
        assert_eq!(n.theta.get(1, 0), &Surd::from_rational_value(int(-1)));
        assert_eq!(normalize_lambda(&int(0), &int(1), &int(1)).unwrap_err(), Error::ZeroLeading);
    }

    #[test]
    fn normal_form_with_irrational_entries() {
        let n = normalize_lambda(&int(2), &int(1), &int(1)).unwrap();
        assert_eq!(n.case, LambdaCase::Minus);
        let n = normalize_lambda(&int(1), &int(1), &int(-1)).unwrap();
        assert_eq!(n.case, LambdaCase::Plus);
        let n = normalize_lambda(&rational(1, 3), &int(2), &int(0)).unwrap();
        assert_eq!(n.case, LambdaCase::Plus);
    }

    #[test]
    fn simple_pairs() {
        let (t, c) = simple_pair_normal_form(&f("e12"), &f("e34")).unwrap();
        assert_eq!(c, PairCase::Disjoint);
        assert_eq!(f("e12").pullback(&t).unwrap(), f("e12"));
        assert_eq!(f("e34").pullback(&t).unwrap(), f("e34"));
        let (t, c) = simple_pair_normal_form(&f("e12"), &f("e13")).unwrap();
        assert_eq!(c, PairCase::SharedLine);
        assert_eq!(f("e13").pullback(&t).unwrap(), f("e13"));
        let sigma = f("e12 + e13");
        let tau = f("e23");
        let (t, c) = simple_pair_normal_form(&sigma, &tau).unwrap();
        assert_eq!(c, PairCase::SharedLine);
        assert_eq!(sigma.pullback(&t).unwrap(), f("e12"));
        assert_eq!(tau.pullback(&t).unwrap(), f("e13"));
        assert_eq!(simple_pair_normal_form(&f("e12+e34"), &tau).unwrap_err(), Error::NotSimple);
        assert_eq!(simple_pair_normal_form(&f("e12"), &f("2*e12")).unwrap_err(), Error::Dependent);
    }

    #[test]
    fn selfdual_and_antiselfdual() {
        let plus = selfdual_space(&Matrix::identity(4)).unwrap();
        assert_eq!(plus, vec![f("e12+e34"), f("e13+e42"), f("e14+e23")]);
        let v = standard_volume();
        assert_eq!(gram(&plus, &v).unwrap(), Matrix::identity(3).scale(&int(2)));
        let minus = annihilator(&plus, &v).unwrap();
        assert_eq!(minus.len(), 3);
        let (p, n, z) = inertia(&gram(&minus, &v).unwrap());
        assert_eq!((p, n, z), (0, 3, 0));
    }
}
