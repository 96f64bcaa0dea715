//! Graded exterior algebra on `m <= 9` generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{is_compound, parse_rational, ComplexScalar, Rational, Scalar};

pub const MAX_DIM: usize = 9;

/// A basis element `e^{i1...ik}` stored as a bitmask (bit `i-1` for index `i`).
///
/// Ordered by degree, then lexicographically by index tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u16);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u16) -> Monomial {
        Monomial(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// `e^i`, with `i` counted from 1.
    pub fn generator(i: usize) -> Monomial {
        assert!((1..=MAX_DIM).contains(&i), "generator index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// From a strictly increasing list of indices.
    pub fn new(indices: &[usize]) -> Result<Monomial> {
        let mut bits = 0u16;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::IndexOutOfRange { index: i, dim: MAX_DIM });
            }
            if i == last {
                return Err(Error::RepeatedIndex(i));
            }
            if i < last {
                return Err(Error::Precondition("monomial indices must increase".into()));
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Ok(Monomial(bits))
    }

    /// Sorts arbitrary indices; returns the sign of the sorting permutation,
    /// or `None` on a repeated index.
    pub fn from_unsorted(indices: &[usize]) -> Option<(bool, Monomial)> {
        let mut acc = (false, Monomial::ONE);
        for &i in indices {
            let (neg, m) = acc.1.wedge(Monomial::generator(i))?;
            acc = (acc.0 ^ neg, m);
        }
        Some(acc)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in increasing order, counted from 1.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 16 && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest index, 0 for the unit.
    pub fn max_index(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    /// `self ∧ other` as (negative sign?, monomial), `None` if they share an index.
    pub fn wedge(self, other: Monomial) -> Option<(bool, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (a in self, b in other) with a > b
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            swaps += (self.0 >> b).count_ones();
            rest &= rest - 1;
        }
        Some((swaps % 2 == 1, Monomial(self.0 | other.0)))
    }

    /// All monomials of a degree in dimension `dim`, in canonical order.
    pub fn all(dim: usize, degree: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = (0u16..(1u16 << dim))
            .filter(|b| b.count_ones() as usize == degree)
            .map(Monomial)
            .collect();
        out.sort();
        out
    }

    pub fn without(self, i: usize) -> Monomial {
        Monomial(self.0 & !(1 << (i - 1)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the exterior algebra on `dim` generators.
#[derive(Clone, PartialEq)]
pub struct Form<S> {
    dim: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        Self::monomial(dim, Monomial::ONE, c)
    }

    /// `e^i`, counted from 1.
    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "generator e{i} outside dimension {dim}");
        Self::monomial(dim, Monomial::generator(i), S::one())
    }

    pub fn monomial(dim: usize, mon: Monomial, c: S) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(mon, c);
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut f = Self::zero(dim);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// The degree-1 form `sum v_i e^i`.
    pub fn from_linear(v: &[S]) -> Self {
        let dim = v.len();
        Self::from_terms(
            dim,
            v.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::generator(i + 1), c.clone())),
        )
    }

    pub fn from_vector(dim: usize, basis: &[Monomial], v: &[S]) -> Self {
        Self::from_terms(dim, basis.iter().copied().zip(v.iter().cloned()))
    }

    /// Coefficients with respect to `basis`; monomials outside it are ignored.
    pub fn to_vector(&self, basis: &[Monomial]) -> Vec<S> {
        basis.iter().map(|m| self.coeff(*m)).collect()
    }

    /// Coefficients of a degree-1 form.
    pub fn to_linear(&self) -> Vec<S> {
        (1..=self.dim)
            .map(|i| self.coeff(Monomial::generator(i)))
            .collect()
    }

    pub fn add_term(&mut self, mon: Monomial, c: S) {
        assert!(
            mon.max_index() <= self.dim,
            "monomial {mon} outside dimension {}",
            self.dim
        );
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mon) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(mon, sum);
                }
            }
            None => {
                self.terms.insert(mon, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mon: Monomial) -> S {
        self.terms.get(&mon).cloned().unwrap_or_else(S::zero)
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    /// The common degree of all terms, `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, mut keep: impl FnMut(Monomial) -> bool) -> Self {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())),
        )
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Form<T> {
        Form::from_terms(self.dim, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, m)) = a.wedge(*b) {
                    let c = x.clone() * y.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of forms of different dimension")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Applies the algebra morphism sending `e^i` to column `i` of `t`,
    /// i.e. `e^i ↦ sum_j t[j][i] e^j`.
    ///
    /// Pulling back by `t1` and then by `t2` equals pulling back by `t2 * t1`.
    pub fn pullback(&self, t: &Matrix<S>) -> Result<Self> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.rows(),
            });
        }
        let images: Vec<Self> = (0..self.dim)
            .map(|i| Self::from_linear(&t.column(i)))
            .collect();
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(self.dim, c.clone());
            for i in m.indices() {
                prod = prod.wedge(&images[i - 1]);
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Interior-style contraction: the part of `self` containing `e^i`, with
    /// `e^i` removed from the front (`e^i ∧ result` recovers that part).
    pub fn factor_out(&self, i: usize) -> Self {
        let g = Monomial::generator(i);
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if m.contains(i) {
                let rest = m.without(i);
                let (neg, _) = g.wedge(rest).expect("disjoint");
                out.add_term(rest, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

impl<S: ComplexScalar> Form<S> {
    pub fn conjugate(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn real_part(&self) -> Form<S::Real> {
        self.map(|c| c.re())
    }

    pub fn imag_part(&self) -> Form<S::Real> {
        self.map(|c| c.im())
    }

    pub fn complexify(real: &Form<S::Real>) -> Self {
        real.map(|c| S::from_real(c.clone()))
    }
}

impl<S: Scalar> Add for &Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: &Form<S>) -> Form<S> {
        self.try_add(rhs).expect("sum of forms of different dimension")
    }
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: Form<S>) -> Form<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        -&self
    }
}

impl<S: Scalar> Sub for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: &Form<S>) -> Form<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: Form<S>) -> Form<S> {
        &self - &rhs
    }
}

/// `a ^ b` is the wedge product; panics on mismatched dimensions.
impl<S: Scalar> BitXor for &Form<S> {
    type Output = Form<S>;
    fn bitxor(self, rhs: &Form<S>) -> Form<S> {
        self.wedge(rhs)
    }
}

impl<S: Scalar> BitXor for Form<S> {
    type Output = Form<S>;
    fn bitxor(self, rhs: Form<S>) -> Form<S> {
        self.wedge(&rhs)
    }
}

/// Extends images of the generators to the odd derivation of degree one
/// (graded Leibniz rule): on `e^{i1...ik}` it returns
/// `sum_j (-1)^(j-1) e^{i1..i(j-1)} ∧ D(e^{ij}) ∧ e^{i(j+1)..ik}`.
pub fn antiderivation<S: Scalar>(images: &[Form<S>], f: &Form<S>) -> Form<S> {
    let dim = f.dim();
    let mut out = Form::zero(dim);
    for (m, c) in f.terms() {
        let idx: Vec<usize> = m.indices().collect();
        for (j, &i) in idx.iter().enumerate() {
            let before = Monomial(m.bits() & ((1u16 << (i - 1)) - 1));
            let after = Monomial(m.bits() & !((1u16 << i) - 1));
            let outer_neg = j % 2 == 1;
            for (n, x) in images[i - 1].terms() {
                let Some((s1, pm)) = before.wedge(n) else { continue };
                let Some((s2, full)) = pm.wedge(after) else { continue };
                let v = c.clone() * x.clone();
                out.add_term(full, if outer_neg ^ s1 ^ s2 { -v } else { v });
            }
        }
    }
    out
}

fn format_term<S: Scalar>(m: Monomial, c: &S) -> String {
    let text = c.to_string();
    let unit = m == Monomial::ONE;
    if c.is_one() && !unit {
        m.to_string()
    } else if (-c.clone()).is_one() && !unit {
        format!("-{m}")
    } else if unit {
        text
    } else if is_compound(&text) {
        format!("({text})*{m}")
    } else {
        format!("{text}*{m}")
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let t = format_term(*m, c);
            if k == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses rational forms written like `e12 - 1/2*e34 + 3*e5`.
pub fn parse_form(dim: usize, text: &str) -> Result<Form<Rational>> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let err = |k: usize, message: &str| Error::Parse {
        pos: chars.get(k).map(|p| p.0).unwrap_or(text.len()),
        message: message.to_string(),
    };
    if chars.len() == 1 && chars[0].1 == '0' {
        return Ok(Form::zero(dim));
    }
    let mut form = Form::zero(dim);
    let mut k = 0;
    let mut first = true;
    while k < chars.len() || first {
        let mut negative = false;
        match chars.get(k).map(|p| p.1) {
            Some('-') => {
                negative = true;
                k += 1;
            }
            Some('+') if !first => k += 1,
            _ if first => {}
            _ => return Err(err(k, "expected `+` or `-`")),
        }
        first = false;
        let start = k;
        while k < chars.len() && chars[k].1 != 'e' {
            k += 1;
        }
        let coeff = if start == k {
            Rational::from_integer(1.into())
        } else {
            let body: String = chars[start..k].iter().map(|p| p.1).collect();
            let body = body
                .strip_suffix('*')
                .ok_or_else(|| err(start, "expected `*` before monomial"))?;
            parse_rational(body).map_err(|_| err(start, "invalid coefficient"))?
        };
        if k >= chars.len() {
            return Err(err(k, "expected monomial"));
        }
        k += 1;
        let mut idx = Vec::new();
        while k < chars.len() && chars[k].1.is_ascii_digit() {
            let i = chars[k].1.to_digit(10).unwrap() as usize;
            if i == 0 || i > dim {
                return Err(err(k, &format!("index {i} out of range")));
            }
            idx.push(i);
            k += 1;
        }
        if idx.is_empty() {
            return Err(err(k, "expected digits after `e`"));
        }
        let (neg, m) =
            Monomial::from_unsorted(&idx).ok_or_else(|| err(k - 1, "repeated index"))?;
        let c = if negative ^ neg { -coeff } else { coeff };
        form.add_term(m, c);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational, Gaussian};
    use proptest::prelude::*;

    type Q = Rational;

    fn e(dim: usize, idx: &[usize]) -> Form<Q> {
        Form::monomial(dim, Monomial::new(idx).unwrap(), int(1))
    }

    fn random_form(dim: usize, degree: usize) -> impl Strategy<Value = Form<Q>> {
        let basis = Monomial::all(dim, degree);
        proptest::collection::vec(-3i64..4, basis.len())
            .prop_map(move |v| Form::from_terms(dim, basis.iter().copied().zip(v.into_iter().map(int))))
    }

    fn random_matrix(dim: usize) -> impl Strategy<Value = Matrix<Q>> {
        proptest::collection::vec(-2i64..3, dim * dim)
            .prop_map(move |v| Matrix::from_fn(dim, dim, |i, j| int(v[i * dim + j])))
    }

    #[test]
    fn monomial_wedge_signs() {
        assert_eq!(e(4, &[1]).wedge(&e(4, &[2])), e(4, &[1, 2]));
        assert!(e(4, &[1, 2]).wedge(&e(4, &[1, 2])).is_zero());
        assert_eq!(e(4, &[4]).wedge(&e(4, &[2])), -e(4, &[2, 4]));
    }

    #[test]
    fn monomial_order_is_degree_then_lex() {
        let all = Monomial::all(4, 2);
        let names: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["e12", "e13", "e14", "e23", "e24", "e34"]);
        assert!(Monomial::generator(4) < Monomial::new(&[1, 2]).unwrap());
    }

    #[test]
    fn pullback_identity_and_swap() {
        let f = e(2, &[1, 2]);
        assert_eq!(f.pullback(&Matrix::identity(2)).unwrap(), f);
        let swap = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(f.pullback(&swap).unwrap(), -f);
    }

    #[test]
    fn conjugate_flips_imaginary_parts() {
        let z = Gaussian::new(int(1), int(1));
        let f: Form<Gaussian<Q>> = Form::monomial(2, Monomial::new(&[1, 2]).unwrap(), z);
        let g = f.conjugate();
        assert_eq!(g.coeff(Monomial::new(&[1, 2]).unwrap()), Gaussian::new(int(1), int(-1)));
        assert_eq!(g.conjugate(), f);
    }

    #[test]
    fn display_and_parse() {
        let f = &e(4, &[1, 2]) - &e(4, &[3, 4]).scale(&rational(1, 2));
        assert_eq!(f.to_string(), "e12 - 1/2*e34");
        assert_eq!(parse_form(4, "e12 - 1/2*e34").unwrap(), f);
        assert_eq!(parse_form(4, "e42").unwrap(), -e(4, &[2, 4]));
        assert!(parse_form(4, "e11").is_err());
        assert!(parse_form(4, "e15").is_err());
        assert_eq!(Form::<Q>::zero(3).to_string(), "0");
    }

    #[test]
    fn factor_out_recovers_part() {
        let f = parse_form(4, "e12 + e34 - e23").unwrap();
        let g = Form::generator(4, 2).wedge(&f.factor_out(2));
        assert_eq!(g, f.filter(|m| m.contains(2)));
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(p in 0usize..4, q in 0usize..4, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rf = |k: usize| Form::from_terms(5, Monomial::all(5, k).into_iter().map(|m| (m, int(rng.gen_range(-3..4)))));
            let a = rf(p);
            let b = rf(q);
            let ab = a.wedge(&b);
            let ba = b.wedge(&a);
            if (p * q) % 2 == 0 { prop_assert_eq!(ab, ba); } else { prop_assert_eq!(ab, -ba); }
        }

        #[test]
        fn wedge_associative(a in random_form(5, 1), b in random_form(5, 2), c in random_form(5, 1)) {
            prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }

        #[test]
        fn pullback_is_morphism(a in random_form(4, 1), b in random_form(4, 2), t in random_matrix(4)) {
            let lhs = a.wedge(&b).pullback(&t).unwrap();
            let rhs = a.pullback(&t).unwrap().wedge(&b.pullback(&t).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pullback_composition(f in random_form(4, 2), t1 in random_matrix(4), t2 in random_matrix(4)) {
            let seq = f.pullback(&t1).unwrap().pullback(&t2).unwrap();
            prop_assert_eq!(seq, f.pullback(&t2.mul(&t1)).unwrap());
        }

        #[test]
        fn display_parse_roundtrip(f in random_form(5, 2)) {
            prop_assert_eq!(parse_form(5, &f.to_string()).unwrap(), f);
        }
    }
}
