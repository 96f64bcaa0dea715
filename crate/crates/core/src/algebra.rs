//! Lie algebras given by the differentials `de^i` of a coframe.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{antiderivation, Form, Monomial, MAX_DIM};
use crate::linalg::{row_basis, Matrix};
use crate::scalar::{parse_rational, Rational, Scalar};

/// A real Lie algebra of dimension `m` presented by `de^1, ..., de^m`.
#[derive(Clone, PartialEq)]
pub struct LieAlgebraSpec {
    dim: usize,
    differentials: Vec<Form<Rational>>,
    lie: bool,
    triangular: bool,
}

impl LieAlgebraSpec {
    pub fn new(differentials: Vec<Form<Rational>>) -> Result<Self> {
        let dim = differentials.len();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        for d in &differentials {
            if d.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d.dim(),
                });
            }
            if let Some(k) = d.degrees().into_iter().find(|&k| k != 2) {
                return Err(Error::WrongDegree {
                    expected: 2,
                    found: k,
                });
            }
        }
        let triangular = differentials
            .iter()
            .enumerate()
            .all(|(i, d)| d.terms().all(|(m, _)| m.max_index() <= i));
        let mut spec = LieAlgebraSpec {
            dim,
            differentials,
            lie: false,
            triangular,
        };
        spec.lie = (1..=dim).all(|i| spec.differential(&spec.differentials[i - 1]).is_zero());
        Ok(spec)
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(vec![Form::zero(dim); dim])
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_tuple(text)
    }

    pub fn render(&self) -> String {
        let entries: Vec<String> = self.differentials.iter().map(render_entry).collect();
        format!("({})", entries.join(","))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `de^i`, counted from 1.
    pub fn de(&self, i: usize) -> &Form<Rational> {
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[Form<Rational>] {
        &self.differentials
    }

    /// The differentials with coefficients embedded in another field.
    pub fn differentials_in<S: Scalar>(&self) -> Vec<Form<S>> {
        self.differentials
            .iter()
            .map(|f| f.map(S::from_rational))
            .collect()
    }

    /// Whether `d∘d` vanishes on every generator (the Jacobi identity).
    pub fn is_lie_algebra(&self) -> bool {
        self.lie
    }

    /// Whether each `de^i` only involves `e^1..e^(i-1)`.
    pub fn is_triangular(&self) -> bool {
        self.triangular
    }

    pub fn differential(&self, f: &Form<Rational>) -> Form<Rational> {
        assert_eq!(f.dim(), self.dim, "form dimension differs from algebra");
        antiderivation(&self.differentials, f)
    }

    pub fn try_differential(&self, f: &Form<Rational>) -> Result<Form<Rational>> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        Ok(self.differential(f))
    }

    /// `d` on forms with coefficients in any field containing the rationals.
    pub fn differential_in<S: Scalar>(&self, f: &Form<S>) -> Form<S> {
        assert_eq!(f.dim(), self.dim, "form dimension differs from algebra");
        antiderivation(&self.differentials_in::<S>(), f)
    }

    pub fn require_lie(&self) -> Result<()> {
        if self.lie {
            Ok(())
        } else {
            Err(Error::NotLieAlgebra)
        }
    }

    /// Structure constant `c^i_{jk}` with `de^i = sum_{j<k} c^i_{jk} e^{jk}`,
    /// extended antisymmetrically.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        if j == k {
            return Rational::from_integer(0.into());
        }
        let (neg, m) = Monomial::generator(j)
            .wedge(Monomial::generator(k))
            .expect("distinct indices");
        let c = self.de(i).coeff(m);
        if neg {
            -c
        } else {
            c
        }
    }

    /// `[e_j, e_k]` in the dual basis, with `dσ(X,Y) = -σ([X,Y])`.
    pub fn dual_bracket(&self, j: usize, k: usize) -> Result<Vec<Rational>> {
        for idx in [j, k] {
            if idx == 0 || idx > self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    dim: self.dim,
                });
            }
        }
        Ok((1..=self.dim)
            .map(|i| -self.structure_constant(i, j, k))
            .collect())
    }

    /// The same algebra in the coframe `f^i = sum_j t[j][i] e^j`.
    pub fn change_basis(&self, t: &Matrix<Rational>) -> Result<Self> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.rows(),
            });
        }
        let inv = t.inverse().ok_or(Error::Singular)?;
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut df = Form::zero(self.dim);
            for j in 0..self.dim {
                let c = t.get(j, i);
                if !num_traits::Zero::is_zero(c) {
                    df = &df + &self.differentials[j].scale(c);
                }
            }
            out.push(df.pullback(&inv)?);
        }
        Self::new(out)
    }

    /// The descending filtration `V_i = {σ : dσ ∈ Λ²V_(i-1)}`.
    pub fn filtration(&self) -> Result<Filtration> {
        self.require_lie()?;
        let m = self.dim;
        let pairs = Monomial::all(m, 2);
        let images: Vec<Vec<Rational>> = self
            .differentials
            .iter()
            .map(|f| f.to_vector(&pairs))
            .collect();
        let mut subspaces: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
        while subspaces.len() <= m {
            let prev = subspaces.last().unwrap();
            let forms: Vec<Form<Rational>> = prev.iter().map(|v| Form::from_linear(v)).collect();
            let mut wedge_span = Vec::new();
            for a in 0..forms.len() {
                for b in a + 1..forms.len() {
                    wedge_span.push(forms[a].wedge(&forms[b]).to_vector(&pairs));
                }
            }
            // columns: d e^1..d e^m, then the spanning set of Λ²V_(i-1)
            let mut cols = images.clone();
            cols.extend(wedge_span);
            let kernel = Matrix::from_columns(&cols).kernel();
            let next: Vec<Vec<Rational>> = kernel.into_iter().map(|k| k[..m].to_vec()).collect();
            let next = row_basis(&next, m);
            let stationary = next.len() == prev.len();
            subspaces.push(next);
            if stationary || subspaces.last().unwrap().len() == m {
                break;
            }
        }
        let dims: Vec<usize> = subspaces.iter().map(|v| v.len()).collect();
        let step = dims.iter().position(|&d| d == m);
        Ok(Filtration {
            dim: m,
            central_dims: dims.iter().map(|d| m - d).collect(),
            dims,
            subspaces,
            step,
        })
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.filtration()?.step.is_some())
    }
}

impl fmt::Display for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraSpec{}", self.render())
    }
}

/// `V_0 ⊆ V_1 ⊆ ...` in reduced echelon bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    pub dim: usize,
    /// `subspaces[i]` is an echelon basis of `V_i`, starting with `V_0 = 0`.
    pub subspaces: Vec<Vec<Vec<Rational>>>,
    pub dims: Vec<usize>,
    /// `dim g^i = m - dim V_i`.
    pub central_dims: Vec<usize>,
    /// Least `s` with `V_s = g*`; `None` when not nilpotent.
    pub step: Option<usize>,
}

impl Filtration {
    pub fn is_nilpotent(&self) -> bool {
        self.step.is_some()
    }

    pub fn basis_forms(&self, i: usize) -> Vec<Form<Rational>> {
        self.subspaces[i].iter().map(|v| Form::from_linear(v)).collect()
    }
}

fn render_entry(f: &Form<Rational>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().enumerate() {
        let digits: String = m.indices().map(|i| i.to_string()).collect();
        let negative = c < &Rational::from_integer(0.into());
        let abs = if negative { -c.clone() } else { c.clone() };
        if negative {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if abs != Rational::from_integer(1.into()) {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&digits);
    }
    out
}

struct TupleParser<'a> {
    chars: Vec<(usize, char)>,
    k: usize,
    text: &'a str,
}

impl TupleParser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.k).map_or(self.text.len(), |p| p.0)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.k).map(|p| p.1)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.k += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.k += 1;
        }
        s
    }

    /// `[rational '*'] digit digit`, returned as (coefficient, j, k).
    fn term(&mut self) -> Result<(Rational, usize, usize, usize)> {
        let start = self.pos();
        let first = self.digits();
        if first.is_empty() {
            return Err(self.error("expected a term"));
        }
        let (coeff, pair) = match self.peek() {
            Some('/') => {
                self.k += 1;
                let den = self.digits();
                if den.is_empty() {
                    return Err(self.error("expected denominator"));
                }
                let r = parse_rational(&format!("{first}/{den}"))
                    .map_err(|_| Error::Parse {
                        pos: start,
                        message: "invalid coefficient".into(),
                    })?;
                self.expect('*')?;
                (r, self.digits())
            }
            Some('*') => {
                self.k += 1;
                let r = parse_rational(&first).expect("digits");
                (r, self.digits())
            }
            _ => (Rational::from_integer(1.into()), first),
        };
        if pair.len() != 2 {
            return Err(Error::Parse {
                pos: start,
                message: format!("expected exactly two index digits, found `{pair}`"),
            });
        }
        let b = pair.as_bytes();
        Ok((coeff, (b[0] - b'0') as usize, (b[1] - b'0') as usize, start))
    }

    fn entry(&mut self) -> Result<Vec<(Rational, usize, usize, usize)>> {
        if self.peek() == Some('0')
            && matches!(self.chars.get(self.k + 1).map(|p| p.1), Some(',') | Some(')'))
        {
            self.k += 1;
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut sign_negative = false;
        if self.peek() == Some('-') {
            sign_negative = true;
            self.k += 1;
        }
        loop {
            let (c, j, k, pos) = self.term()?;
            terms.push((if sign_negative { -c } else { c }, j, k, pos));
            match self.peek() {
                Some('+') => sign_negative = false,
                Some('-') => sign_negative = true,
                _ => break,
            }
            self.k += 1;
        }
        Ok(terms)
    }
}

fn parse_tuple(text: &str) -> Result<LieAlgebraSpec> {
    let mut p = TupleParser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        k: 0,
        text,
    };
    p.expect('(')?;
    let mut entries = vec![p.entry()?];
    while p.peek() == Some(',') {
        p.k += 1;
        entries.push(p.entry()?);
    }
    p.expect(')')?;
    if p.k != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let m = entries.len();
    if !(2..=MAX_DIM).contains(&m) {
        return Err(Error::DimensionOutOfRange(m));
    }
    let mut differentials = Vec::with_capacity(m);
    for terms in entries {
        let mut f = Form::zero(m);
        for (c, j, k, _pos) in terms {
            for idx in [j, k] {
                if idx == 0 || idx > m {
                    return Err(Error::IndexOutOfRange { index: idx, dim: m });
                }
            }
            if j == k {
                return Err(Error::RepeatedIndex(j));
            }
            let (neg, mon) = Monomial::from_unsorted(&[j, k]).expect("distinct");
            f.add_term(mon, if neg { -c } else { c });
        }
        differentials.push(f);
    }
    LieAlgebraSpec::new(differentials)
}
