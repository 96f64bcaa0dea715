//! Coefficient fields.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. Four
//! instantiations are provided: [`Rational`] for real invariants, [`Surd`]
//! (a real quadratic extension of the rationals), [`Gaussian`] over either of
//! those for exact complex work, and `Complex64` for the numerical search.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers, always stored reduced with positive denominator.
pub type Rational = BigRational;

/// A field of coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality tests are exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;
}

/// A field closed under complex conjugation, containing `i`.
pub trait ComplexScalar: Scalar {
    type Real: Scalar;

    fn i() -> Self;
    fn conj(&self) -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        message: format!("invalid rational `{text}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(num_traits::Inv::inv(self.clone()))
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl ComplexScalar for Complex64 {
    type Real = f64;

    fn i() -> Self {
        Complex64::i()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
}

// ---------------------------------------------------------------------------
// Quadratic surds
// ---------------------------------------------------------------------------

/// An element `a + b√d` of a real quadratic field, `d > 1` squarefree.
///
/// Values with `b = 0` are plain rationals and combine with any field. Mixing
/// two irrational values with different radicands panics: callers keep every
/// computation inside a single quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: BigInt,
}

impl Surd {
    pub fn new(rational: Rational, coeff: Rational, radicand: BigInt) -> Surd {
        assert!(radicand.is_positive(), "surd radicand must be positive");
        let (square, free) = squarefree_split(&radicand);
        let coeff = coeff * Rational::from_integer(square);
        Surd::normalized(rational, coeff, free)
    }

    fn normalized(rational: Rational, coeff: Rational, radicand: BigInt) -> Surd {
        if coeff.is_zero() || radicand.is_one() {
            Surd {
                rational: rational + coeff,
                coeff: Rational::zero(),
                radicand: BigInt::one(),
            }
        } else {
            Surd {
                rational,
                coeff,
                radicand,
            }
        }
    }

    pub fn from_rational_value(r: Rational) -> Surd {
        Surd::normalized(r, Rational::zero(), BigInt::one())
    }

    /// The nonnegative square root of a nonnegative rational.
    pub fn sqrt(r: &Rational) -> Option<Surd> {
        if r.is_negative() {
            return None;
        }
        // sqrt(p/q) = sqrt(p q) / q
        let pq = r.numer() * r.denom();
        Some(Surd::new(
            Rational::zero(),
            Rational::new(BigInt::one(), r.denom().clone()),
            if pq.is_zero() { BigInt::one() } else { pq },
        ))
        .map(|s| if r.is_zero() { Surd::zero() } else { s })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.coeff
    }

    /// The squarefree radicand, `1` for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        r + c * d.sqrt()
    }

    fn common_radicand(&self, other: &Surd) -> BigInt {
        match (self.coeff.is_zero(), other.coeff.is_zero()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert!(
                    self.radicand == other.radicand,
                    "arithmetic between quadratic fields Q(√{}) and Q(√{})",
                    self.radicand,
                    other.radicand
                );
                self.radicand.clone()
            }
        }
    }

    /// Galois conjugate `a - b√d`.
    pub fn galois_conjugate(&self) -> Surd {
        Surd::normalized(
            self.rational.clone(),
            -self.coeff.clone(),
            self.radicand.clone(),
        )
    }

    fn norm(&self) -> Rational {
        &self.rational * &self.rational
            - &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }
}

/// Splits `n = s^2 f` with `f` squarefree as far as trial division reaches.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut square = BigInt::one();
    let mut rest = n.clone();
    let root = rest.sqrt();
    if &root * &root == rest {
        return (root, BigInt::one());
    }
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p < limit {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        square *= root;
        rest = BigInt::one();
    }
    (square, rest)
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let abs = self.coeff.abs();
        let body = if abs.is_one() {
            format!("√{}", self.radicand)
        } else {
            format!("{}*√{}", abs, self.radicand)
        };
        let sign = if self.coeff.is_negative() { "-" } else { "+" };
        if self.rational.is_zero() {
            if self.coeff.is_negative() {
                write!(f, "-{body}")
            } else {
                write!(f, "{body}")
            }
        } else {
            write!(f, "{}{}{}", self.rational, sign, body)
        }
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::from_rational_value(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_rational_value(Rational::one())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let d = self.common_radicand(&rhs);
        Surd::normalized(self.rational + rhs.rational, self.coeff + rhs.coeff, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::normalized(-self.rational, -self.coeff, self.radicand)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let d = self.common_radicand(&rhs);
        let dr = Rational::from_integer(d.clone());
        let rational = &self.rational * &rhs.rational + &self.coeff * &rhs.coeff * dr;
        let coeff = &self.rational * &rhs.coeff + &self.coeff * &rhs.rational;
        Surd::normalized(rational, coeff, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        self * rhs.recip().expect("division by zero surd")
    }
}

impl Scalar for Surd {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        Surd::from_rational_value(r.clone())
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let inv = num_traits::Inv::inv(n);
        let c = self.galois_conjugate();
        Some(Surd::normalized(
            c.rational * &inv,
            c.coeff * &inv,
            c.radicand,
        ))
    }
}

// ---------------------------------------------------------------------------
// Gaussian extension
// ---------------------------------------------------------------------------

/// `re + i·im` over a real field `R`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian<R> {
    pub re: R,
    pub im: R,
}

impl<R: Scalar> Gaussian<R> {
    pub fn new(re: R, im: R) -> Self {
        Gaussian { re, im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl<R: Scalar> fmt::Debug for Gaussian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whether a printed scalar has a `+`/`-` past its first character.
pub(crate) fn is_compound(text: &str) -> bool {
    text.char_indices()
        .skip(1)
        .any(|(_, c)| c == '+' || c == '-')
}

impl<R: Scalar> fmt::Display for Gaussian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = self.im.to_string();
        let (negative, imag) = if self.im.is_one() {
            (false, "i".to_string())
        } else if (-self.im.clone()).is_one() {
            (true, "i".to_string())
        } else if is_compound(&im) {
            (false, format!("({im})i"))
        } else if let Some(stripped) = im.strip_prefix('-') {
            (true, format!("{stripped}i"))
        } else {
            (false, format!("{im}i"))
        };
        if self.re.is_zero() {
            if negative {
                write!(f, "-{imag}")
            } else {
                write!(f, "{imag}")
            }
        } else {
            let sign = if negative { '-' } else { '+' };
            write!(f, "{}{}{}", self.re, sign, imag)
        }
    }
}

impl<R: Scalar> Zero for Gaussian<R> {
    fn zero() -> Self {
        Gaussian::new(R::zero(), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<R: Scalar> One for Gaussian<R> {
    fn one() -> Self {
        Gaussian::new(R::one(), R::zero())
    }
}

impl<R: Scalar> Add for Gaussian<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<R: Scalar> Sub for Gaussian<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<R: Scalar> Neg for Gaussian<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl<R: Scalar> Mul for Gaussian<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Gaussian::new(re, im)
    }
}

impl<R: Scalar> Div for Gaussian<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero")
    }
}

impl<R: Scalar> Scalar for Gaussian<R> {
    const EXACT: bool = R::EXACT;

    fn from_rational(r: &Rational) -> Self {
        Gaussian::new(R::from_rational(r), R::zero())
    }

    fn recip(&self) -> Option<Self> {
        let norm = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        let inv = norm.recip()?;
        Some(Gaussian::new(
            self.re.clone() * inv.clone(),
            -self.im.clone() * inv,
        ))
    }
}

impl<R: Scalar> ComplexScalar for Gaussian<R> {
    type Real = R;

    fn i() -> Self {
        Gaussian::new(R::zero(), R::one())
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
    fn from_parts(re: R, im: R) -> Self {
        Gaussian::new(re, im)
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn im(&self) -> R {
        self.im.clone()
    }
}

/// Lifts an exact complex value to floating point.
pub trait ToComplex64 {
    fn to_complex64(&self) -> Complex64;
}

impl ToComplex64 for Gaussian<Rational> {
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl ToComplex64 for Gaussian<Surd> {
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Embeds Gaussian rationals into Gaussian surds.
pub fn gaussian_to_surd(z: &Gaussian<Rational>) -> Gaussian<Surd> {
    Gaussian::new(
        Surd::from_rational_value(z.re.clone()),
        Surd::from_rational_value(z.im.clone()),
    )
}

/// Recovers a Gaussian rational from a Gaussian surd without irrational part.
pub fn surd_to_gaussian(z: &Gaussian<Surd>) -> Option<Gaussian<Rational>> {
    if z.re.is_rational() && z.im.is_rational() {
        Some(Gaussian::new(
            z.re.rational_part().clone(),
            z.im.rational_part().clone(),
        ))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Parsing exact complex scalars
// ---------------------------------------------------------------------------

/// Parses exact scalars such as `3`, `-1/2`, `1/2+3/4i`, `2-√3`, `(1+√2)i`,
/// `1/2*sqrt(5) - i`.
pub fn parse_gaussian_surd(text: &str) -> Result<Gaussian<Surd>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ScalarParser { chars, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct ScalarParser {
    chars: Vec<char>,
    pos: usize,
}

impl ScalarParser {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Gaussian<Surd>> {
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negative {
            acc = -acc;
        }
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == '+' { acc + t } else { acc - t };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Gaussian<Surd>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(c) if c == 'i' || c == '√' || c == '(' || c == 's' || c.is_ascii_digit() => {
                    acc = acc * self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("invalid integer"))
    }

    fn factor(&mut self) -> Result<Gaussian<Surd>> {
        match self.peek() {
            Some('i') => {
                self.pos += 1;
                Ok(Gaussian::i())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('√') => {
                self.pos += 1;
                let n = self.integer()?;
                Ok(Gaussian::from_real(Surd::new(
                    Rational::zero(),
                    Rational::one(),
                    n,
                )))
                .and_then(|v| if v.re.is_zero() { Err(self.error("√0")) } else { Ok(v) })
            }
            Some('s') => {
                let word: String = self.chars[self.pos..].iter().take(5).collect();
                if word != "sqrt(" {
                    return Err(self.error("expected `sqrt(`"));
                }
                self.pos += 5;
                let n = self.integer()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                if n.is_zero() {
                    return Err(self.error("sqrt(0)"));
                }
                Ok(Gaussian::from_real(Surd::new(
                    Rational::zero(),
                    Rational::one(),
                    n,
                )))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Gaussian::from_real(Surd::from_rational_value(
                    Rational::new(num, den),
                )))
            }
            _ => Err(self.error("expected a number, `i`, `√` or `(`")),
        }
    }
}

/// Greatest common divisor of the denominators' least common multiple, used to
/// clear denominators of rational vectors.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
