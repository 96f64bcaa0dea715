//! Dense exact linear algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalar::{lcm_of_denominators, Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let r = cols.first().map_or(0, |c| c.len());
        Self::from_fn(r, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * other.get(k, j).clone();
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[S]) -> Vec<S> {
        self.transpose().mul_vec(v)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return S::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            let inv = pivot.recip().expect("nonzero pivot");
            for i in c + 1..n {
                if !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone() * inv.clone();
                    for j in c..n {
                        let v = m.get(i, j).clone() - factor.clone() * m.get(c, j).clone();
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced echelon basis of the span of `vectors` (each of length `len`).
pub fn row_basis<S: Scalar>(vectors: &[Vec<S>], len: usize) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    assert_eq!(m.cols(), len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_rank<S: Scalar>(vectors: &[Vec<S>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors.to_vec()).rank()
    }
}

pub fn span_contains<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == span_rank(basis)
}

pub fn span_equal<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(&all) == ra
}

/// Basis of the intersection of two spans.
pub fn intersect<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], len: usize) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<S>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(&cols);
    let vectors: Vec<Vec<S>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![S::zero(); len];
            for (i, ai) in a.iter().enumerate() {
                for (vj, x) in v.iter_mut().zip(ai) {
                    *vj = vj.clone() + k[i].clone() * x.clone();
                }
            }
            v
        })
        .collect();
    row_basis(&vectors, len)
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let n = rows.len();
    if n == 0 {
        return 0;
    }
    let cols = rows[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank of a rational matrix via integer-scaled rows and Bareiss.
pub fn rational_rank(m: &Matrix<Rational>) -> usize {
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = lcm_of_denominators(row.iter());
            row.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    bareiss_rank(rows)
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix by
/// congruence diagonalization.
pub fn inertia(m: &Matrix<Rational>) -> (usize, usize, usize) {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        let size = n - k;
        let sub = |a: &Matrix<Rational>, i: usize, j: usize| a.get(k + i, k + j).clone();
        if let Some(p) = (0..size).find(|&i| !sub(&a, i, i).is_zero()) {
            symmetric_swap(&mut a, k, k + p);
        } else if let Some((i, j)) = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .find(|&(i, j)| !sub(&a, i, j).is_zero())
        {
            // a_ii = a_jj = 0, a_ij != 0: row/col i += row/col j gives 2 a_ij
            add_symmetric(&mut a, k + i, k + j);
            symmetric_swap(&mut a, k, k + i);
        } else {
            diag.extend(std::iter::repeat(Rational::zero()).take(size));
            break;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let f = a.get(i, k).clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                a.set(i, j, v);
            }
            for j in k..n {
                let v = a.get(j, i).clone() - f.clone() * a.get(j, k).clone();
                a.set(j, i, v);
            }
        }
        diag.push(pivot);
        k += 1;
    }
    let pos = diag.iter().filter(|x| x.is_positive()).count();
    let neg = diag.iter().filter(|x| x.is_negative()).count();
    (pos, neg, n - pos - neg)
}

fn symmetric_swap(a: &mut Matrix<Rational>, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    let n = a.rows();
    for r in 0..n {
        let x = a.get(r, i).clone();
        let y = a.get(r, j).clone();
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

fn add_symmetric(a: &mut Matrix<Rational>, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c).clone() + a.get(j, c).clone();
        a.set(i, c, v);
    }
    for r in 0..n {
        let v = a.get(r, i).clone() + a.get(r, j).clone();
        a.set(r, i, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn kernel_and_solve() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert!(m.solve(&[int(1), int(3)]).is_none());
        let x = m.solve(&[int(1), int(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(1), int(2)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), int(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        assert_eq!(inertia(&q(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -3]])), (1, 1, 1));
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        let b = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        let i = intersect(&a, &b, 3);
        assert_eq!(i, vec![vec![int(0), int(1), int(0)]]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_rref(v in proptest::collection::vec(-3i64..4, 20), r in 1usize..5) {
            let cols = 20 / r;
            let m = Matrix::from_fn(r, cols, |i, j| int(v[i * cols + j]));
            prop_assert_eq!(rational_rank(&m), m.rank());
        }

        #[test]
        fn determinant_multiplicative(a in proptest::collection::vec(-3i64..4, 9), b in proptest::collection::vec(-3i64..4, 9)) {
            let ma = Matrix::from_fn(3, 3, |i, j| int(a[i * 3 + j]));
            let mb = Matrix::from_fn(3, 3, |i, j| int(b[i * 3 + j]));
            prop_assert_eq!(ma.mul(&mb).determinant(), ma.determinant() * mb.determinant());
        }
    }
}
