//! Independent reference computations used as oracles by the integration
//! tests. Nothing here calls into the library: tuples are parsed afresh,
//! forms are maps from sorted index lists, and linear algebra is plain
//! Gaussian elimination over `BigRational`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Q = BigRational;
pub type OForm = BTreeMap<Vec<u8>, Q>;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `(0,0,12,13,14+23,34-52)` into the differentials `de^k`.
pub fn parse_tuple(text: &str) -> Vec<OForm> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(',')
        .map(|entry| {
            let mut form = OForm::new();
            let entry = entry.trim();
            if entry == "0" {
                return form;
            }
            let mut sign = 1i64;
            let mut digits = Vec::new();
            let flush = |sign: i64, digits: &mut Vec<u8>, form: &mut OForm| {
                if digits.is_empty() {
                    return;
                }
                assert_eq!(digits.len(), 2, "bad term in {entry}");
                let (i, j) = (digits[0], digits[1]);
                let (key, s) = if i < j { (vec![i, j], sign) } else { (vec![j, i], -sign) };
                add(form, key, q(s));
                digits.clear();
            };
            for ch in entry.chars() {
                match ch {
                    '+' => {
                        flush(sign, &mut digits, &mut form);
                        sign = 1;
                    }
                    '-' => {
                        flush(sign, &mut digits, &mut form);
                        sign = -1;
                    }
                    c => digits.push(c.to_digit(10).expect("digit") as u8),
                }
            }
            flush(sign, &mut digits, &mut form);
            form
        })
        .collect()
}

pub fn add(form: &mut OForm, key: Vec<u8>, c: Q) {
    let entry = form.entry(key.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        form.remove(&key);
    }
}

/// `a ∧ b` for sorted index lists, with the sign of the sorting permutation.
pub fn wedge_keys(a: &[u8], b: &[u8]) -> Option<(i64, Vec<u8>)> {
    let mut all: Vec<u8> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    for i in 0..all.len() {
        for j in 0..all.len() - 1 - i {
            if all[j] == all[j + 1] {
                return None;
            }
            if all[j] > all[j + 1] {
                all.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if all.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, all))
}

pub fn wedge(a: &OForm, b: &OForm) -> OForm {
    let mut out = OForm::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            if let Some((s, k)) = wedge_keys(ka, kb) {
                add(&mut out, k, q(s) * ca * cb);
            }
        }
    }
    out
}

pub fn scale(a: &OForm, c: &Q) -> OForm {
    a.iter().map(|(k, v)| (k.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

pub fn sum(a: &OForm, b: &OForm) -> OForm {
    let mut out = a.clone();
    for (k, v) in b {
        add(&mut out, k.clone(), v.clone());
    }
    out
}

/// `d` extended by the Leibniz rule.
pub fn d(de: &[OForm], form: &OForm) -> OForm {
    let mut out = OForm::new();
    for (key, c) in form {
        for p in 0..key.len() {
            let mut left = OForm::new();
            left.insert(key[..p].to_vec(), q(if p % 2 == 0 { 1 } else { -1 }));
            let mut right = OForm::new();
            right.insert(key[p + 1..].to_vec(), q(1));
            let term = wedge(&wedge(&left, &de[key[p] as usize - 1]), &right);
            out = sum(&out, &scale(&term, c));
        }
    }
    out
}

/// Sorted index lists of length `k` from `1..=m`.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<u8>> {
    fn go(start: u8, m: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m as u8, k, &mut Vec::new(), &mut out);
    out
}

pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn det(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut out = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            out = -out;
        }
        out *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for k in c..n {
                let v = &a[c][k] * &f;
                a[i][k] -= v;
            }
        }
    }
    out
}

/// Matrix of `d: Λ^k → Λ^{k+1}` as rows indexed by `Λ^k`.
pub fn d_rows(de: &[OForm], k: usize) -> Vec<Vec<Q>> {
    let m = de.len();
    let target = subsets(m, k + 1);
    subsets(m, k)
        .into_iter()
        .map(|key| {
            let mut f = OForm::new();
            f.insert(key, q(1));
            let df = d(de, &f);
            target.iter().map(|t| df.get(t).cloned().unwrap_or_else(Q::zero)).collect()
        })
        .collect()
}

pub fn betti(tuple: &str) -> Vec<usize> {
    let de = parse_tuple(tuple);
    let m = de.len();
    let ranks: Vec<usize> = (0..=m)
        .map(|k| if k == m { 0 } else { rank(d_rows(&de, k)) })
        .collect();
    (0..=m)
        .map(|k| {
            let dim = subsets(m, k).len();
            dim - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }
        })
        .collect()
}

/// Whether `d² = 0` on generators.
pub fn is_lie(tuple: &str) -> bool {
    let de = parse_tuple(tuple);
    de.iter().all(|f| d(&de, f).is_empty())
}

/// `[e_i, e_j]` read off the coefficient of `e^{ij}` in each `de^k`.
fn bracket(de: &[OForm], x: &[Q], y: &[Q]) -> Vec<Q> {
    let m = de.len();
    (0..m)
        .map(|k| {
            let mut acc = Q::zero();
            for (key, c) in &de[k] {
                let (i, j) = (key[0] as usize - 1, key[1] as usize - 1);
                acc += c * (&x[i] * &y[j] - &x[j] * &y[i]);
            }
            acc
        })
        .collect()
}

fn span_basis(vectors: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(trial) > basis.len() {
            basis.push(v);
        }
    }
    basis
}

/// Nilpotency step from the lower central series, `None` if it stalls.
pub fn step(tuple: &str) -> Option<usize> {
    let de = parse_tuple(tuple);
    let m = de.len();
    let unit = |i: usize| (0..m).map(|k| q((k == i) as i64)).collect::<Vec<Q>>();
    let mut current: Vec<Vec<Q>> = (0..m).map(unit).collect();
    let mut s = 0;
    while !current.is_empty() {
        let next = span_basis(
            (0..m)
                .flat_map(|i| current.iter().map(move |v| (i, v.clone())))
                .map(|(i, v)| bracket(&de, &unit(i), &v))
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect(),
        );
        if next.len() == current.len() {
            return None;
        }
        current = next;
        s += 1;
    }
    Some(s)
}

/// Antisymmetric matrix of a 2-form.
pub fn two_form_matrix(m: usize, sigma: &OForm) -> Vec<Vec<Q>> {
    let mut a = vec![vec![Q::zero(); m]; m];
    for (key, c) in sigma {
        let (i, j) = (key[0] as usize - 1, key[1] as usize - 1);
        a[i][j] = c.clone();
        a[j][i] = -c.clone();
    }
    a
}

/// Parses `e12 + e34 - 2*e56` style forms with single-digit indices.
pub fn parse_form(text: &str) -> OForm {
    let mut form = OForm::new();
    let cleaned = text.replace(' ', "");
    let mut chunks: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        chunks.push(cur);
    }
    for chunk in chunks {
        let (sign, rest) = match chunk.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, chunk.trim_start_matches('+')),
        };
        let (coeff, mono) = match rest.split_once('*') {
            Some((c, m)) => (c.parse::<BigRational>().expect("coefficient"), m),
            None => (q(1), rest),
        };
        let digits: Vec<u8> = mono
            .trim_start_matches('e')
            .chars()
            .map(|c| c.to_digit(10).expect("digit") as u8)
            .collect();
        let mut sorted = OForm::new();
        sorted.insert(Vec::new(), q(sign) * coeff);
        for i in digits {
            let mut g = OForm::new();
            g.insert(vec![i], q(1));
            sorted = wedge(&sorted, &g);
        }
        form = sum(&form, &sorted);
    }
    form
}

/// Basis of closed 2-forms by elimination on the transpose of `d` on `Λ²`.
pub fn closed_two_forms(tuple: &str) -> Vec<OForm> {
    let de = parse_tuple(tuple);
    let m = de.len();
    let pairs = subsets(m, 2);
    let rows = d_rows(&de, 2);
    let cols = rows[0].len();
    // Solve x^T D = 0: eliminate on the transposed system.
    let mut a: Vec<Vec<Q>> = (0..cols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    let n = pairs.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for k in 0..n {
            a[r][k] = &a[r][k] / &pv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let v = &a[r][k] * &f;
                    a[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut form = OForm::new();
            form.insert(pairs[free].clone(), q(1));
            for (row, &pc) in pivots.iter().enumerate() {
                let v = -a[row][free].clone();
                if !v.is_zero() {
                    form.insert(pairs[pc].clone(), v);
                }
            }
            form
        })
        .collect()
}

/// Whether the structure with `ω^k = e^{2k-1} + i e^{2k}` is integrable: every `(dω^k)^{0,2}` vanishes. Under `e^{2k-1} ↦ ω̄^k/2`,
/// `e^{2k} ↦ i ω̄^k/2`, a term `b e^{xy}` contributes `b φ_x φ_y ω̄^{k(x)k(y)}`.
pub fn standard_structure_integrable(tuple: &str) -> bool {
    let de = parse_tuple(tuple);
    let n = de.len() / 2;
    // Complex numbers as (re, im).
    let phi = |x: u8| if x % 2 == 1 { (q(1), q(0)) } else { (q(0), q(1)) };
    let mul = |a: &(Q, Q), b: &(Q, Q)| (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0);
    (0..n).all(|k| {
        let parts = [(&de[2 * k], (q(1), q(0))), (&de[2 * k + 1], (q(0), q(1)))];
        let mut acc: BTreeMap<(u8, u8), (Q, Q)> = BTreeMap::new();
        for (form, unit) in parts {
            for (key, c) in form {
                let (x, y) = (key[0], key[1]);
                let (a, b) = ((x + 1) / 2, (y + 1) / 2);
                if a == b {
                    continue;
                }
                let v = mul(&mul(&unit, &phi(x)), &phi(y));
                let e = acc.entry((a, b)).or_insert((q(0), q(0)));
                e.0 += c * &v.0;
                e.1 += c * &v.1;
            }
        }
        acc.values().all(|(re, im)| re.is_zero() && im.is_zero())
    })
}

/// Coordinates on `e12, e13, e14, e23, e24, e34` of the pullback of `form`
/// under `e^i ↦ Σ_j theta[j][i] e^j`, in floating point.
pub fn pullback4(form: &OForm, theta: &[Vec<f64>]) -> Vec<f64> {
    let pairs = subsets(4, 2);
    let f = |x: &Q| x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap();
    let mut out = vec![0.0; 6];
    for (key, c) in form {
        let (a, b) = (key[0] as usize - 1, key[1] as usize - 1);
        for (slot, p) in pairs.iter().enumerate() {
            let (k, l) = (p[0] as usize - 1, p[1] as usize - 1);
            out[slot] += f(c) * (theta[k][a] * theta[l][b] - theta[l][a] * theta[k][b]);
        }
    }
    out
}

/// Numerical rank with singular values below `tol · σ_max` dropped.
pub fn numeric_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let m = nalgebra::DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.max();
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// `φ(σ, τ)` with `σ∧τ = φ(σ,τ) e1234`.
pub fn pairing4(a: &OForm, b: &OForm) -> Q {
    wedge(a, b).get(&vec![1, 2, 3, 4]).cloned().unwrap_or_else(Q::zero)
}

/// Positive definiteness by leading principal minors.
pub fn sylvester(a: &[Vec<Q>]) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Vec<Vec<Q>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(minor) > Q::zero()
    })
}
