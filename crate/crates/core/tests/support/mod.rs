//! Random inputs built with the library's own types.

#![allow(dead_code)]

use nilcalc::catalog::{load_catalog, witness_store};
use nilcalc::complex::{AlmostComplexStructure, ExactStructure};
use nilcalc::scalar::int;
use nilcalc::{GaussianRational, LieAlgebraSpec, Matrix, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn spec(t: &str) -> LieAlgebraSpec {
    LieAlgebraSpec::parse(t).unwrap()
}

pub fn random_invertible(m: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    loop {
        let t = Matrix::from_fn(m, m, |_, _| int(rng.gen_range(-2..=2)));
        if t.inverse().is_some() {
            return t;
        }
    }
}

/// `P⁻¹ J₀ P` for the standard `J₀` and a random integer `P`.
pub fn random_structure(m: usize, rng: &mut ChaCha8Rng) -> AlmostComplexStructure<Rational> {
    let p = random_invertible(m, rng);
    let j0 = AlmostComplexStructure::<Rational>::standard(m).unwrap();
    let j = p.inverse().unwrap().mul(j0.matrix()).mul(&p);
    AlmostComplexStructure::from_matrix(j).unwrap()
}

/// `(spec, J)` rewritten in the coframe `f^i = Σ_j t[j][i] e^j`.
pub fn transport(
    g: &LieAlgebraSpec,
    j: &AlmostComplexStructure<Rational>,
    t: &Matrix<Rational>,
) -> (LieAlgebraSpec, AlmostComplexStructure<Rational>) {
    let inv = t.inverse().unwrap();
    let m = g.dim();
    let rows = j
        .coframe()
        .iter()
        .map(|c| {
            (0..m)
                .map(|i| {
                    (0..m).fold(GaussianRational::new(int(0), int(0)), |acc, k| {
                        let s = inv.get(i, k);
                        GaussianRational::new(acc.re + s * &c[k].re, acc.im + s * &c[k].im)
                    })
                })
                .collect()
        })
        .collect();
    (g.change_basis(t).unwrap(), AlmostComplexStructure::from_coframe(rows).unwrap())
}

/// Stored complex witnesses with their algebras.
pub fn stored_pairs() -> Vec<(LieAlgebraSpec, AlmostComplexStructure<Rational>)> {
    witness_store()
        .into_iter()
        .filter_map(|w| {
            let ExactStructure::Rational(j) = w.complex?.structure().unwrap() else {
                panic!("stored witnesses are rational");
            };
            Some((spec(&w.tuple), j))
        })
        .collect()
}

pub const FOUR_DIMENSIONAL: [&str; 3] = ["(0,0,0,0)", "(0,0,0,12)", "(0,0,12,13)"];

/// Alternates transported witnesses, which are integrable, with random
/// structures on random algebras of dimension 4 or 6.
pub fn random_pairs(count: usize, rng: &mut ChaCha8Rng) -> Vec<(LieAlgebraSpec, AlmostComplexStructure<Rational>)> {
    let stored = stored_pairs();
    let mut integrable = vec![
        (spec("(0,0,0,0)"), AlmostComplexStructure::standard(4).unwrap()),
        (
            spec("(0,0,0,12)"),
            AlmostComplexStructure::from_coframe(vec![
                vec![g(1, 0), g(0, 1), g(0, 0), g(0, 0)],
                vec![g(0, 0), g(0, 0), g(1, 0), g(0, 1)],
            ])
            .unwrap(),
        ),
    ];
    integrable.extend(stored);
    let catalog: Vec<String> = load_catalog().into_iter().map(|r| r.tuple).collect();
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let (g, j) = &integrable[rng.gen_range(0..integrable.len())];
                transport(g, j, &random_invertible(g.dim(), rng))
            } else if rng.gen_bool(0.3) {
                (spec(FOUR_DIMENSIONAL[rng.gen_range(0..3)]), random_structure(4, rng))
            } else {
                (spec(&catalog[rng.gen_range(0..catalog.len())]), random_structure(6, rng))
            }
        })
        .collect()
}

pub fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

/// `‖J - J_fd‖ / ‖J‖` with central differences of step `h` on the real
/// residual of `problem`.
pub fn finite_difference_error(problem: &nilcalc::search::ResidualProblem, x: &[f64], h: f64) -> f64 {
    let (_, jac) = problem.real_system(x);
    let mut worst: f64 = 0.0;
    let mut total = 0.0;
    for b in 0..x.len() {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[b] += h;
        minus[b] -= h;
        let rp = problem.real_system(&plus).0;
        let rm = problem.real_system(&minus).0;
        for a in 0..rp.len() {
            let fd = (rp[a] - rm[a]) / (2.0 * h);
            let diff = fd - jac[(a, b)];
            worst = worst.max(diff.abs());
            total += diff * diff;
        }
    }
    let norm = jac.norm();
    if norm == 0.0 {
        worst
    } else {
        total.sqrt() / norm
    }
}

/// A random admissible point of the chart as `(Re Z, Im Z)`.
pub fn random_chart_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let z = nilcalc::search::random_start(n, rng.gen(), rng.gen_range(0..1000));
    z.iter().map(|c| c.re).chain(z.iter().map(|c| c.im)).collect()
}

/// The structure with coframe `e^a + i s e^b` for each `(a, b, s)`.
pub fn paired(pairs: &[(usize, usize, i64)]) -> AlmostComplexStructure<Rational> {
    let m = 2 * pairs.len();
    let rows = pairs
        .iter()
        .map(|&(a, b, s)| {
            let mut row = vec![g(0, 0); m];
            row[a - 1] = g(1, 0);
            row[b - 1] = g(0, s);
            row
        })
        .collect();
    AlmostComplexStructure::from_coframe(rows).unwrap()
}

pub const IWASAWA: &str = "(0,0,0,0,13+42,14+23)";

pub fn iwasawa_j0() -> AlmostComplexStructure<Rational> {
    paired(&[(1, 2, 1), (3, 4, 1), (5, 6, 1)])
}

pub fn iwasawa_j1() -> AlmostComplexStructure<Rational> {
    paired(&[(1, 2, 1), (3, 4, -1), (5, 6, -1)])
}
