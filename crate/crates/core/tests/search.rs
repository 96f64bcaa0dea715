mod support;

use nilcalc::complex::{is_integrable, moduli_bound, nijenhuis_vanishes, zero_two_vanishes, AlmostComplexStructure};
use nilcalc::search::{
    best_rational, minimize, rationalize, reference_structures, residual, solve_ll_ansatz, structure_from_chart,
    CellParameter, Outcome, ResidualProblem, SearchOptions,
};
use nilcalc::scalar::rational;
use nilcalc::{LieAlgebraSpec, Matrix, Rational};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{g, spec};

fn options(restarts: usize) -> SearchOptions {
    SearchOptions {
        restarts,
        ..SearchOptions::default()
    }
}

#[test]
fn residual_vanishes_exactly_on_integrable_references() {
    let reference = AlmostComplexStructure::<Rational>::standard(6).unwrap();
    let zero = CellParameter {
        reference: reference.clone(),
        z: vec![Complex64::new(0.0, 0.0); 9],
    };
    assert_eq!(residual(&LieAlgebraSpec::abelian(6).unwrap(), &zero).unwrap(), 0.0);
    assert!(residual(&spec("(0,0,0,12,13,14+23)"), &zero).unwrap() > 1e-3);
    let bad = CellParameter {
        reference,
        z: vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
        ],
    };
    assert!(!bad.is_admissible());
    assert!(residual(&LieAlgebraSpec::abelian(6).unwrap(), &bad).is_err());
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let specs = ["(0,0,0,12,13,14+23)", "(0,0,12,13,23,14+25)", "(0,0,0,0,13+42,14+23)", "(0,0,0,12)"];
    let mut points = 0;
    for t in specs {
        let gr = spec(t);
        for reference in reference_structures(gr.dim()).unwrap().iter().step_by(7).take(3) {
            let problem = ResidualProblem::new(&gr, reference).unwrap();
            for _ in 0..5 {
                let x = support::random_chart_point(gr.dim() / 2, &mut rng);
                let err = support::finite_difference_error(&problem, &x, 1e-5);
                assert!(err < 1e-6, "{t}: relative error {err}");
                points += 1;
            }
        }
    }
    assert!(points >= 40);
}

#[test]
fn continued_fractions() {
    assert_eq!(best_rational(2.0000000001, 64), rational(2, 1));
    assert_eq!(best_rational(-0.3333333333, 64), rational(-1, 3));
    assert_eq!(best_rational(std::f64::consts::PI, 10), rational(22, 7));
    assert_eq!(best_rational(0.0, 64), rational(0, 1));
}

#[test]
fn rationalize_rounds_near_exact_points() {
    let gr = LieAlgebraSpec::abelian(4).unwrap();
    let reference = reference_structures(4).unwrap()[0].clone();
    let exact = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.25), Complex64::new(-0.2, 0.0), Complex64::new(0.0, 0.0)];
    let noisy: Vec<Complex64> = exact.iter().map(|c| c + Complex64::new(1e-11, -1e-11)).collect();
    let w = rationalize(&gr, &reference, &noisy, 64, 1e-12).unwrap().expect("rounds back");
    assert_eq!(w.z.get(0, 0).re, rational(1, 2));
    assert_eq!(w.z.get(0, 1).im, rational(1, 4));
    assert_eq!(w.z.get(1, 0).re, rational(-1, 5));
    assert!(is_integrable(&gr, &w.acs).unwrap());
    let iwasawa = spec("(0,0,0,0,13+42,14+23)");
    let generic: Vec<Complex64> = (0..9).map(|k| Complex64::new(0.1 * k as f64 + 0.013, -0.07)).collect();
    assert!(rationalize(&iwasawa, &reference_structures(6).unwrap()[0], &generic, 64, 1e-12).unwrap().is_none());
}

#[test]
fn search_is_deterministic() {
    let gr = spec("(0,0,0,12,13,24)");
    let opts = SearchOptions {
        seed: 5,
        restarts: 40,
        ..SearchOptions::default()
    };
    let a = minimize(&gr, &opts).unwrap();
    let b = minimize(&gr, &opts).unwrap();
    assert_eq!(a.outcome, b.outcome);
    assert_eq!(a.restarts_used, b.restarts_used);
    assert_eq!(a.final_residual.to_bits(), b.final_residual.to_bits());
    assert_eq!(a.witness.map(|w| w.z), b.witness.map(|w| w.z));
}

#[test]
fn witnesses_are_sound() {
    for t in ["(0,0,0,0,0,0)", "(0,0,0,12,13,14+23)", "(0,0,0,12)", "(0,0,0,0)"] {
        let gr = spec(t);
        let report = minimize(&gr, &SearchOptions::default()).unwrap();
        assert_eq!(report.outcome, Outcome::Witness, "{t}");
        let w = report.witness.unwrap();
        assert!(nijenhuis_vanishes(&gr, &w.acs).unwrap() && zero_two_vanishes(&gr, &w.acs).unwrap(), "{t}");
    }
    let abelian = minimize(&LieAlgebraSpec::abelian(6).unwrap(), &options(1)).unwrap();
    assert_eq!(abelian.restarts_used, 1);
}

#[test]
fn chart_origin_is_reference() {
    for reference in reference_structures(4).unwrap() {
        let zero = Matrix::zeros(2, 2);
        assert_eq!(structure_from_chart(&reference, &zero).unwrap().matrix(), reference.matrix());
    }
    assert_eq!(reference_structures(4).unwrap().len(), 6);
    assert_eq!(reference_structures(6).unwrap().len(), 60);
}

#[test]
fn ll_ansatz_solutions() {
    let gr = spec("(0,0,0,12,13,14+23)");
    let ws = solve_ll_ansatz(&gr).unwrap();
    assert!(!ws.is_empty());
    for w in &ws {
        assert!(is_integrable(&gr, &w.acs).unwrap());
        if w.c == g(0, 1) {
            assert_eq!(w.a.clone() * w.b.clone(), g(0, 1) * (w.a.clone() + w.b.clone()));
        }
    }
    assert!(ws.iter().any(|w| w.a == g(0, 2) && w.b == g(0, 2) && w.c == g(0, 1)));
    let with_a_i = solve_ll_ansatz(&spec("(0,0,0,12,13,24)")).unwrap();
    assert!(with_a_i.iter().any(|w| w.a == g(0, 1)));
    let abelian = solve_ll_ansatz(&LieAlgebraSpec::abelian(6).unwrap()).unwrap();
    assert!(abelian.iter().any(|w| w.a == g(0, 1) && w.b == g(0, 1) && w.c == g(0, 1)));
    assert!(solve_ll_ansatz(&spec("(0,0,12,13,23,14+25)")).is_err());
}

#[test]
fn ll_witness_moduli_bound() {
    let gr = spec("(0,0,0,12,13,14+23)");
    let w = solve_ll_ansatz(&gr).unwrap().into_iter().next().unwrap();
    assert_eq!(moduli_bound(&gr, &w.acs).unwrap(), 5);
}

#[test]
#[ignore = "runs the full default search budget on five algebras"]
fn neither_rows_at_default_budget() {
    for entry in nilcalc::catalog::neither_structure_check(&SearchOptions::default()).unwrap() {
        assert!(!entry.symplectic_exists && entry.table_dashes);
        assert_eq!(entry.search, Outcome::NoneFound, "{}", entry.tuple);
    }
}
