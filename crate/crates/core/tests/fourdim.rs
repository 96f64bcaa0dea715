mod common;

use nilcalc::exterior::parse_form;
use nilcalc::fourdim::{
    gram_and_discriminant, lambda_basis, normalize_lambda, pairing, pairing_signature, reference_triple,
    selfdual_space, simple_pair_normal_form, standard_volume, verify_lambda, LambdaCase, PairCase,
};
use nilcalc::scalar::{int, rational};
use nilcalc::{Form, Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn lambda_oracle(a: &Rational, b: &Rational, c: &Rational) -> Vec<common::OForm> {
    let mut third = common::OForm::new();
    common::add(&mut third, vec![1, 4], a.clone());
    common::add(&mut third, vec![2, 4], -b.clone());
    common::add(&mut third, vec![2, 3], c.clone());
    vec![common::parse_form("e12 + e34"), common::parse_form("e13 - e24"), third]
}

#[test]
fn pairing_examples() {
    let v = standard_volume::<Rational>();
    let f = |t: &str| parse_form(4, t).unwrap();
    assert_eq!(pairing(&f("e12 + e34"), &f("e12 + e34"), &v).unwrap(), int(2));
    assert_eq!(pairing(&f("e12"), &f("e13"), &v).unwrap(), int(0));
    assert_eq!(pairing(&f("e12"), &f("e34"), &v).unwrap(), int(1));
    assert!(pairing(&f("e12"), &f("e34"), &Form::zero(4)).is_err());
}

#[test]
fn signature_is_three_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let k = random_rational(&mut rng);
        if k == int(0) {
            continue;
        }
        let v = parse_form(4, "e1234").unwrap().scale(&k);
        assert_eq!(pairing_signature(&v).unwrap(), (3, 3, 0));
    }
}

#[test]
fn gram_examples() {
    let g = gram_and_discriminant(&int(1), &int(0), &int(1)).unwrap();
    assert_eq!(g.gram, Matrix::identity(3).scale(&int(2)));
    assert_eq!(g.discriminant, int(-4));
    assert!(g.positive_definite);
    assert!(!gram_and_discriminant(&int(1), &int(0), &int(-1)).unwrap().positive_definite);
    let z = gram_and_discriminant(&int(1), &int(2), &int(1)).unwrap();
    assert_eq!(z.discriminant, int(0));
    assert!(!z.positive_definite);
    assert!(gram_and_discriminant(&int(0), &int(1), &int(1)).is_err());
}

#[test]
fn definiteness_matches_sylvester() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..300 {
        let (a, b, c) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        if a == int(0) {
            continue;
        }
        let forms = lambda_oracle(&a, &b, &c);
        let gram: Vec<Vec<Rational>> = forms
            .iter()
            .map(|x| forms.iter().map(|y| common::pairing4(x, y)).collect())
            .collect();
        let got = gram_and_discriminant(&a, &b, &c).unwrap();
        assert_eq!(got.gram.to_rows(), gram);
        assert_eq!(got.positive_definite, common::sylvester(&gram), "({a},{b},{c})");
    }
}

#[test]
fn normal_form_cases() {
    let n = normalize_lambda(&int(1), &int(0), &int(1)).unwrap();
    assert_eq!(n.case, LambdaCase::Minus);
    assert_eq!(normalize_lambda(&int(1), &int(0), &int(-1)).unwrap().case, LambdaCase::Plus);
    assert_eq!(normalize_lambda(&int(1), &int(2), &int(1)).unwrap().case, LambdaCase::Zero);
    assert_eq!(normalize_lambda(&int(2), &int(3), &int(0)).unwrap().case, LambdaCase::Plus);
    assert!(normalize_lambda(&int(0), &int(1), &int(1)).is_err());
}

#[test]
fn normal_forms_span_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut seen = [0usize; 3];
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        if a == int(0) {
            continue;
        }
        let b = if rng.gen_bool(0.2) { int(0) } else { random_rational(&mut rng) };
        let c = if rng.gen_bool(0.2) { b.clone() * &b / (int(4) * &a) } else { random_rational(&mut rng) };
        let n = normalize_lambda(&a, &b, &c).unwrap();
        seen[n.case as usize] += 1;
        assert!(verify_lambda(&n, &a, &b, &c).unwrap());
        let theta: Vec<Vec<f64>> = n.theta.to_rows().iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect();
        let refs: Vec<common::OForm> = reference_triple(n.case)
            .iter()
            .map(|f| common::parse_form(&f.to_string()))
            .collect();
        let image: Vec<Vec<f64>> = refs.iter().map(|f| common::pullback4(f, &theta)).collect();
        let identity: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u8 as f64).collect()).collect();
        let target: Vec<Vec<f64>> = lambda_oracle(&a, &b, &c).iter().map(|f| common::pullback4(f, &identity)).collect();
        assert_eq!(common::numeric_rank(&image, 1e-9), 3);
        let both: Vec<Vec<f64>> = image.iter().chain(&target).cloned().collect();
        assert_eq!(common::numeric_rank(&both, 1e-9), 3, "({a},{b},{c})");
    }
    assert!(seen.iter().all(|&k| k > 0), "{seen:?}");
}

#[test]
fn simple_pairs() {
    let f = |t: &str| parse_form(4, t).unwrap();
    let (t, case) = simple_pair_normal_form(&f("e12"), &f("e34")).unwrap();
    assert_eq!(case, PairCase::Disjoint);
    assert_eq!(f("e12").pullback(&t).unwrap(), f("e12"));
    let (sigma, tau) = (f("e12 + e13"), f("e23"));
    let (t, case) = simple_pair_normal_form(&sigma, &tau).unwrap();
    assert_eq!(case, PairCase::SharedLine);
    assert_eq!(sigma.pullback(&t).unwrap(), f("e12"));
    assert_eq!(tau.pullback(&t).unwrap(), f("e13"));
    assert!(simple_pair_normal_form(&f("e12 + e34"), &f("e13")).is_err());
    assert!(simple_pair_normal_form(&f("e12"), &f("2*e12")).is_err());
}

#[test]
fn random_simple_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let vector = |rng: &mut ChaCha8Rng| (0..4).map(|_| int(rng.gen_range(-3..=3))).collect::<Vec<_>>();
    let mut cases = [0usize; 2];
    for _ in 0..100 {
        let (u, v, w, x) = (vector(&mut rng), vector(&mut rng), vector(&mut rng), vector(&mut rng));
        let lin = |v: &Vec<Rational>| Form::from_linear(v);
        let sigma = lin(&u).wedge(&lin(&v));
        let shared = rng.gen_bool(0.5);
        let tau = if shared { lin(&u).wedge(&lin(&w)) } else { lin(&w).wedge(&lin(&x)) };
        assert!(sigma.wedge(&sigma).is_zero());
        let Ok((t, case)) = simple_pair_normal_form(&sigma, &tau) else {
            continue;
        };
        cases[case as usize] += 1;
        assert_eq!(sigma.pullback(&t).unwrap(), parse_form(4, "e12").unwrap());
        let expect = if case == PairCase::SharedLine { "e13" } else { "e34" };
        assert_eq!(tau.pullback(&t).unwrap(), parse_form(4, expect).unwrap());
        assert_eq!(case == PairCase::SharedLine, sigma.wedge(&tau).is_zero());
    }
    assert!(cases.iter().all(|&k| k > 0), "{cases:?}");
    let generic = parse_form(4, "e12 + e34").unwrap();
    assert!(!generic.wedge(&generic).is_zero());
}

#[test]
fn selfdual_forms() {
    let forms = selfdual_space(&Matrix::identity(4)).unwrap();
    let v = standard_volume::<Rational>();
    let expect: Vec<Form<Rational>> = ["e12 + e34", "e13 + e42", "e14 + e23"]
        .iter()
        .map(|t| parse_form(4, t).unwrap())
        .collect();
    assert_eq!(forms, expect);
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate() {
            assert_eq!(pairing(a, b, &v).unwrap(), if i == j { int(2) } else { int(0) });
        }
    }
    let minus = nilcalc::fourdim::annihilator(&forms, &v).unwrap();
    assert_eq!(minus.len(), 3);
    let gram = nilcalc::fourdim::gram(&minus, &v).unwrap();
    let negated: Vec<Vec<Rational>> = gram.to_rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    assert!(common::sylvester(&negated));
    assert_eq!(lambda_basis(&int(1), &int(0), &int(1))[2], expect[2]);
}
