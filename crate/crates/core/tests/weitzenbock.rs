use bochner_core::curvature::*;
use bochner_core::forms::random_pq_form;
use bochner_core::holonomy::{AlgebraKind, HolonomySubalgebra};
use bochner_core::rng::{complex_normal, seeded, Rng};
use bochner_core::tensor::{ComplexTensor, EuclideanSpace};
use bochner_core::weitzenbock::*;

fn random_tensor(d: usize, rank: usize, rng: &mut Rng) -> ComplexTensor {
    ComplexTensor::from_fn(d, rank, |_| complex_normal(rng))
}

#[test]
fn prop24_on_model_and_algebra_pairs() {
    let mut rng = seeded(31);
    let kahler = EuclideanSpace::kahler(2).unwrap();
    let quat = EuclideanSpace::quaternionic(2).unwrap();
    let cases = vec![
        (model(ModelKind::Chsc(1.0), &kahler).unwrap(), AlgebraKind::U, 3),
        (random_kahler(&kahler, &mut rng).unwrap(), AlgebraKind::U, 3),
        (model(ModelKind::ConstantSectional(-0.7), &kahler).unwrap(), AlgebraKind::So, 3),
        (model(ModelKind::Hpm, &quat).unwrap(), AlgebraKind::SpSp1, 2),
        (random_quaternion_kahler(&quat, &mut rng, 0.3).unwrap(), AlgebraKind::SpSp1, 2),
    ];
    for (rm, kind, max_rank) in cases {
        let g = HolonomySubalgebra::build(rm.space(), kind).unwrap();
        for i in 0..50 {
            let rank = 1 + i % max_rank;
            let t = random_tensor(rm.dim(), rank, &mut rng);
            let r = verify_prop24(&rm, &g, &t).unwrap();
            assert!(r.pass, "{kind} rank {rank}: {r:?}");
        }
    }
    let flat = model(ModelKind::Flat, &kahler).unwrap();
    let g = HolonomySubalgebra::build(&kahler, AlgebraKind::U).unwrap();
    let r = verify_prop24(&flat, &g, &random_tensor(4, 2, &mut rng)).unwrap();
    assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
}

#[test]
fn prop24_refuses_leaky_operators() {
    let mut rng = seeded(32);
    let s = EuclideanSpace::kahler(2).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    let rm = model(ModelKind::ConstantSectional(1.0), &s).unwrap();
    assert!(verify_prop24(&rm, &g, &random_tensor(4, 1, &mut rng)).is_err());
}

#[test]
fn weitzenbock_is_self_adjoint() {
    let mut rng = seeded(33);
    let s = EuclideanSpace::kahler(2).unwrap();
    let rm = random_kahler(&s, &mut rng).unwrap();
    for _ in 0..10 {
        let t = random_tensor(4, 2, &mut rng);
        let u = random_tensor(4, 2, &mut rng);
        let a = weitzenbock_ric(&rm, &t).unwrap().hermitian_inner(&u).unwrap();
        let b = t.hermitian_inner(&weitzenbock_ric(&rm, &u).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
    }
    let general = random_curvature(&EuclideanSpace::real(6).unwrap(), &mut rng);
    let t = random_tensor(6, 3, &mut rng);
    let u = random_tensor(6, 3, &mut rng);
    let a = weitzenbock_ric(&general, &t).unwrap().hermitian_inner(&u).unwrap();
    let b = t.hermitian_inner(&weitzenbock_ric(&general, &u).unwrap()).unwrap();
    assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
}

#[test]
fn curvature_term_routes_agree() {
    let mut rng = seeded(34);
    for n in [2, 3] {
        let s = EuclideanSpace::kahler(n).unwrap();
        let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
        let rm = random_kahler(&s, &mut rng).unwrap();
        for rank in 1..=3 {
            let term = curvature_term(rm.operator(), &g, &random_tensor(2 * n, rank, &mut rng)).unwrap();
            assert!(term.routes_agree(), "{term:?}");
            let weights: f64 = term.per_eigenvalue.iter().map(|(_, w)| w).sum();
            assert!((weights - term.sharp_norm_sq).abs() < 1e-9 * term.sharp_norm_sq);
        }
    }
}

#[test]
fn chsc_term_is_positive_on_one_zero_forms() {
    let mut rng = seeded(35);
    let s = EuclideanSpace::kahler(3).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    let rm = model(ModelKind::Chsc(1.0), &s).unwrap();
    let phi = random_pq_form(&s, 1, 0, &mut rng).unwrap();
    let term = curvature_term(rm.operator(), &g, phi.tensor()).unwrap();
    assert!(term.value > 0.0 && term.routes_agree());
    let flat = model(ModelKind::Flat, &s).unwrap();
    assert_eq!(curvature_term(flat.operator(), &g, phi.tensor()).unwrap().value, 0.0);
}

#[test]
fn lemma26_on_one_zero_forms() {
    let mut rng = seeded(36);
    let n = 3;
    let s = EuclideanSpace::kahler(n).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    let samples: Vec<ComplexTensor> = (0..20)
        .map(|_| random_pq_form(&s, 1, 0, &mut rng).unwrap().tensor().clone())
        .collect();

    let chsc = model(ModelKind::Chsc(1.0), &s).unwrap();
    let spectrum = restricted_spectrum(chsc.operator(), &g).unwrap().eigenvalues;
    let input = Lemma26Input { algebra: &g, spectrum: &spectrum, c: n as f64, ell: n, kappa: 0.0 };
    let r = verify_lemma26(&input, &samples, &mut rng).unwrap();
    assert_eq!(r.admitted, 20);
    assert!(r.premise_holds && r.strict_premise && r.pass, "{r:?}");

    let nonneg: Vec<f64> = (0..9).map(|i| i as f64 * 0.25).collect();
    let input = Lemma26Input { algebra: &g, spectrum: &nonneg, c: n as f64, ell: 1, kappa: 0.0 };
    let r = verify_lemma26(&input, &samples, &mut rng).unwrap();
    assert!(r.premise_holds && r.pass && r.min_margin.unwrap() >= -1e-12);

    let zero = vec![0.0; 9];
    let input = Lemma26Input { algebra: &g, spectrum: &zero, c: n as f64, ell: 2, kappa: 0.0 };
    let r = verify_lemma26(&input, &samples, &mut rng).unwrap();
    assert!(r.pass && r.min_margin.unwrap().abs() < 1e-12);

    // negative curvature lower bound with κ < 0
    let neg: Vec<f64> = (0..9).map(|i| -1.0 + i as f64 * 0.1).collect();
    let input = Lemma26Input { algebra: &g, spectrum: &neg, c: n as f64, ell: 3, kappa: -1.0 };
    let r = verify_lemma26(&input, &samples, &mut rng).unwrap();
    assert!(r.premise_holds && r.pass, "{r:?}");
}

#[test]
fn lemma26_rejects_tensors_outside_the_hypothesis() {
    let mut rng = seeded(37);
    let s = EuclideanSpace::kahler(2).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    // generic rank-2 tensors do not satisfy the bound with C = 4
    let samples: Vec<ComplexTensor> = (0..5).map(|_| random_tensor(4, 2, &mut rng)).collect();
    let spectrum = vec![1.0; 4];
    let input = Lemma26Input { algebra: &g, spectrum: &spectrum, c: 4.0, ell: 4, kappa: 0.0 };
    let r = verify_lemma26(&input, &samples, &mut rng).unwrap();
    assert_eq!(r.rejected, 5);
    assert!(r.min_margin.is_none());
}
