use bochner_core::curvature::*;
use bochner_core::holonomy::{AlgebraKind, HolonomySubalgebra};
use bochner_core::rng::seeded;
use bochner_core::tensor::json::TensorFile;
use bochner_core::tensor::{pairs, Bivector, ComplexTensor, EuclideanSpace};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Brute-force `Ric(Y,W) = Σ_i Rm(e_i,Y,e_i,W)` straight from the tensor data.
fn ricci_oracle(t: &ComplexTensor) -> DMatrix<f64> {
    let d = t.dim();
    let mut out = DMatrix::zeros(d, d);
    for y in 0..d {
        for w in 0..d {
            for i in 0..d {
                out[(y, w)] += t.data()[((i * d + y) * d + i) * d + w].re;
            }
        }
    }
    out
}

#[test]
fn operator_round_trip_on_random_tensors() {
    let mut rng = seeded(1);
    for d in [4, 6, 8] {
        let s = EuclideanSpace::real(d).unwrap();
        for _ in 0..34 {
            let rm = random_curvature(&s, &mut rng);
            let back = AlgebraicCurvatureTensor::from_operator(&rm.to_operator()).unwrap();
            assert!(back.tensor().max_abs_diff(rm.tensor()).unwrap() < 1e-10);
            let again = AlgebraicCurvatureTensor::new(&s, rm.tensor().clone()).unwrap();
            assert!((again.operator().matrix() - rm.operator().matrix()).abs().max() < 1e-10);
            let ratio = rm.norm_sq() / (4.0 * rm.operator().norm_sq());
            assert!((ratio - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn zero_tensor_and_zero_operator() {
    let s = EuclideanSpace::real(4).unwrap();
    let z = AlgebraicCurvatureTensor::new(&s, ComplexTensor::zeros(4, 4)).unwrap();
    assert_eq!(z.operator().matrix().abs().max(), 0.0);
    assert_eq!(model(ModelKind::Flat, &s).unwrap().tensor().max_abs(), 0.0);
}

#[test]
fn constant_sectional_operator_is_scaled_identity() {
    let s = EuclideanSpace::real(6).unwrap();
    let rm = model(ModelKind::ConstantSectional(2.5), &s).unwrap();
    for (a, (i, j)) in pairs(6).into_iter().enumerate() {
        for (b, (k, l)) in pairs(6).into_iter().enumerate() {
            let value = rm.operator().form(&Bivector::basis(6, i, j), &Bivector::basis(6, k, l)).unwrap();
            assert!((value - if a == b { 2.5 } else { 0.0 }).abs() < 1e-14);
        }
    }
    let ric = ricci_oracle(rm.tensor());
    assert!((ric - DMatrix::<f64>::identity(6, 6) * (2.5 * 5.0)).abs().max() < 1e-12);
    assert!((rm.scalar() - 2.5 * 30.0).abs() < 1e-12);
}

#[test]
fn symmetry_violations_are_rejected() {
    let s = EuclideanSpace::real(4).unwrap();
    let mut t = ComplexTensor::zeros(4, 4);
    t.set(&[0, 1, 0, 1], Complex64::new(1.0, 0.0));
    assert!(AlgebraicCurvatureTensor::new(&s, t).is_err());

    // pair-symmetric but a pure 4-form: fails Bianchi
    let mut m = DMatrix::zeros(6, 6);
    m[(0, 5)] = 1.0;
    m[(5, 0)] = 1.0;
    let op = CurvatureOperator::new(&s, m).unwrap();
    assert!(op.to_tensor().is_err());
}

#[test]
fn chsc_is_einstein_with_trivial_decomposition() {
    for n in [1, 2, 3] {
        let s = EuclideanSpace::kahler(n).unwrap();
        let rm = model(ModelKind::Chsc(1.5), &s).unwrap();
        assert!(rm.tf_ricci().abs().max() < 1e-12);
        let dec = kahler_decompose(&rm).unwrap();
        assert!(dec.bochner.tensor().max_abs() < 1e-12);
        assert!(dec.ricci_part.tensor().max_abs() < 1e-12);
        assert!(dec.scalar_part.tensor().max_abs_diff(rm.tensor()).unwrap() < 1e-12);
    }
}

#[test]
fn chsc_spectrum_on_u_is_positive() {
    let s = EuclideanSpace::kahler(3).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    let rm = model(ModelKind::Chsc(1.0), &s).unwrap();
    let spec = restricted_spectrum(rm.operator(), &g).unwrap();
    assert_eq!(spec.eigenvalues.len(), 9);
    assert!(spec.eigenvalues[0] > 0.0);
    assert!(spec.leakage < 1e-12);
    // golden values: c/2 on 𝔰𝔲(3), (n+1)c/2 on ω
    for v in &spec.eigenvalues[..8] {
        assert!((v - 0.5).abs() < 1e-12, "{:?}", spec.eigenvalues);
    }
    assert!((spec.eigenvalues[8] - 2.0).abs() < 1e-12);
}

#[test]
fn unit_sectional_spectrum_on_so() {
    let s = EuclideanSpace::real(6).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::So).unwrap();
    let spec = restricted_spectrum(model(ModelKind::ConstantSectional(1.0), &s).unwrap().operator(), &g).unwrap();
    assert!(spec.eigenvalues.iter().all(|v| (v - 1.0).abs() < 1e-12));
    let flat = restricted_spectrum(model(ModelKind::Flat, &s).unwrap().operator(), &g).unwrap();
    assert!(flat.eigenvalues.iter().all(|v| *v == 0.0));
}

#[test]
fn random_kahler_tensors_are_kahler_and_bochner_is_tracefree() {
    let mut rng = seeded(7);
    for n in [2, 3] {
        let s = EuclideanSpace::kahler(n).unwrap();
        for _ in 0..5 {
            let rm = random_kahler(&s, &mut rng).unwrap();
            assert!(rm.is_kahler());
            assert!(rm.operator().bianchi_residual() < 1e-12);
            let dec = kahler_decompose(&rm).unwrap();
            assert!(dec.reassembly_error(&rm).unwrap() < 1e-9);
            let (ric, jtr) = bochner_traces(&dec.bochner).unwrap();
            assert!(ric < 1e-8 && jtr < 1e-8, "traces {ric:e} {jtr:e}");
            // projection family
            let again = kahler_decompose(&dec.bochner).unwrap();
            assert!(again.scalar_part.tensor().max_abs() < 1e-9);
            assert!(again.ricci_part.tensor().max_abs() < 1e-9);
            for part in [&dec.scalar_part, &dec.ricci_part, &dec.bochner] {
                assert!(symmetry_residuals(part.tensor()).max() < 1e-10);
            }
            // ρ₀ is primitive, R̊ic is trace-free
            let omega = s.kahler_form().unwrap();
            assert!(dec.primitive_ricci_form.dot(&omega).abs() < 1e-10);
            assert!(dec.tf_ricci.trace().abs() < 1e-10);
        }
    }
}

#[test]
fn sampler_dimensions() {
    let u2 = HolonomySubalgebra::build(&EuclideanSpace::kahler(2).unwrap(), AlgebraKind::U).unwrap();
    assert_eq!(Sym2BSampler::for_algebra(&u2).dim(), 9);
    let u3 = HolonomySubalgebra::build(&EuclideanSpace::kahler(3).unwrap(), AlgebraKind::U).unwrap();
    assert_eq!(Sym2BSampler::for_algebra(&u3).dim(), 36);
    assert_eq!(Sym2BSampler::hyperkahler(&EuclideanSpace::quaternionic(2).unwrap()).unwrap().dim(), 35);
}

#[test]
fn non_kahler_input_is_rejected() {
    let mut rng = seeded(3);
    let s = EuclideanSpace::kahler(2).unwrap();
    let plain = EuclideanSpace::real(4).unwrap();
    let rm = random_curvature(&plain, &mut rng);
    let moved = AlgebraicCurvatureTensor::new(&s, rm.tensor().clone()).unwrap();
    assert!(kahler_decompose(&moved).is_err());
    assert!(moved.ricci_form().is_ok());
    assert!(rm.ricci_form().is_err());
}

#[test]
fn hpm_model_is_quaternion_kahler() {
    let s = EuclideanSpace::quaternionic(2).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::SpSp1).unwrap();
    let rm = model(ModelKind::Hpm, &s).unwrap();
    assert!(symmetry_residuals(rm.tensor()).max() < 1e-12);
    assert!(complement_block_norm(rm.operator(), &g).unwrap() < 1e-9);
    assert!(rm.operator().leakage(&g).unwrap() < 1e-9);
    // scal = 16m(m+2), Ric = 4(m+2)g
    assert!((rm.scalar() - 16.0 * 2.0 * 4.0).abs() < 1e-10);
    assert!((rm.ricci() - DMatrix::<f64>::identity(8, 8) * 16.0).abs().max() < 1e-10);
}

#[test]
fn quaternion_decomposition_recovers_perturbation() {
    let s = EuclideanSpace::quaternionic(2).unwrap();
    let hp = model(ModelKind::Hpm, &s).unwrap();
    let dec = quaternion_decompose(&hp).unwrap();
    assert!((dec.hp_coefficient - 1.0).abs() < 1e-12);
    assert!(dec.r0.tensor().max_abs() < 1e-10);

    let dec5 = quaternion_decompose(&hp.scaled(5.0)).unwrap();
    assert!((dec5.hp_coefficient - 5.0).abs() < 1e-12);
    assert!(dec5.r0.tensor().max_abs() < 1e-9);

    let mut rng = seeded(4);
    let p = random_hyperkahler(&s, &mut rng).unwrap();
    assert!(p.ricci().abs().max() < 1e-10);
    let dec = quaternion_decompose(&hp.add(&p).unwrap()).unwrap();
    assert!(dec.r0.tensor().max_abs_diff(p.tensor()).unwrap() < 1e-9);
    assert!(dec.r0_ricci_residual < 1e-9);
}

#[test]
fn quaternion_decomposition_reports_leakage() {
    let s = EuclideanSpace::quaternionic(2).unwrap();
    let rm = model(ModelKind::ConstantSectional(1.0), &s).unwrap();
    match quaternion_decompose(&rm) {
        Err(bochner_core::Error::Leakage { leakage }) => assert!(leakage > 0.1),
        other => panic!("expected leakage error, got {other:?}"),
    }
}

#[test]
fn kahler_sharp_identity_holds() {
    let s = EuclideanSpace::kahler(2).unwrap();
    let chsc = kahler_sharp_identity(&model(ModelKind::Chsc(2.0), &s).unwrap()).unwrap();
    assert!(chsc.sharp_norm_sq.abs() < 1e-12 && chsc.rhs.abs() < 1e-12);
    let mut rng = seeded(21);
    for n in [2, 3] {
        let s = EuclideanSpace::kahler(n).unwrap();
        for _ in 0..3 {
            let r = kahler_sharp_identity(&random_kahler(&s, &mut rng).unwrap()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn quaternion_sharp_ratio_is_casimir() {
    // the stated coefficient (4/3)(3m+4) is not what the algebra produces;
    // the observed ratio is pinned here, the stated one is an acceptance item
    let mut rng = seeded(8);
    let s = EuclideanSpace::quaternionic(2).unwrap();
    let rm = random_quaternion_kahler(&s, &mut rng, 1.0).unwrap();
    let r = quaternion_sharp_identity(&rm).unwrap();
    let observed = r.observed_coefficient.unwrap();
    assert!((observed - casimir_quaternion_coefficient(2)).abs() < 1e-8, "{r:?}");
    assert!((r.printed_coefficient - 40.0 / 3.0).abs() < 1e-12);
}

#[test]
fn kahler_action_on_operator_matches_tensor_action() {
    let mut rng = seeded(9);
    let s = EuclideanSpace::kahler(2).unwrap();
    let g = HolonomySubalgebra::build(&s, AlgebraKind::U).unwrap();
    let rm = random_kahler(&s, &mut rng).unwrap();
    for _ in 0..5 {
        let l = g.random_unit_element(&mut rng);
        let via_op = rm.operator().act(&l).unwrap();
        let via_tensor = bochner_core::tensor::act_on_tensor(&l, rm.tensor()).unwrap();
        assert!((via_tensor.norm_sq() - 4.0 * via_op.norm_sq()).abs() < 1e-9);
        let back = AlgebraicCurvatureTensor::from_operator(&via_op).unwrap();
        assert!(back.tensor().max_abs_diff(&via_tensor).unwrap() < 1e-10);
    }
}

#[test]
fn curvature_file_round_trip() {
    let mut rng = seeded(10);
    let s = EuclideanSpace::kahler(2).unwrap();
    let rm = random_kahler(&s, &mut rng).unwrap();
    let file = rm.to_file();
    assert_eq!(file.kind.as_deref(), Some("curvature"));
    assert!(file.has_flag("kahler"));
    let text = file.to_json_string().unwrap();
    let back = AlgebraicCurvatureTensor::from_file(&TensorFile::from_json_str(&text).unwrap()).unwrap();
    assert_eq!(back.tensor(), rm.tensor());

    let q = EuclideanSpace::quaternionic(2).unwrap();
    let hp = model(ModelKind::Hpm, &q).unwrap();
    assert!(hp.to_file().has_flag("quaternion"));

    let mut bad = rm.to_file();
    let general = random_curvature(&EuclideanSpace::real(4).unwrap(), &mut rng);
    bad.components = general.to_file().components;
    assert!(AlgebraicCurvatureTensor::from_file(&bad).is_err());
}
