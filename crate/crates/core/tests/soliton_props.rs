mod common;

use common::*;
use g2forge_core::exterior::{parse_form, KForm};
use g2forge_core::g2::G2Structure;
use g2forge_core::soliton::{
    gradient_check, lie_derivative_phi, soliton_residual, soliton_solve, ChartPrimitive, GradientVerdict, SolitonType,
};
use g2forge_core::{fixtures, Metric, Vector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lie_derivative_is_linear(x in vector(), y in vector(), a in rational()) {
        let alg = fixtures::soliton_algebra::<Q>();
        let phi = fixtures::model_phi();
        let lx = lie_derivative_phi(&alg, &x, &phi).unwrap();
        let ly = lie_derivative_phi(&alg, &y, &phi).unwrap();
        prop_assert_eq!(lie_derivative_phi(&alg, &x.scale(&a), &phi).unwrap(), lx.scale(&a));
        prop_assert_eq!(lie_derivative_phi(&alg, &x.add(&y), &phi).unwrap(), lx + ly);
    }

    #[test]
    fn residual_is_affine(lambda in rational(), x in vector()) {
        let alg = fixtures::soliton_algebra::<Q>();
        let s = G2Structure::new(fixtures::model_phi()).unwrap();
        let base = soliton_residual(&alg, &s, &q(0), &Vector::zero()).unwrap();
        let r = soliton_residual(&alg, &s, &lambda, &x).unwrap();
        let linear = s.phi().scale(&lambda) + lie_derivative_phi(&alg, &x, s.phi()).unwrap();
        prop_assert_eq!(base - r, linear);
    }

    #[test]
    fn gradient_check_ignores_positive_scale(x in vector(), p in 1i64..=9, d in 1i64..=9) {
        let alg = fixtures::soliton_algebra::<Q>();
        let g = Metric::identity();
        let a = gradient_check(&alg, &g, &x).unwrap().is_gradient();
        let b = gradient_check(&alg, &g, &x.scale(&qr(p, d))).unwrap().is_gradient();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn golden_certificate() {
    let alg = fixtures::soliton_algebra::<Q>();
    let s = G2Structure::new(fixtures::model_phi()).unwrap();
    let cert = soliton_solve(&alg, &s).unwrap();
    assert_eq!(cert.lambda, q(0));
    assert_eq!(cert.x, Vector::basis(6).scale(&q(-4)));
    assert_eq!(cert.residual_norm_sq, q(0));
    assert_eq!(cert.soliton_type, SolitonType::Steady);
    assert!(cert.kernel.is_empty());
    let expected = GradientVerdict::Gradient { primitive: Some(ChartPrimitive { coordinate: 6, slope: q(4) }) };
    assert_eq!(cert.gradient, Some(expected));
}

#[test]
fn gradient_examples() {
    let alg = fixtures::soliton_algebra::<Q>();
    let g = Metric::identity();
    assert_eq!(gradient_check(&alg, &g, &Vector::basis(4)).unwrap(), GradientVerdict::NotGradient);
    let de5: KForm<Q> = parse_form("2*e14 + e57").unwrap();
    assert_eq!(alg.ce_differential(&KForm::covector(4)).unwrap(), de5);
    assert_eq!(gradient_check(&alg, &g, &Vector::basis(0)).unwrap(), GradientVerdict::Gradient { primitive: None });
    let ab = fixtures::abelian::<Q>();
    for i in 0..7 {
        assert!(gradient_check(&ab, &g, &Vector::basis(i)).unwrap().is_gradient());
    }
}

#[test]
fn torsion_free_certificate() {
    let s = G2Structure::new(fixtures::model_phi::<Q>()).unwrap();
    let cert = soliton_solve(&fixtures::abelian(), &s).unwrap();
    assert_eq!(cert.lambda, q(0));
    assert!(cert.x.is_zero());
    assert_eq!(cert.residual_norm_sq, q(0));
}

#[test]
fn closed_perturbation_along_e135_stays_a_soliton() {
    let alg = fixtures::soliton_algebra::<f64>();
    let phi = fixtures::model_phi::<f64>() + parse_form::<f64>("e135").unwrap().scale(&0.1);
    let cert = soliton_solve(&alg, &G2Structure::new(phi).unwrap()).unwrap();
    assert!(cert.residual_norm_sq < 1e-20);
    assert_eq!(cert.soliton_type, SolitonType::Steady);
}

#[test]
fn perturbed_structure_is_not_a_soliton() {
    let alg = fixtures::soliton_algebra::<f64>();
    let bump: KForm<f64> = parse_form("e134").unwrap();
    assert!(alg.ce_differential(&bump).unwrap().is_zero());
    let phi = fixtures::model_phi::<f64>() + bump.scale(&0.1);
    let s = G2Structure::new(phi).unwrap();
    let cert = soliton_solve(&alg, &s).unwrap();
    assert!(cert.residual_norm_sq > 1e-6, "{}", cert.residual_norm_sq);
    assert_eq!(cert.soliton_type, SolitonType::NotSoliton);
    assert_eq!(cert.gradient, None);

    // no nearby (λ, X) does better
    let g = s.metric();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let dl: f64 = rng.random_range(-0.05..0.05);
        let dx = Vector(core::array::from_fn(|_| rng.random_range(-0.05..0.05)));
        let r = soliton_residual(&alg, &s, &(cert.lambda + dl), &cert.x.add(&dx)).unwrap();
        assert!(g.norm_sq(&r) >= cert.residual_norm_sq - 1e-12);
    }
}
