mod common;

use common::*;
use g2forge_core::exterior::KForm;
use g2forge_core::liealg::{classify, parse_salamon, parse_structure_equations, LieAlgebra};
use g2forge_core::{fixtures, Error};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dd_zero_iff_jacobi((dim, c) in skew_constants()) {
        let alg = LieAlgebra::new_unvalidated(dim, c.clone()).unwrap();
        let jacobi = jacobi_oracle(dim, &c);
        prop_assert_eq!(alg.dd_violation().is_none(), jacobi);
        prop_assert_eq!(alg.jacobi_violation().is_none(), jacobi);
        prop_assert_eq!(LieAlgebra::new(dim, c).is_ok(), jacobi);
    }

    #[test]
    fn differential_is_a_derivation(a in (0usize..=3).prop_flat_map(sparse_form), b in (0usize..=3).prop_flat_map(sparse_form)) {
        let alg = fixtures::soliton_algebra::<Q>();
        let lhs = alg.ce_differential(&a.wedge(&b).unwrap()).unwrap();
        let sign = if a.degree() % 2 == 0 { q(1) } else { q(-1) };
        let rhs = alg.ce_differential(&a).unwrap().wedge(&b).unwrap()
            + a.wedge(&alg.ce_differential(&b).unwrap()).unwrap().scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn soliton_differential_squares_to_zero(a in (0usize..=5).prop_flat_map(sparse_form)) {
        let alg = fixtures::soliton_algebra::<Q>();
        prop_assert!(alg.ce_differential(&alg.ce_differential(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn salamon_round_trip((dim, c) in skew_constants()) {
        let alg = LieAlgebra::new_unvalidated(dim, c).unwrap();
        let text = alg.structure_equations().to_salamon();
        let back = parse_structure_equations::<Q>(&text).unwrap();
        prop_assert_eq!(back, alg.structure_equations());
    }
}

#[test]
fn structure_equations_of_soliton_algebra() {
    let alg = fixtures::soliton_algebra::<Q>();
    let eqs = alg.structure_equations();
    let expect = ["0", "0", "-e37", "e47", "2*e14 + e57", "-2*e24 + e67", "0"];
    for (k, text) in expect.iter().enumerate() {
        let f: KForm<Q> = g2forge_core::exterior::parse_form_of_degree(text, 2).unwrap();
        assert_eq!(eqs.differentials[k], f, "de{}", k + 1);
    }
}

#[test]
fn brackets_of_soliton_algebra() {
    let alg = fixtures::soliton_algebra::<Q>();
    let mut found: Vec<(usize, usize, Vec<Q>)> =
        alg.nonzero_brackets().into_iter().map(|(i, j, v)| (i + 1, j + 1, v.0.to_vec())).collect();
    found.sort_by_key(|t| (t.0, t.1));
    let e = |k: usize, c: i64| -> Vec<Q> { (1..=7).map(|n| if n == k { q(c) } else { q(0) }).collect() };
    let expected = vec![
        (1, 4, e(5, -2)),
        (2, 4, e(6, 2)),
        (3, 7, e(3, 1)),
        (4, 7, e(4, -1)),
        (5, 7, e(5, -1)),
        (6, 7, e(6, -1)),
    ];
    assert_eq!(found, expected);
}

#[test]
fn classification_of_fixtures() {
    let h = classify(&fixtures::soliton_algebra::<Q>());
    assert!(h.solvable && !h.nilpotent && !h.unimodular);
    assert_eq!(h.trace_vector, [0, 0, 0, 0, 0, 0, 2].map(q));
    let n = classify(&fixtures::n52::<Q>());
    assert_eq!(n.nilpotency_step, Some(2));
    let a = classify(&fixtures::abelian::<Q>());
    assert!(a.abelian && a.nilpotent && a.unimodular);
}

#[test]
fn bad_input_is_rejected() {
    assert!(matches!(parse_salamon::<Q>("(-13-23,0,-12)"), Err(Error::NotALieAlgebra { .. })));
    assert!(matches!(parse_salamon::<Q>("(0,0,12,13"), Err(Error::Parse { .. })));
    let mut c = vec![q(0); 27];
    c[1 * 3 + 2] = q(1);
    assert!(matches!(LieAlgebra::new_unvalidated(3, c), Err(Error::NotAntisymmetric { i: 1, j: 2 })));
}
