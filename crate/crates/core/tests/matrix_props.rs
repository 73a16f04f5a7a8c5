mod common;

use ggp_core::matrix_lab::eigen::eigen;
use ggp_core::matrix_lab::{
    lie_algebra_element, random_lie_coordinates, structure_residual, trial_rng, ComplexMatrix,
};
use ggp_core::preimage::evaluate;
use ggp_core::{
    check_ggp, conjugate, diagonal_model, find_preimage, project_corner, random_pseudo_unitary, signed_spectrum_of,
    IndefiniteForm, PseudoSkewElement, SearchConfig, Sign, SignedSpectrum, Verdict, DEFAULT_TOL,
};
use proptest::prelude::*;

fn regular_spectrum() -> impl Strategy<Value = SignedSpectrum> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                proptest::sample::subsequence((-20..=20).collect::<Vec<i64>>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(values, plus)| {
            SignedSpectrum::new(
                values.iter().map(|&v| v as f64 / 4.0).collect(),
                plus.iter().map(|&b| if b { Sign::Plus } else { Sign::Minus }).collect(),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn diagonal_model_round_trip(s in regular_spectrum()) {
        let r = signed_spectrum_of(&diagonal_model(&s).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert_eq!(r.verdict, Verdict::EllipticRegular);
        prop_assert_eq!(r.spectrum.unwrap(), s);
    }

    #[test]
    fn projection_preserves_structure(p in 0usize..=3, q in 1usize..=3, seed in any::<u64>(), scale in 0.1f64..3.0) {
        prop_assume!(p + q >= 2);
        let form = IndefiniteForm::new(p, q).unwrap();
        let theta = random_lie_coordinates(&form, scale, &mut trial_rng(seed, 0));
        let x = PseudoSkewElement::new(form, lie_algebra_element(&form, &theta).unwrap()).unwrap();
        prop_assert!(x.residual() < 1e-10 * x.matrix().norm().max(1.0));
        let y = project_corner(&x).unwrap();
        prop_assert_eq!((y.form().p, y.form().q), (p, q - 1));
        prop_assert!(structure_residual(&y.form(), y.matrix()) < 1e-9);
    }

    #[test]
    fn eigenpairs_of_algebra_elements_are_accurate(p in 0usize..=4, q in 0usize..=4, seed in any::<u64>()) {
        prop_assume!(p + q >= 1);
        let form = IndefiniteForm::new(p, q).unwrap();
        let theta = random_lie_coordinates(&form, 1.0, &mut trial_rng(seed, 1));
        let x = lie_algebra_element(&form, &theta).unwrap();
        let norm = x.norm();
        for pair in eigen(&x).unwrap() {
            let r = &x * &pair.vector - &pair.vector * pair.value;
            prop_assert!(r.norm() <= 1e-9 * norm.max(1e-300));
        }
    }

    #[test]
    fn signed_spectrum_is_conjugation_invariant(s in regular_spectrum(), seed in any::<u64>(), scale in 0.0f64..1.0) {
        prop_assume!(s.min_gap() >= 0.25);
        let x = diagonal_model(&s).unwrap();
        let g = random_pseudo_unitary(&x.form(), scale, seed).unwrap();
        let r = signed_spectrum_of(&conjugate(&g, &x).unwrap(), DEFAULT_TOL).unwrap();
        let got = r.spectrum.expect("conjugation keeps the element regular elliptic");
        prop_assert_eq!(got.signs(), s.signs());
        for (a, b) in got.values().iter().zip(s.values()) {
            prop_assert!((a - b).abs() < 1e-7);
        }
    }
}

#[test]
fn matrix_json_uses_re_im_pairs() {
    let s = common::spectrum(&[2.0, -1.0], &[1, -1]);
    let m = ComplexMatrix(diagonal_model(&s).unwrap().into_matrix());
    assert_eq!(serde_json::to_string(&m).unwrap(), "[[[0.0,2.0],[0.0,0.0]],[[0.0,0.0],[0.0,-1.0]]]");
}

#[test]
fn found_witness_replays() {
    let big = common::spectrum(&[3.0, 1.0, 0.0], &[1, 1, -1]);
    let target = common::spectrum(&[4.0, 2.0], &[1, 1]);
    let r = find_preimage(&big, &target, &SearchConfig::default()).unwrap();
    assert!(r.found(), "{r:?}");
    let w = r.witness.as_ref().unwrap();
    let replay = evaluate(&diagonal_model(&big).unwrap(), &w.theta, &target, DEFAULT_TOL).unwrap();
    assert!((replay.objective - r.objective).abs() < 1e-9);
    assert!(check_ggp(&big, &w.projected, DEFAULT_TOL).unwrap());
    let reconstructed = PseudoSkewElement::new(replay.element.form(), w.matrix.0.clone()).unwrap();
    assert!((reconstructed.matrix() - replay.element.matrix()).norm() < 1e-12);
}
