mod common;

use common::{brute_force_small, sign_vectors, weyl_oracle};
use ggp_core::enumeration::enumerate_small_spectra_with;
use ggp_core::{
    enumerate_sign_patterns, enumerate_small_spectra, ggp_discrete_branching, is_holomorphic_pattern,
    weyl_branching, weyl_dimension, Execution, HalfInt, HarishChandraParameter, Lattice, LatticeSpectrum, Sign,
    SignedSpectrum, ValueWindow, DEFAULT_TOL,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big_strategy(max_len: usize) -> impl Strategy<Value = SignedSpectrum> {
    (2..=max_len)
        .prop_flat_map(|n| {
            (
                proptest::sample::subsequence((-4..=4).collect::<Vec<i64>>(), n),
                proptest::collection::vec(any::<bool>(), n),
                0..n,
            )
        })
        .prop_map(|(values, plus, forced_minus)| {
            let signs = (0..values.len())
                .map(|i| if plus[i] && i != forced_minus { Sign::Plus } else { Sign::Minus })
                .collect();
            SignedSpectrum::new(values.iter().map(|&v| v as f64).collect(), signs).unwrap()
        })
}

fn window_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=3, 1i64..=8).prop_map(|(lo, w)| (lo, lo + w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn enumeration_equals_brute_force(big in big_strategy(5), (lo, hi) in window_strategy(), half in any::<bool>()) {
        let lattice = if half { Lattice::HalfInteger } else { Lattice::Integer };
        let window = ValueWindow::new(lo as f64, hi as f64).unwrap();
        let got = enumerate_small_spectra(&big, lattice, &window).unwrap();
        prop_assert_eq!(got, brute_force_small(&big, lattice, &window, DEFAULT_TOL));
    }

    #[test]
    fn window_monotonicity(big in big_strategy(4), (lo, hi) in window_strategy(), grow_lo in 0i64..3, grow_hi in 0i64..3) {
        let inner = ValueWindow::new(lo as f64, hi as f64).unwrap();
        let outer = ValueWindow::new((lo - grow_lo) as f64, (hi + grow_hi) as f64).unwrap();
        let small = enumerate_small_spectra(&big, Lattice::Integer, &inner).unwrap();
        let large = enumerate_small_spectra(&big, Lattice::Integer, &outer).unwrap();
        for s in &small {
            prop_assert!(large.contains(s));
            prop_assert!(s.values().iter().all(|v| inner.contains(v.to_f64())));
        }
    }

    #[test]
    fn execution_mode_does_not_change_output(big in big_strategy(5), (lo, hi) in window_strategy()) {
        let window = ValueWindow::new(lo as f64, hi as f64).unwrap();
        let a = enumerate_small_spectra_with(&big, Lattice::Integer, &window, DEFAULT_TOL, Execution::Sequential).unwrap();
        let b = enumerate_small_spectra_with(&big, Lattice::Integer, &window, DEFAULT_TOL, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn sign_patterns_for_two_plus_one_minus() {
    let pats = enumerate_sign_patterns(&[Sign::Plus, Sign::Minus, Sign::Plus]).unwrap();
    let text: Vec<String> = pats.iter().map(|p| p.to_string()).collect();
    assert!(text.contains(&"(+)+-+(+)".to_string()), "{text:?}");
    assert!(pats.iter().all(|p| p.is_allowed() && p.len() == 5));
}

#[test]
fn weyl_conservation_exhaustive() {
    for n in 2..=5usize {
        let mut lambda = vec![0i64; n];
        loop {
            let branches = weyl_branching(&lambda).unwrap();
            assert_eq!(branches.iter().cloned().collect::<std::collections::BTreeSet<_>>(), weyl_oracle(&lambda));
            let total: BigUint = branches.iter().map(|mu| weyl_dimension(mu).unwrap()).sum();
            assert_eq!(total, weyl_dimension(&lambda).unwrap(), "{lambda:?}");
            // Next weakly descending tuple with entries in [0, 6].
            let Some(k) = (0..n).rev().find(|&k| lambda[k] < if k == 0 { 6 } else { lambda[k - 1] }) else {
                break;
            };
            lambda[k] += 1;
            for v in lambda.iter_mut().skip(k + 1) {
                *v = 0;
            }
        }
    }
}

fn holomorphic_big(p: usize, q: usize, top: i64) -> SignedSpectrum {
    let values: Vec<f64> = (0..p + q).map(|i| (top - 2 * i as i64) as f64).collect();
    let signs: Vec<i64> = (0..p + q).map(|i| if i < p { 1 } else { -1 }).collect();
    SignedSpectrum::from_ints(&values, &signs).unwrap()
}

#[test]
fn holomorphic_closure() {
    for p in 0..=3usize {
        for q in 1..=3usize {
            if p + q < 2 {
                continue;
            }
            let big = holomorphic_big(p, q, 5);
            let window = ValueWindow::new(-12.0, 12.0).unwrap();
            for s in enumerate_small_spectra(&big, Lattice::Integer, &window).unwrap() {
                let spec = s.to_spectrum().unwrap();
                assert!(is_holomorphic_pattern(&spec), "{big} -> {spec}");
                // Positive parts: eta_1 >= chi_1 >= eta_2 >= ... >= eta_p >= chi_p.
                let chi_plus = big.values_with_sign(Sign::Plus);
                let eta_plus = spec.values_with_sign(Sign::Plus);
                for i in 0..p {
                    assert!(eta_plus[i] >= chi_plus[i]);
                    if i + 1 < p {
                        assert!(chi_plus[i] >= eta_plus[i + 1]);
                    }
                }
                // Negative parts: chi_-1 >= eta_-1 >= chi_-2 >= ... >= eta_-(q-1) >= chi_-q.
                let chi_minus = big.values_with_sign(Sign::Minus);
                let eta_minus = spec.values_with_sign(Sign::Minus);
                for i in 0..q - 1 {
                    assert!(chi_minus[i] >= eta_minus[i] && eta_minus[i] >= chi_minus[i + 1]);
                }
            }
        }
    }
}

#[test]
fn branching_respects_parity() {
    for (p, q) in [(1usize, 1usize), (2, 1), (2, 2)] {
        let n = p + q;
        let lattice = Lattice::for_group_size(n);
        let shift = if lattice == Lattice::Integer { 0 } else { 1 };
        let doubled: Vec<i64> = (0..n as i64).map(|i| 2 * (n as i64 - 1 - 2 * i) + shift).collect();
        for signs in sign_vectors(n, p) {
            let good = LatticeSpectrum::new(doubled.iter().map(|&d| HalfInt::from_doubled(d)).collect(), signs.clone())
                .unwrap();
            let hc = HarishChandraParameter::new(good).unwrap();
            let window = ValueWindow::new(-8.0, 8.0).unwrap();
            let small_lattice = Lattice::for_group_size(n - 1);
            for out in ggp_discrete_branching(&hc, &window).unwrap() {
                assert_eq!(out.lattice(), small_lattice);
                assert!(out.spectrum().on_lattice(small_lattice) && out.spectrum().is_distinct());
                assert_eq!(out.signature(), (p, q - 1));
            }
            let bad = LatticeSpectrum::new(doubled.iter().map(|&d| HalfInt::from_doubled(d + 1)).collect(), signs)
                .unwrap();
            assert!(HarishChandraParameter::new(bad).is_err());
        }
    }
}
