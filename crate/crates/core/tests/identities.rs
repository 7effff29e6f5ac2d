use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quditbell_core::bounds::{best_response_bob, construct_delta_min_strategy};
use quditbell_core::cyclotomic::{exact_correlation_value, CyclotomicInt};
use quditbell_core::game::{behavior_from_strategy, bell_value_corr, bell_value_prob, classical_bell_value, corr_from_behavior};
use quditbell_core::quantum::{
    bell_operator, corr_value_relation_check, joint_behavior, operator_power_residual, MeasurementSet, PureState,
};
use quditbell_core::symmetry::SymmetryGroup;
use quditbell_core::{DeterministicStrategy, GameParams};

fn random_strategy(p: &GameParams, rng: &mut ChaCha8Rng) -> DeterministicStrategy {
    let d = p.d();
    let a = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
    let b = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
    DeterministicStrategy::new(p, a, b).unwrap()
}

#[test]
fn operator_identities_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in [3, 5, 7] {
        let p = GameParams::new(d).unwrap();
        for _ in 0..100 {
            let psi = PureState::haar_random(d, &mut rng);
            let a = MeasurementSet::haar_random(d, &mut rng);
            let b = MeasurementSet::haar_random(d, &mut rng);
            for m in a.settings().iter().chain(b.settings()) {
                assert!(operator_power_residual(&p, m) < 1e-12, "d={d}");
            }
            assert!(corr_value_relation_check(&p, &psi, &a, &b).unwrap() < 1e-10, "d={d}");
            let beh = joint_behavior(&p, &psi, &a, &b).unwrap();
            assert!(beh.normalization_residual() < 1e-12);
            assert!(beh.no_signaling_residual() < 1e-12);
            let op = bell_operator(&p, &a, &b).unwrap();
            assert!((op.expectation(&psi) - bell_value_prob(&p, &beh)).abs() < 1e-12);
        }
    }
}

/// `S_Ji` is a sum over score-matrix cells of `Σ_{n=1}^{d−1} ω^{n·x}`, where
/// `x` is the cell's score. That sum is `d − 1` for `x = 0` and `−1` otherwise,
/// which gives `S_Ji = d·zeros − d² = d³S − d²` for every strategy.
#[test]
fn correlation_value_relation_holds_for_every_strategy() {
    for d in 2..=7 {
        for x in 0..d {
            let mut counts = vec![0i64; d];
            for n in 1..d {
                counts[n * x % d] += 1;
            }
            let want = if x == 0 { d as i64 - 1 } else { -1 };
            assert_eq!(CyclotomicInt::from_power_counts(d, &counts).as_integer(), Some(want), "d={d} x={x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for d in 2..=13 {
        let p = GameParams::new(d).unwrap();
        let exhaustive = d <= 3;
        let count = if exhaustive { d.pow(2 * d as u32) } else if d <= 7 { 10_000 } else { 1_000 };
        for k in 0..count {
            let s = if exhaustive {
                let mut code = k;
                let mut digits = Vec::with_capacity(2 * d);
                for _ in 0..2 * d {
                    digits.push((code % d) as u8);
                    code /= d;
                }
                DeterministicStrategy::new(&p, digits[..d].to_vec(), digits[d..].to_vec()).unwrap()
            } else {
                random_strategy(&p, &mut rng)
            };
            let s_value = classical_bell_value(&p, &s).unwrap();
            let d3 = (d * d * d) as i64;
            let expected = d3 * *s_value.numer() as i64 / *s_value.denom() as i64 - (d * d) as i64;
            assert_eq!(exact_correlation_value(&p, &s), expected, "d={d}");
            if k % 50 == 0 {
                let beh = behavior_from_strategy(&p, &s).unwrap();
                let sji = bell_value_corr(&p, &corr_from_behavior(&p, &beh));
                assert!((sji.re - expected as f64).abs() < 1e-8 && sji.im.abs() < 1e-9);
            }
        }
    }
}

#[test]
fn generated_behaviors_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=7 {
        let p = GameParams::new(d).unwrap();
        for _ in 0..200 {
            let beh = behavior_from_strategy(&p, &random_strategy(&p, &mut rng)).unwrap();
            assert!(beh.normalization_residual() < 1e-12);
            assert!(beh.no_signaling_residual() < 1e-12);
        }
    }
}

#[test]
fn symmetry_orbits_preserve_zero_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in 2..=13 {
        let p = GameParams::new(d).unwrap();
        let group = SymmetryGroup::new(&p);
        for _ in 0..10_000 {
            let s = random_strategy(&p, &mut rng);
            let z = s.zero_count();
            for g in group.generators() {
                assert_eq!(g.apply(&p, &s).zero_count(), z, "d={d} {g:?}");
            }
        }
    }
}

#[test]
fn delta_min_construction_is_zero_free() {
    for d in 3..=31 {
        let p = GameParams::new(d).unwrap();
        assert_eq!(construct_delta_min_strategy(&p).unwrap().zero_count(), 0, "d={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, rng_seed: proptest::test_runner::RngSeed::Fixed(1), ..ProptestConfig::default() })]

    #[test]
    fn best_response_is_optimal_per_column(d in 2usize..=9, seed in any::<u64>()) {
        let p = GameParams::new(d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alice: Vec<u8> = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
        let (bob, zeros) = best_response_bob(&p, &alice);
        prop_assert_eq!(DeterministicStrategy::new(&p, alice.clone(), bob).unwrap().zero_count(), zeros);
        let other: Vec<u8> = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
        prop_assert!(DeterministicStrategy::new(&p, alice, other).unwrap().zero_count() <= zeros);
    }

    #[test]
    fn swapping_parties_keeps_zero_count(d in 2usize..=13, seed in any::<u64>()) {
        let p = GameParams::new(d).unwrap();
        let s = random_strategy(&p, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(s.swapped().zero_count(), s.zero_count());
    }

    #[test]
    fn quantum_values_stay_in_range(d in 2usize..=6, seed in any::<u64>()) {
        let p = GameParams::new(d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = PureState::haar_random(d, &mut rng);
        let a = MeasurementSet::haar_random(d, &mut rng);
        let b = MeasurementSet::haar_random(d, &mut rng);
        let v = bell_value_prob(&p, &joint_behavior(&p, &psi, &a, &b).unwrap());
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
    }
}
