use jsd_core::pairgen::{derive_seed, sample_pair, sample_simplex, GenSpec, NORM_TOLERANCE_LOG10};
use jsd_core::{epsilon_rms_norm, reduce, JsdError};
use proptest::prelude::*;

#[test]
fn simplex_marginals_are_uniform() {
    // Each coordinate of a uniform point on the n-simplex is Beta(1, n - 1):
    // mean 1/n, variance (n - 1) / (n^2 (n + 1)).
    let (n, draws) = (1000usize, 10_000usize);
    let mut sums = vec![0.0f64; n];
    for d in 0..draws {
        let p = sample_simplex(n, derive_seed(99, d as u64)).unwrap();
        for (s, x) in sums.iter_mut().zip(p.as_slice()) {
            *s += x;
        }
    }
    let nf = n as f64;
    let sigma = ((nf - 1.0) / (nf * nf * (nf + 1.0)) / draws as f64).sqrt();
    let z: Vec<f64> = sums
        .iter()
        .map(|s| (s / draws as f64 - 1.0 / nf).abs() / sigma)
        .collect();
    let beyond3 = z.iter().filter(|&&v| v > 3.0).count();
    let worst = z.iter().cloned().fold(0.0, f64::max);
    // With 1000 coordinates about 3 are expected past 3 sigma.
    assert!(beyond3 <= n / 100, "{beyond3} coordinates beyond 3 sigma");
    assert!(worst < 5.0, "worst |z| = {worst}");
}

#[test]
fn simplex_edge_cases() {
    assert_eq!(sample_simplex(1, 3).unwrap().as_slice(), &[1.0]);
    assert_eq!(
        sample_simplex(5, 11).unwrap(),
        sample_simplex(5, 11).unwrap()
    );
    assert_ne!(
        sample_simplex(5, 11).unwrap(),
        sample_simplex(5, 12).unwrap()
    );
    assert!(sample_simplex(0, 1).is_err());
}

#[test]
fn target_two_lands_in_band() {
    for seed in 0..50 {
        let g = sample_pair(&GenSpec {
            n: 100,
            target_log10_eps: -2.0,
            alpha: 0.0,
            seed,
        })
        .unwrap();
        let achieved = g.achieved_rms.log10();
        assert!((-2.05..=-1.95).contains(&achieved), "{achieved}");
    }
}

#[test]
fn rejects_bad_specs() {
    let ok = GenSpec {
        n: 10,
        target_log10_eps: -1.0,
        alpha: 0.0,
        seed: 0,
    };
    for bad in [
        GenSpec { n: 1, ..ok },
        GenSpec {
            target_log10_eps: 0.0,
            ..ok
        },
        GenSpec {
            target_log10_eps: 0.5,
            ..ok
        },
        GenSpec {
            target_log10_eps: -12.0,
            ..ok
        },
        GenSpec {
            target_log10_eps: f64::NAN,
            ..ok
        },
    ] {
        let err = sample_pair(&bad).unwrap_err();
        assert!(matches!(err, JsdError::InvalidSpec(_)), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
    let err = sample_pair(&GenSpec { alpha: 1.5, ..ok }).unwrap_err();
    assert!(matches!(err, JsdError::AlphaOutOfRange(_)));
    assert_eq!(err.exit_code(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_pairs_meet_the_contract(
        n in 2usize..200, t in -9.0f64..-0.01, alpha in -1.0f64..=1.0, seed in any::<u64>()
    ) {
        let spec = GenSpec { n, target_log10_eps: t, alpha, seed };
        let g = sample_pair(&spec).unwrap();
        let rf = reduce(&g.pair);
        let achieved = epsilon_rms_norm(&rf);
        prop_assert_eq!(achieved, g.achieved_rms);
        prop_assert!((achieved.log10() - t).abs() <= NORM_TOLERANCE_LOG10);
        prop_assert!((rf.alpha - alpha).abs() <= 1e-15);
        prop_assert!((g.pair.pi1() + g.pair.pi2() - 1.0).abs() <= 1e-15);
        prop_assert!(g.eps.iter().all(|e| e.abs() <= 1.0));
        prop_assert!(g.attempts >= 1);
        let again = sample_pair(&spec).unwrap();
        prop_assert_eq!(again.pair, g.pair);
    }
}
