//! Property and grid checks for the analytic stack and the oracle.

use dpts_core::analytics::{
    eve_bound, gamma, holevo_primary, holevo_secondary_bracket, rate_breakdown, secret_key_rate,
};
use dpts_core::model::*;
use dpts_core::oracle::{holevo_brute, CoherentSequence, Ensemble};
use proptest::prelude::*;

fn arb_params() -> impl Strategy<Value = SystemParams> {
    (
        0.01..1.0f64,             // mu
        0.0..250.0f64,            // length_km
        0.1..0.3f64,              // attenuation
        0.05..1.0f64,             // efficiency
        0.0..1e-3f64,             // dark_count_prob
        0.0..1.0f64,              // visibility
        prop::sample::select(vec![4u32, 6, 8, 10, 16]),
        0.0..0.5f64,              // p_decoy
    )
        .prop_map(
            |(mu, length_km, alpha, efficiency, pd, visibility, n_max, p_decoy)| {
                SystemParams {
                    source: SourceParams {
                        mu,
                        pulse_rate_hz: 1e10,
                    },
                    encoding: EncodingParams { n_max, p_decoy },
                    channel: ChannelParams {
                        length_km,
                        attenuation_db_per_km: alpha,
                    },
                    receiver: ReceiverParams {
                        efficiency,
                        dark_count_prob: pd,
                        visibility,
                        dead_time_s: 0.0,
                    },
                }
                .validate()
                .expect("strategy draws valid parameters")
            },
        )
}

proptest! {
    #[test]
    fn transmittance_is_multiplicative(l1 in 0.0..150.0f64, l2 in 0.0..150.0f64, alpha in 0.05..0.5f64) {
        let t = |l: f64| transmittance(&ChannelParams { length_km: l, attenuation_db_per_km: alpha });
        let combined = t(l1 + l2);
        let product = t(l1) * t(l2);
        prop_assert!((combined - product).abs() <= 1e-12 * combined.max(product));
    }

    #[test]
    fn transmittance_monotone(l in 0.0..200.0f64, alpha in 0.05..0.5f64) {
        let base = transmittance(&ChannelParams { length_km: l, attenuation_db_per_km: alpha });
        let longer = transmittance(&ChannelParams { length_km: l + 1.0, attenuation_db_per_km: alpha });
        let lossier = transmittance(&ChannelParams { length_km: l, attenuation_db_per_km: alpha + 0.01 });
        prop_assert!(longer <= base);
        if l > 0.0 {
            prop_assert!(lossier <= base);
        }
    }

    #[test]
    fn mean_block_length_bounds_and_step(k in 0u32..40) {
        let n_max = 4 + 2 * k;
        let mean = mean_block_length(n_max).unwrap();
        prop_assert!(mean >= 4.0 && mean <= n_max as f64);
        let next = mean_block_length(n_max + 2).unwrap();
        prop_assert!((next - mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outcome_probabilities_normalize(params in arb_params()) {
        let b = rate_breakdown(&params);
        let [e1, e2, e3, e4] = b.err;
        prop_assert!((e1 - (e2 + e3 + e4)).abs() <= 1e-12);
        prop_assert!(((1.0 - e1) + e2 + e3 + e4 - 1.0).abs() <= 1e-12);
        prop_assert!((0.0..=0.5).contains(&b.r_click));
        prop_assert!(b.r_total >= b.r_click && b.r_total <= 1.0);
        prop_assert!(b.prefactor_f > 0.0 && b.prefactor_f <= 1.0);
        prop_assert!((0.0..=1.0).contains(&b.i_ab));
    }

    #[test]
    fn eve_bound_ranges(params in arb_params()) {
        let e = eve_bound(&params);
        prop_assert!(e.gamma > 0.0 && e.gamma <= 1.0);
        prop_assert!(e.p_eve >= 2.0 / 3.0 && e.p_eve < 1.0);
        prop_assert!((0.0..=1.0).contains(&e.chi0));
        prop_assert!(e.chi1 >= 0.0);
        prop_assert!(e.chi >= e.chi0 && e.chi <= 1.0);
    }

    #[test]
    fn eigenvalue_normalization_fuzz(g in 0.0..=1.0f64) {
        let (l1, l2, l3) = dpts_core::analytics::eve_mixture_eigenvalues(g);
        prop_assert!(l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0);
        prop_assert!((l1 + 3.0 * l2 + 4.0 * l3 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn gram_spectrum_is_a_distribution(amps in prop::collection::vec(-1.0..1.0f64, 2..5), n_states in 2usize..6) {
        // random coherent sequences, uniform weights
        let states: Vec<CoherentSequence> = (0..n_states)
            .map(|k| {
                CoherentSequence::new(
                    amps.iter().map(|a| a * (k as f64 + 1.0) / n_states as f64).collect(),
                )
                .unwrap()
            })
            .collect();
        let e = Ensemble::uniform(states).unwrap();
        let eigenvalues = e.gram_eigenvalues();
        let sum: f64 = eigenvalues.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
        prop_assert!(eigenvalues.iter().all(|&l| l >= -1e-12));
    }

    #[test]
    fn secure_report_is_consistent(params in arb_params()) {
        let report = secret_key_rate(&params);
        prop_assert!(report.rsk_per_measurement >= 0.0);
        prop_assert!(report.rsk_bits_per_pulse >= 0.0);
        prop_assert!(report.rsk_bits_per_second >= 0.0);
        if !report.secure {
            prop_assert_eq!(report.rsk_per_measurement, 0.0);
            prop_assert_eq!(report.rsk_bits_per_second, 0.0);
        } else {
            prop_assert_eq!(report.rsk_bits_per_pulse, report.rsk_per_measurement);
        }
    }
}

#[test]
fn chi0_is_continuous_monotone_with_correct_limits() {
    let mut prev = f64::INFINITY;
    let mut prev_val = holevo_primary(0.0).unwrap();
    assert!((prev_val - 1.0).abs() < 1e-12);
    for i in 0..=2000 {
        let g = i as f64 / 2000.0;
        let chi0 = holevo_primary(g).unwrap();
        assert!(chi0 <= prev + 1e-12, "not monotone at gamma = {g}");
        // continuity: neighboring grid points stay close
        assert!((chi0 - prev_val).abs() < 2e-3, "jump at gamma = {g}");
        prev = chi0;
        prev_val = chi0;
    }
    assert!(holevo_primary(1.0).unwrap().abs() < 1e-12);
}

#[test]
fn closed_forms_match_oracle_over_wide_grid() {
    // mu in {0.05, 0.10, ..., 0.50} x t in {0.001, 0.01, 0.1, 0.5, 0.9}
    for i in 1..=10 {
        let mu = 0.05 * i as f64;
        for t in [0.001, 0.01, 0.1, 0.5, 0.9] {
            let g = gamma(mu, t);
            let brute = holevo_brute(mu, t);
            let d0 = (holevo_primary(g).unwrap() - brute.chi0).abs();
            let d1 = (holevo_secondary_bracket(g) - brute.chi1_bracket).abs();
            assert!(d0 <= 1e-9, "chi0 deviation {d0} at mu={mu}, t={t}");
            assert!(d1 <= 1e-9, "bracket deviation {d1} at mu={mu}, t={t}");
        }
    }
}

#[test]
fn secret_rate_monotone_non_increasing_in_distance() {
    for (mu, v, pd) in [(0.2, 0.9, 1e-7), (0.23, 1.0, 3.5e-9), (0.4, 0.95, 1e-6)] {
        let mut prev = f64::INFINITY;
        for step in 0..=100 {
            let params = SystemParams {
                source: SourceParams {
                    mu,
                    pulse_rate_hz: 1e10,
                },
                encoding: EncodingParams {
                    n_max: 4,
                    p_decoy: 0.02,
                },
                channel: ChannelParams {
                    length_km: 2.5 * step as f64,
                    attenuation_db_per_km: 0.2,
                },
                receiver: ReceiverParams {
                    efficiency: 0.1,
                    dark_count_prob: pd,
                    visibility: v,
                    dead_time_s: 0.0,
                },
            }
            .validate()
            .unwrap();
            let rate = secret_key_rate(&params).rsk_bits_per_pulse;
            assert!(
                rate <= prev + 1e-15,
                "rate increased at L = {} (mu={mu})",
                2.5 * step as f64
            );
            prev = rate;
        }
    }
}
