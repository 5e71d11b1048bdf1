use creutz::noise::{mixed_le, noisy_qsl_bound, noisy_qsl_vs_size, sample_noise, NoiseConfig};
use creutz::oracle::numeric_mixed_le;
use creutz::par;
use creutz::qsl::{energy_variance, Which};
use creutz::quench::{allowed_modes, loschmidt_echo, QuenchSpec};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mixed_echo_matches_density_matrices(
        (t1, t2) in (-PI..PI, -PI..PI),
        l in 1usize..=4,
        t in 0.0f64..10.0,
        fraction in 0.0f64..0.5,
        seed in any::<u64>(),
    ) {
        let spec = QuenchSpec::new(1.0, 1.0, t1, t2, l).unwrap();
        let ens = sample_noise(t2, fraction, 5, seed).unwrap();
        let phases: Vec<f64> = ens.phases(t2).collect();
        let closed = mixed_le(&spec, &ens, t);
        let dense = numeric_mixed_le(1.0, 1.0, t1, &phases, l, t);
        prop_assert!((closed - dense).abs() <= 1e-10, "{closed} vs {dense}");
        prop_assert!((0.0..=1.0).contains(&closed));
    }
}

#[test]
fn mixed_echo_starts_at_one() {
    let spec = QuenchSpec::new(1.0, 1.0, 0.25 * PI, -0.4, 40).unwrap();
    let ens = sample_noise(-0.4, 0.1, 100, 3).unwrap();
    assert_eq!(mixed_le(&spec, &ens, 0.0), 1.0);
}

#[test]
fn zero_noise_limit_recovers_half_inverse_spread() {
    let q = 0.25 * PI;
    let l = 22;
    let sol = allowed_modes(1.0, 1.0, q, l).unwrap()[2];
    let spec = QuenchSpec::new(1.0, 1.0, q, sol.theta2, l).unwrap();
    let de = energy_variance(&spec);
    let ens = sample_noise(sol.theta2, 1e-8, 1000, 11).unwrap();
    let bound = noisy_qsl_bound(&spec, &ens, sol.t_first).unwrap();
    assert!(
        (bound - 1.0 / (2.0 * de)).abs() <= 1e-6,
        "{bound} vs {}",
        1.0 / (2.0 * de)
    );
    assert!(loschmidt_echo(&spec, sol.t_first).le <= 1e-12);
}

#[test]
fn sweep_is_bit_identical_across_runs_and_pools() {
    let sizes = [50, 53, 56, 101];
    let cfg = NoiseConfig {
        count: 200,
        seed: 99,
        ..Default::default()
    };
    let run = || noisy_qsl_vs_size(1.0, 1.0, 0.25 * PI, Which::Min, &sizes, &cfg).unwrap();
    let reference = par::single_threaded(run);
    assert_eq!(reference, run());
    assert_eq!(reference, par::with_threads(3, run));
    for p in &reference {
        assert!(p.tau_qsl_noisy < p.tau_qsl_noiseless);
    }
}
