use creutz::oracle::{evolved_norm, numeric_energy_variance, numeric_mode_le};
use creutz::qsl::energy_variance;
use creutz::quench::{
    allowed_modes, critical_times, loschmidt_echo, mode_amplitude, rate_function,
    zero_condition_residual, QuenchSpec,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn quench() -> impl Strategy<Value = (f64, f64, f64, f64, f64, f64)> {
    (
        0.2f64..2.0,
        0.05f64..3.0,
        -PI..PI,
        -PI..PI,
        0.0f64..2.0 * PI,
        0.0f64..50.0,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn closed_form_mode_factor_matches_oracle((k_hop, m, t1, t2, k, t) in quench()) {
        let spec = QuenchSpec::new(k_hop, m, t1, t2, 1).unwrap();
        let closed = mode_amplitude(&spec, k).echo_factor(t);
        let numeric = numeric_mode_le(k_hop, m, t1, t2, k, t);
        prop_assert!((closed - numeric).abs() <= 1e-9, "closed {closed} numeric {numeric}");
    }

    #[test]
    fn evolution_is_unitary((k_hop, m, t1, t2, k, t) in quench()) {
        prop_assert!((evolved_norm(k_hop, m, t1, t2, k, t) - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn allowed_phases_satisfy_the_zero_condition(
        (k_hop, m) in (0.5f64..2.0, 0.05f64..1.0),
        theta1 in 0.01f64..(0.5 * PI),
        l in 4usize..200,
    ) {
        for sol in allowed_modes(k_hop, m, theta1, l).unwrap() {
            if sol.zero_mode {
                continue;
            }
            let r = zero_condition_residual(k_hop, m, theta1, sol.theta2, sol.k);
            prop_assert!(r.abs() <= 1e-10 * (2.0 * k_hop + m).powi(2), "residual {r}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_touches_zero_at_critical_times(
        theta1 in 0.05f64..(0.5 * PI),
        l in 8usize..120,
    ) {
        let sols = allowed_modes(1.0, 1.0, theta1, l).unwrap();
        for sol in sols.iter().filter(|s| !s.zero_mode) {
            for t in critical_times(sol, 2).unwrap() {
                let le = numeric_mode_le(1.0, 1.0, theta1, sol.theta2, sol.k, t);
                prop_assert!(le <= 1e-12, "mode le {le} at t={t}");
            }
        }
    }

    #[test]
    fn energy_variance_matches_oracle(
        (k_hop, m) in (0.2f64..2.0, 0.05f64..3.0),
        (t1, t2) in (-PI..PI, -PI..PI),
        l in 1usize..64,
    ) {
        let spec = QuenchSpec::new(k_hop, m, t1, t2, l).unwrap();
        // Compared as ΔE²: the oracle's ⟨H²⟩ − ⟨H⟩² carries rounding noise
        // that a square root would amplify near identity quenches.
        let closed = energy_variance(&spec).powi(2);
        let numeric = numeric_energy_variance(k_hop, m, t1, t2, l).powi(2);
        let scale = (2.0 * k_hop + m).powi(2) * l as f64;
        prop_assert!((closed - numeric).abs() <= 1e-12 * scale, "{closed} vs {numeric}");
    }
}

#[test]
fn energy_variance_three_site_example() {
    let q = 0.25 * PI;
    let spec = QuenchSpec::new(1.0, 1.0, q, -q, 3).unwrap();
    let closed = energy_variance(&spec);
    let numeric = numeric_energy_variance(1.0, 1.0, q, -q, 3);
    assert!((closed - numeric).abs() <= 1e-10, "{closed} vs {numeric}");
}

#[test]
fn exact_zeros_on_the_full_chain() {
    let q = 0.25 * PI;
    for sol in allowed_modes(1.0, 1.0, q, 22).unwrap() {
        let spec = QuenchSpec::new(1.0, 1.0, q, sol.theta2, 22).unwrap();
        let times = critical_times(&sol, 2).unwrap();
        for &t in &times {
            assert!(loschmidt_echo(&spec, t).le <= 1e-12);
        }
        let trace = rate_function(&spec, &times).unwrap();
        assert!(trace.divergent.iter().all(|&d| d));
    }
}
