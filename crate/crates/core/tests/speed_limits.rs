use creutz::qsl::{energy_variance, mt_bound, tau_c_asymptote, tau_f_extrema, tau_fmax_asymptote};
use creutz::quench::{allowed_modes, QuenchSpec};
use proptest::prelude::*;
use std::f64::consts::PI;

const THETAS: [f64; 3] = [0.05 * PI, 0.25 * PI, 0.45 * PI];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mt_bound_never_exceeds_first_divergence(
        theta1 in 0.02f64..(0.5 * PI),
        l in 10usize..400,
    ) {
        for sol in allowed_modes(1.0, 1.0, theta1, l).unwrap() {
            if sol.zero_mode {
                continue;
            }
            let de = energy_variance(&QuenchSpec::new(1.0, 1.0, theta1, sol.theta2, l).unwrap());
            let bound = mt_bound(de).unwrap();
            prop_assert!(bound > 0.0 && sol.t_first > 0.0);
            prop_assert!(bound <= sol.t_first * (1.0 + 1e-12), "bound {bound} > tau_f {}", sol.t_first);
        }
    }
}

#[test]
fn tau_fmax_follows_its_asymptote() {
    for l in (500..=1000).filter(|l| l % 3 != 0).step_by(7) {
        let asym = tau_fmax_asymptote(1.0, 1.0, l).unwrap();
        for theta1 in THETAS {
            let ext = tau_f_extrema(1.0, 1.0, theta1, l).unwrap();
            let rel = (ext.tau_fmax - asym).abs() / asym;
            assert!(
                rel <= 0.01,
                "L={l} theta1={theta1}: {} vs {asym}",
                ext.tau_fmax
            );
        }
    }
}

/// The frontier mode sits up to one grid spacing inside the allowed region,
/// where `θ₂ = asin(rhs)` has infinite slope, so the approach to `τ_c` is slow
/// but steady from above.
#[test]
fn tau_fmin_converges_from_above() {
    for theta1 in THETAS {
        let tc = tau_c_asymptote(1.0, 1.0, theta1).unwrap();
        let rel = |l: usize| (tau_f_extrema(1.0, 1.0, theta1, l).unwrap().tau_fmin - tc) / tc;
        // Worst case over a window of sizes, since the grid offset of the
        // frontier varies from one size to the next.
        let worst = |from: usize| {
            (from..from + 12)
                .map(rel)
                .inspect(|&e| assert!(e >= 0.0, "theta1={theta1}: {e}"))
                .fold(0.0, f64::max)
        };
        let errs = [worst(1000), worst(4000), worst(16000)];
        assert!(
            errs[0] > errs[1] && errs[1] > errs[2],
            "theta1={theta1}: {errs:?}"
        );
        assert!(errs[2] <= 0.01, "theta1={theta1}: {errs:?}");
    }
}

#[test]
fn extrema_are_ordered() {
    for l in [50, 101, 250, 499] {
        for theta1 in THETAS {
            let ext = tau_f_extrema(1.0, 1.0, theta1, l).unwrap();
            assert!(ext.tau_fmin <= ext.tau_fmax);
            assert_eq!(ext.tau_fmax, PI / ext.sol_max.gap);
            assert_eq!(ext.tau_fmin, PI / ext.sol_min.gap);
        }
    }
}

#[test]
fn energy_variance_is_extensive() {
    let q = 0.25 * PI;
    let per_site = |l: usize| {
        energy_variance(&QuenchSpec::new(1.0, 1.0, q, -0.3, l).unwrap()).powi(2) / l as f64
    };
    let (a, b) = (per_site(600), per_site(1200));
    assert!((a - b).abs() / b <= 0.01, "{a} vs {b}");
}
