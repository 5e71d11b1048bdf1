//! Classical noise on the post-quench phase.
//!
//! An ensemble of additive shifts `θ₂ → θ₂ + η` turns the evolved state into a
//! mixture. Its echo is the relative purity `tr(ρ₀ρ_t)/tr(ρ₀²)`, which for a
//! pure initial state is the plain average of the per-sample echoes.

use std::f64::consts::PI;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::qsl::{self, Which};
use crate::quench::{PreQuench, QuenchSpec};

/// Noise half-width relative to `|θ₂|` used for the figure data.
pub const DEFAULT_FRACTION: f64 = 0.1;
/// Ensemble size used for the figure data.
pub const DEFAULT_COUNT: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseEnsemble {
    pub base_theta2: f64,
    pub fraction: f64,
    pub count: usize,
    pub seed: u64,
    /// Shifts `η_i`, uniform on `[−fraction·|base_theta2|, +fraction·|base_theta2|]`.
    pub samples: Vec<f64>,
}

impl NoiseEnsemble {
    pub fn half_width(&self) -> f64 {
        self.fraction * self.base_theta2.abs()
    }

    /// Perturbed post-quench phases `θ₂ + η_i`.
    pub fn phases(&self, theta2: f64) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(move |eta| theta2 + eta)
    }
}

pub fn sample_noise(
    base_theta2: f64,
    fraction: f64,
    count: usize,
    seed: u64,
) -> Result<NoiseEnsemble> {
    if count < 1 {
        return Err(Error::InvalidEnsemble("count must be at least 1".into()));
    }
    if !(fraction.is_finite() && fraction >= 0.0) {
        return Err(Error::InvalidEnsemble(format!(
            "fraction must be finite and nonnegative, got {fraction}"
        )));
    }
    if !base_theta2.is_finite() {
        return Err(Error::InvalidEnsemble(format!(
            "base theta2 = {base_theta2}"
        )));
    }
    let width = fraction * base_theta2.abs();
    let samples = if width > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = Uniform::new_inclusive(-width, width);
        (0..count).map(|_| dist.sample(&mut rng)).collect()
    } else {
        vec![0.0; count]
    };
    Ok(NoiseEnsemble {
        base_theta2,
        fraction,
        count,
        seed,
        samples,
    })
}

/// Ordered sum; keeps reductions independent of the worker count.
fn ordered_mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mixed-state echo: the average of `L(t)` over the perturbed post-quench
/// phases `spec.theta2 + η_i`.
pub fn mixed_le(spec: &QuenchSpec, ens: &NoiseEnsemble, t: f64) -> f64 {
    let pre = PreQuench::from_spec(spec).expect("QuenchSpec is validated at construction");
    mixed_le_prepared(&pre, spec.theta2, ens, t)
}

pub(crate) fn mixed_le_prepared(pre: &PreQuench, theta2: f64, ens: &NoiseEnsemble, t: f64) -> f64 {
    let echoes = par::map(&ens.samples, |eta| pre.log_echo(theta2 + eta, t).exp());
    ordered_mean(&echoes).clamp(0.0, 1.0)
}

/// `(1/Z) Σ_η ΔE^η` with `Z` the sample count.
pub fn ensemble_mean_variance(spec: &QuenchSpec, ens: &NoiseEnsemble) -> f64 {
    let pre = PreQuench::from_spec(spec).expect("QuenchSpec is validated at construction");
    ensemble_mean_variance_prepared(&pre, spec.theta2, ens)
}

pub(crate) fn ensemble_mean_variance_prepared(
    pre: &PreQuench,
    theta2: f64,
    ens: &NoiseEnsemble,
) -> f64 {
    let spreads = par::map(&ens.samples, |eta| {
        pre.energy_variance_sq(theta2 + eta).sqrt()
    });
    ordered_mean(&spreads)
}

/// Channel speed limit `(2θ²/π²) / ((1/Z) Σ_η ΔE^η)` with `L(t_eval) = cos θ`.
pub fn noisy_qsl_bound(spec: &QuenchSpec, ens: &NoiseEnsemble, t_eval: f64) -> Result<f64> {
    let pre = PreQuench::from_spec(spec)?;
    noisy_bound_prepared(&pre, spec.theta2, ens, t_eval).map(|(b, _, _)| b)
}

/// Returns `(bound, θ, mean ΔE)`.
fn noisy_bound_prepared(
    pre: &PreQuench,
    theta2: f64,
    ens: &NoiseEnsemble,
    t_eval: f64,
) -> Result<(f64, f64, f64)> {
    if !(t_eval > 0.0 && t_eval.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "t_eval must be positive, got {t_eval}"
        )));
    }
    let mean_de = ensemble_mean_variance_prepared(pre, theta2, ens);
    if mean_de.is_nan() || mean_de <= 0.0 {
        return Err(Error::InvalidVariance(mean_de));
    }
    let angle = mixed_le_prepared(pre, theta2, ens, t_eval).acos();
    Ok((2.0 * angle * angle / (PI * PI) / mean_de, angle, mean_de))
}

/// Per-size seed derived from a base seed, so every size in a sweep draws an
/// independent, reproducible ensemble.
pub fn size_seed(seed: u64, l: usize) -> u64 {
    seed ^ (l as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Noiseless and noisy speed limits for the extremal exact-zero quench at one
/// size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyQslPoint {
    pub l: usize,
    pub theta2: f64,
    pub t_eval: f64,
    pub tau_qsl_noiseless: f64,
    pub tau_qsl_noisy: f64,
    /// `θ = arccos L_mixed(t_eval)`.
    pub theta_used: f64,
    pub mean_de: f64,
}

/// Noise settings for a size sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    pub fraction: f64,
    pub count: usize,
    pub seed: u64,
    /// Evaluation time; defaults to the noiseless first divergence time.
    pub t_eval: Option<f64>,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            fraction: DEFAULT_FRACTION,
            count: DEFAULT_COUNT,
            seed: 0,
            t_eval: None,
        }
    }
}

pub fn noisy_qsl_point(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    l: usize,
    cfg: &NoiseConfig,
) -> Result<NoisyQslPoint> {
    let point = qsl::qsl_point(hopping, vertical, theta1, which, l)?;
    let theta2 = point.sol.theta2;
    let ens = sample_noise(theta2, cfg.fraction, cfg.count, size_seed(cfg.seed, l))?;
    let t_eval = cfg.t_eval.unwrap_or(point.tau_f);
    let pre = PreQuench::new(hopping, vertical, theta1, l)?;
    let (bound, angle, mean_de) = noisy_bound_prepared(&pre, theta2, &ens, t_eval)?;
    Ok(NoisyQslPoint {
        l,
        theta2,
        t_eval,
        tau_qsl_noiseless: point.tau_qsl,
        tau_qsl_noisy: bound,
        theta_used: angle,
        mean_de,
    })
}

pub fn noisy_qsl_vs_size(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    sizes: &[usize],
    cfg: &NoiseConfig,
) -> Result<Vec<NoisyQslPoint>> {
    par::map(sizes, |&l| {
        noisy_qsl_point(hopping, vertical, theta1, which, l, cfg)
    })
    .into_iter()
    .collect()
}
