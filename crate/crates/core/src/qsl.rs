//! First divergence times of the rate function, the post-quench energy
//! spread, and Mandelstam–Tamm speed limits over finite-size sweeps.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{self, grid_k, ModelParams};
use crate::quench::{signed_allowed_modes, PreQuench, QuenchSpec, ZeroSolution};

/// `τ_f = π/Δε̃_k`; infinite for a zero-energy mode.
pub fn first_divergence_time(sol: &ZeroSolution) -> f64 {
    if sol.gap > 0.0 {
        PI / sol.gap
    } else {
        f64::INFINITY
    }
}

/// Which extremal exact-zero quench to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    /// Largest finite `τ_f` (post-quench phase nearest the critical point).
    Max,
    /// Smallest `τ_f` (frontier of the allowed set).
    Min,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Max => "max",
            Which::Min => "min",
        })
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Which::Max),
            "min" => Ok(Which::Min),
            other => Err(Error::InvalidInput(format!(
                "expected max or min, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauFExtrema {
    pub tau_fmax: f64,
    pub sol_max: ZeroSolution,
    pub tau_fmin: f64,
    pub sol_min: ZeroSolution,
    /// A zero-energy mode is on the grid; its `τ_f` is infinite and is kept
    /// out of `tau_fmax`.
    pub has_zero_mode: bool,
}

impl TauFExtrema {
    pub fn select(&self, which: Which) -> (f64, ZeroSolution) {
        match which {
            Which::Max => (self.tau_fmax, self.sol_max),
            Which::Min => (self.tau_fmin, self.sol_min),
        }
    }
}

/// Extremes of `τ_f` over the finite-gap exact-zero solutions, by direct scan.
/// Negative `θ₁` uses the mirrored branch.
pub fn tau_f_extrema(hopping: f64, vertical: f64, theta1: f64, l: usize) -> Result<TauFExtrema> {
    let sols = signed_allowed_modes(hopping, vertical, theta1, l)?;
    let has_zero_mode = sols.iter().any(|s| s.zero_mode);
    let mut finite = sols.into_iter().filter(|s| s.gap > 0.0);
    let first = finite.next().ok_or(Error::NoSolution(l))?;
    let (mut sol_max, mut sol_min) = (first, first);
    for s in finite {
        // Strict comparisons keep the lowest j among ties (mirror pairs).
        if s.gap < sol_max.gap {
            sol_max = s;
        }
        if s.gap > sol_min.gap {
            sol_min = s;
        }
    }
    Ok(TauFExtrema {
        tau_fmax: first_divergence_time(&sol_max),
        sol_max,
        tau_fmin: first_divergence_time(&sol_min),
        sol_min,
        has_zero_mode,
    })
}

/// `max_{k} π / (2|2K sin k_c⁻ (k − k_c⁻)|)`: the `θ₂ → 0` estimate of
/// `τ_fmax`, from the grid momentum nearest `k_c⁻`. Infinite when the
/// zero-energy mode is on the grid.
pub fn tau_fmax_asymptote(hopping: f64, vertical: f64, l: usize) -> Result<f64> {
    let params = ModelParams::new(hopping, vertical, 0.0)?;
    let (kc, _) = model::gap_closing_modes(&params)?;
    if l < 2 {
        return Err(Error::InvalidSize(l));
    }
    if model::is_commensurate(&params, l) {
        return Ok(f64::INFINITY);
    }
    let nearest = (0..l)
        .map(|j| (grid_k(j, l) - kc).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(PI / (2.0 * (2.0 * hopping * kc.sin() * nearest).abs()))
}

/// `τ_c = π / (2|2K sin k_c1| √(1 + sin θ₁))`, the large-`L` limit of
/// `τ_fmin`, where `k_c1` solves the exact-zero condition at `θ₂ = −π/2`.
pub fn tau_c_asymptote(hopping: f64, vertical: f64, theta1: f64) -> Result<f64> {
    ModelParams::new(hopping, vertical, theta1)?;
    let s1 = theta1.sin().abs();
    // (2K c + M)² = 4K²(1 − c²) s1, a quadratic in c = cos k.
    let a = 4.0 * hopping * hopping * (1.0 + s1);
    let b = 4.0 * hopping * vertical;
    let c = vertical * vertical - 4.0 * hopping * hopping * s1;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::NoAsymptote);
    }
    let sq = disc.sqrt();
    let roots = [(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)];
    let cos_k = roots
        .into_iter()
        .filter(|r| r.abs() <= 1.0)
        .min_by(|x, y| x.abs().total_cmp(&y.abs()))
        .ok_or(Error::NoAsymptote)?;
    let sin_k = (1.0 - cos_k * cos_k).sqrt();
    Ok(PI / (2.0 * (2.0 * hopping * sin_k).abs() * (1.0 + s1).sqrt()))
}

/// `ΔE` of the post-quench Hamiltonian in the pre-quench ground state.
pub fn energy_variance(spec: &QuenchSpec) -> f64 {
    PreQuench::from_spec(spec)
        .expect("QuenchSpec is validated at construction")
        .energy_variance_sq(spec.theta2)
        .sqrt()
}

/// `arccos(√L)/ΔE`.
pub fn qsl_time(le: f64, delta_e: f64) -> Result<f64> {
    if delta_e.is_nan() || delta_e <= 0.0 {
        return Err(Error::InvalidVariance(delta_e));
    }
    Ok(le.clamp(0.0, 1.0).sqrt().acos() / delta_e)
}

/// Mandelstam–Tamm time `π/(2ΔE)`.
pub fn mt_bound(delta_e: f64) -> Result<f64> {
    if delta_e.is_nan() || delta_e <= 0.0 {
        return Err(Error::InvalidVariance(delta_e));
    }
    Ok(PI / (2.0 * delta_e))
}

/// Speed-limit data for the extremal exact-zero quench at one size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QslPoint {
    pub l: usize,
    pub sol: ZeroSolution,
    pub tau_f: f64,
    pub delta_e: f64,
    pub tau_qsl: f64,
}

pub fn qsl_point(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    l: usize,
) -> Result<QslPoint> {
    let ext = tau_f_extrema(hopping, vertical, theta1, l)?;
    let (tau_f, sol) = ext.select(which);
    let spec = QuenchSpec::new(hopping, vertical, theta1, sol.theta2, l)?;
    let delta_e = energy_variance(&spec);
    Ok(QslPoint {
        l,
        sol,
        tau_f,
        delta_e,
        tau_qsl: mt_bound(delta_e)?,
    })
}

/// `qsl_point` over many sizes, evaluated in parallel and returned in input
/// order.
pub fn qsl_points(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    sizes: &[usize],
) -> Result<Vec<QslPoint>> {
    crate::par::map(sizes, |&l| qsl_point(hopping, vertical, theta1, which, l))
        .into_iter()
        .collect()
}

pub fn qsl_vs_size(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    sizes: &[usize],
) -> Result<Vec<(usize, f64)>> {
    Ok(qsl_points(hopping, vertical, theta1, which, sizes)?
        .into_iter()
        .map(|p| (p.l, p.tau_qsl))
        .collect())
}

/// Averaging convention for size sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// Divide by `L_max − L_min`, as written for the figure data.
    #[default]
    Paper,
    /// Divide by the number of sampled sizes.
    SampleCount,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Paper => "paper",
            Normalization::SampleCount => "sample-count",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Normalization::Paper),
            "sample-count" => Ok(Normalization::SampleCount),
            other => Err(Error::InvalidInput(format!(
                "expected paper or sample-count, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepStats {
    pub theta1: f64,
    pub mean: f64,
    pub variance: f64,
    pub sample_count: usize,
    pub normalization: Normalization,
}

/// `{l_min, l_min + step, …} ∩ [.., l_max]`.
pub fn sweep_sizes(l_min: usize, l_max: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || l_min >= l_max || l_min < 2 {
        return Err(Error::InvalidInput(format!(
            "invalid size range {l_min}..={l_max} step {step}"
        )));
    }
    Ok((l_min..=l_max).step_by(step).collect())
}

/// Mean and variance of a sequence of speed-limit times.
///
/// `Paper` divides both sums by `l_max − l_min` and uses `Σ(τ² − τ̄²)`
/// literally; `SampleCount` is the ordinary population mean and variance.
pub fn sweep_stats(
    theta1: f64,
    values: &[f64],
    l_min: usize,
    l_max: usize,
    normalization: Normalization,
) -> Result<SweepStats> {
    if values.is_empty() {
        return Err(Error::InvalidInput("no sweep samples".into()));
    }
    let n = values.len() as f64;
    let sum: f64 = values.iter().sum();
    let (mean, variance) = match normalization {
        Normalization::Paper => {
            if l_max <= l_min {
                return Err(Error::InvalidInput(format!(
                    "paper normalization needs l_max > l_min, got {l_min}..={l_max}"
                )));
            }
            let span = (l_max - l_min) as f64;
            let mean = sum / span;
            let var = values.iter().map(|v| v * v - mean * mean).sum::<f64>() / span;
            (mean, var)
        }
        Normalization::SampleCount => {
            let mean = sum / n;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            (mean, var)
        }
    };
    Ok(SweepStats {
        theta1,
        mean,
        variance,
        sample_count: values.len(),
        normalization,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn qsl_sweep_stats(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    which: Which,
    l_min: usize,
    l_max: usize,
    step: usize,
    normalization: Normalization,
) -> Result<SweepStats> {
    let sizes = sweep_sizes(l_min, l_max, step)?;
    let taus: Vec<f64> = qsl_vs_size(hopping, vertical, theta1, which, &sizes)?
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    sweep_stats(theta1, &taus, l_min, l_max, normalization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quench::allowed_modes;
    use approx::assert_abs_diff_eq;

    const Q: f64 = 0.25 * PI;

    #[test]
    fn first_divergence_examples() {
        let mut sol = allowed_modes(1.0, 1.0, Q, 22).unwrap()[2];
        assert_abs_diff_eq!(first_divergence_time(&sol), 9.206, epsilon = 1e-3);
        sol.gap = PI;
        assert_eq!(first_divergence_time(&sol), 1.0);
        sol.gap = 2.0;
        assert_abs_diff_eq!(first_divergence_time(&sol), PI / 2.0, epsilon = 1e-15);
        sol.gap = 0.0;
        assert_eq!(first_divergence_time(&sol), f64::INFINITY);
    }

    #[test]
    fn extrema_at_fifty() {
        let e = tau_f_extrema(1.0, 1.0, Q, 50).unwrap();
        let target = 3f64.sqrt() * 50.0 / 4.0;
        assert!((e.tau_fmax / target - 1.0).abs() < 0.03, "{}", e.tau_fmax);
        assert!(e.tau_fmin <= e.tau_fmax);
        assert_abs_diff_eq!(e.tau_fmax, PI / e.sol_max.gap, epsilon = 1e-12);
        assert_abs_diff_eq!(e.tau_fmin, PI / e.sol_min.gap, epsilon = 1e-12);
        assert!(!e.has_zero_mode);
    }

    #[test]
    fn extrema_skip_zero_mode() {
        let e = tau_f_extrema(1.0, 1.0, Q, 51).unwrap();
        assert!(e.has_zero_mode);
        assert!(e.tau_fmax.is_finite());
        assert!(!e.sol_max.zero_mode);
    }

    #[test]
    fn extrema_empty() {
        assert_eq!(tau_f_extrema(1.0, 1.0, Q, 2), Err(Error::NoSolution(2)));
    }

    #[test]
    fn mirrored_extrema_match() {
        let a = tau_f_extrema(1.0, 1.0, 0.3, 80).unwrap();
        let b = tau_f_extrema(1.0, 1.0, -0.3, 80).unwrap();
        assert_eq!(a.tau_fmax, b.tau_fmax);
        assert_eq!(a.sol_min.theta2, -b.sol_min.theta2);
    }

    #[test]
    fn tau_fmax_asymptote_examples() {
        assert_abs_diff_eq!(
            tau_fmax_asymptote(1.0, 1.0, 50).unwrap(),
            3f64.sqrt() * 50.0 / 4.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            tau_fmax_asymptote(1.0, 1.0, 100).unwrap(),
            43.301,
            epsilon = 1e-3
        );
        assert_eq!(tau_fmax_asymptote(1.0, 1.0, 51).unwrap(), f64::INFINITY);
    }

    #[test]
    fn tau_c_examples() {
        assert_abs_diff_eq!(
            tau_c_asymptote(1.0, 1.0, Q).unwrap(),
            0.6305,
            epsilon = 1e-4
        );
        let c = (-1.0 + 7f64.sqrt()) / 4.0;
        let expected = PI / (4.0 * (1.0 - c * c).sqrt() * 2f64.sqrt());
        assert_abs_diff_eq!(
            tau_c_asymptote(1.0, 1.0, PI / 2.0).unwrap(),
            expected,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(expected, 0.609323, epsilon = 1e-6);
    }

    #[test]
    fn variance_examples() {
        let s = QuenchSpec::new(1.0, 1.0, Q, Q, 30).unwrap();
        assert_eq!(energy_variance(&s), 0.0);
        let a = energy_variance(&QuenchSpec::new(1.0, 1.0, Q, -0.3, 1200).unwrap()).powi(2);
        let b = energy_variance(&QuenchSpec::new(1.0, 1.0, Q, -0.3, 600).unwrap()).powi(2);
        assert!((1.9..=2.1).contains(&(a / b)));
    }

    #[test]
    fn qsl_time_examples() {
        assert_eq!(qsl_time(1.0, 3.0).unwrap(), 0.0);
        assert_abs_diff_eq!(qsl_time(0.0, 1.0).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(qsl_time(0.5, 2.0).unwrap(), PI / 8.0, epsilon = 1e-15);
        assert_eq!(qsl_time(0.5, 0.0), Err(Error::InvalidVariance(0.0)));
        assert!(qsl_time(0.5, 0.2).unwrap() < qsl_time(0.4, 0.2).unwrap());
    }

    #[test]
    fn mt_examples() {
        assert_abs_diff_eq!(mt_bound(PI / 2.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mt_bound(1.0).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert!(mt_bound(-1.0).is_err());
    }

    #[test]
    fn singleton_size_list() {
        let v = qsl_vs_size(1.0, 1.0, Q, Which::Max, &[50]).unwrap();
        let p = qsl_point(1.0, 1.0, Q, Which::Max, 50).unwrap();
        assert_eq!(v, vec![(50, p.tau_qsl)]);
        let spec = QuenchSpec::new(1.0, 1.0, Q, p.sol.theta2, 50).unwrap();
        assert_eq!(p.tau_qsl, PI / (2.0 * energy_variance(&spec)));
    }

    #[test]
    fn stats_of_constant_sequence() {
        let s = sweep_stats(0.1, &[2.5; 7], 10, 28, Normalization::SampleCount).unwrap();
        assert_eq!(s.mean, 2.5);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.sample_count, 7);
    }

    #[test]
    fn paper_normalization_is_literal() {
        let v = [1.0, 2.0, 4.0];
        let s = sweep_stats(0.0, &v, 10, 16, Normalization::Paper).unwrap();
        assert_abs_diff_eq!(s.mean, 7.0 / 6.0, epsilon = 1e-15);
        let m = 7.0 / 6.0;
        assert_abs_diff_eq!(s.variance, (21.0 - 3.0 * m * m) / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn paper_sweep_size_count() {
        assert_eq!(sweep_sizes(50, 1001, 3).unwrap().len(), 318);
        assert!(sweep_sizes(50, 50, 3).is_err());
        assert!(sweep_sizes(50, 60, 0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("max".parse::<Which>().unwrap(), Which::Max);
        assert!("both".parse::<Which>().is_err());
        assert_eq!(
            "sample-count".parse::<Normalization>().unwrap(),
            Normalization::SampleCount
        );
        assert_eq!(Normalization::Paper.to_string(), "paper");
    }
}
