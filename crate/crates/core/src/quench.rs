//! Sudden quenches of the Peierls phase `θ₁ → θ₂`: per-mode echo amplitudes,
//! the Loschmidt echo and its rate function, the exact-zero condition and the
//! set of post-quench phases that satisfy it on a finite grid.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{self, grid_k, ModelParams};

/// `|1 − A_k|` below which a mode counts as fully orthogonalizing.
pub const CRITICAL_TOL: f64 = 1e-10;

/// Relative `|ε_qp|` below which a grid point is treated as the zero-energy
/// mode itself.
pub const ZERO_MODE_TOL: f64 = 1e-12;

/// One sudden quench of the Peierls phase on a chain of `l` sites per leg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchSpec {
    pub hopping: f64,
    pub vertical: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub l: usize,
}

impl QuenchSpec {
    pub fn new(hopping: f64, vertical: f64, theta1: f64, theta2: f64, l: usize) -> Result<Self> {
        ModelParams::new(hopping, vertical, theta1)?;
        if !theta2.is_finite() {
            return Err(Error::InvalidParams(format!(
                "theta2 must be finite, got {theta2}"
            )));
        }
        if l == 0 {
            return Err(Error::InvalidSize(l));
        }
        Ok(Self {
            hopping,
            vertical,
            theta1,
            theta2,
            l,
        })
    }

    pub fn initial(&self) -> ModelParams {
        ModelParams {
            hopping: self.hopping,
            vertical: self.vertical,
            theta: self.theta1,
        }
    }

    pub fn post(&self) -> ModelParams {
        self.initial().with_theta(self.theta2)
    }

    pub fn with_theta2(self, theta2: f64) -> Self {
        Self { theta2, ..self }
    }
}

/// Echo amplitude of a single momentum mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitude {
    pub k: f64,
    /// `A_k = sin²(2η_k)`.
    pub a: f64,
    /// `1 − A_k = cos²(2η_k)`, kept separately for full relative precision
    /// near orthogonality.
    pub complement: f64,
    /// Post-quench gap `Δε̃_k(θ₂)`.
    pub gap: f64,
    /// `2η_k = γ_k(θ₁) − γ_k(θ₂)`.
    pub two_eta: f64,
}

impl ModeAmplitude {
    fn from_two_eta(k: f64, two_eta: f64, gap: f64) -> Self {
        let (s, c) = two_eta.sin_cos();
        Self {
            k,
            a: s * s,
            complement: c * c,
            gap,
            two_eta,
        }
    }

    /// `1 − A_k sin²(Δε̃ t/2)`.
    pub fn echo_factor(&self, t: f64) -> f64 {
        echo_factor(self.a, self.complement, self.gap, t)
    }

    pub fn is_critical(&self) -> bool {
        self.complement <= CRITICAL_TOL && self.gap > 0.0
    }
}

/// `1 − A sin²x` with `x = gap·t/2`. Near orthogonality it is evaluated as
/// `cos²x + (1 − A) sin²x` so that exact zeros survive cancellation.
#[inline]
fn echo_factor(a: f64, complement: f64, gap: f64, t: f64) -> f64 {
    let (s, c) = (0.5 * gap * t).sin_cos();
    if complement >= 0.5 {
        1.0 - a * s * s
    } else {
        c * c + complement * s * s
    }
}

pub fn mode_amplitude(spec: &QuenchSpec, k: f64) -> ModeAmplitude {
    let pre = model::bogoliubov_angle(&spec.initial(), k).gamma();
    let post = spec.post();
    let two_eta = pre - model::bogoliubov_angle(&post, k).gamma();
    ModeAmplitude::from_two_eta(k, two_eta, model::band_gap(&post, k))
}

/// `(cos γ, sin γ)` for `γ = atan2(two_b, d)`, with the degenerate point
/// mapped to `γ = 0`. `norm` is `hypot(two_b, d)`.
#[inline]
fn unit_angle(two_b: f64, d: f64, norm: f64) -> (f64, f64) {
    if norm == 0.0 {
        (1.0, 0.0)
    } else {
        (d / norm, two_b / norm)
    }
}

/// Per-mode terms of a quench, evaluated without inverse trigonometry:
/// `sin 2η = sin γ₁ cos γ₂ − cos γ₁ sin γ₂` and likewise for `cos 2η`.
#[derive(Debug, Clone, Copy)]
struct ModeTerms {
    sin_2eta: f64,
    cos_2eta: f64,
    gap: f64,
}

/// Pre-quench data for every grid momentum of a fixed `(K, M, θ₁, L)`.
///
/// Ensembles and sweeps over `θ₂` reuse this table instead of recomputing the
/// initial Bogoliubov angles.
#[derive(Debug, Clone)]
pub struct PreQuench {
    hopping: f64,
    vertical: f64,
    theta1: f64,
    l: usize,
    k: Vec<f64>,
    /// `2ε_qp`.
    two_b: Vec<f64>,
    /// `4K sin k`, so that `ε_q − ε_p = chord · sin θ`.
    chord: Vec<f64>,
    /// `(cos γ₁, sin γ₁)`.
    pre: Vec<(f64, f64)>,
    /// `2ε_qp · chord / |h₁|`: `sin 2η · Δε̃ = weight · (sin θ₂ − sin θ₁)`,
    /// which vanishes exactly for an identity quench.
    weight: Vec<f64>,
    sin_theta1: f64,
}

/// Factors multiplied together before taking a logarithm. Each factor lies
/// in `[0, 1]` and is at worst ~1e-32 away from an exact zero, so eight of
/// them cannot underflow unless the echo is already zero.
const LOG_CHUNK: usize = 8;

impl PreQuench {
    pub fn new(hopping: f64, vertical: f64, theta1: f64, l: usize) -> Result<Self> {
        QuenchSpec::new(hopping, vertical, theta1, theta1, l)?;
        let k: Vec<f64> = (0..l).map(|j| grid_k(j, l)).collect();
        let two_b: Vec<f64> = k
            .iter()
            .map(|k| 2.0 * (2.0 * hopping * k.cos() + vertical))
            .collect();
        let chord: Vec<f64> = k.iter().map(|k| 4.0 * hopping * k.sin()).collect();
        let s1 = theta1.sin();
        let pre = two_b
            .iter()
            .zip(&chord)
            .map(|(&b, &c)| {
                let d = c * s1;
                unit_angle(b, d, b.hypot(d))
            })
            .collect();
        let weight = two_b
            .iter()
            .zip(&chord)
            .map(|(&b, &c)| {
                let norm = b.hypot(c * s1);
                if norm == 0.0 {
                    0.0
                } else {
                    b * c / norm
                }
            })
            .collect();
        Ok(Self {
            hopping,
            vertical,
            theta1,
            l,
            k,
            two_b,
            chord,
            pre,
            weight,
            sin_theta1: s1,
        })
    }

    pub fn from_spec(spec: &QuenchSpec) -> Result<Self> {
        Self::new(spec.hopping, spec.vertical, spec.theta1, spec.l)
    }

    pub fn len(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn spec(&self, theta2: f64) -> QuenchSpec {
        QuenchSpec {
            hopping: self.hopping,
            vertical: self.vertical,
            theta1: self.theta1,
            theta2,
            l: self.l,
        }
    }

    #[inline]
    fn terms(&self, j: usize, sin_theta2: f64) -> ModeTerms {
        let two_b = self.two_b[j];
        let d2 = self.chord[j] * sin_theta2;
        // Entries are O(K + M), so the plain norm cannot overflow.
        let gap = (two_b * two_b + d2 * d2).sqrt();
        let (c1, s1) = self.pre[j];
        if gap == 0.0 {
            // γ₂ = 0 at the degenerate point.
            return ModeTerms {
                sin_2eta: s1,
                cos_2eta: c1,
                gap,
            };
        }
        let inv = gap.recip();
        ModeTerms {
            sin_2eta: self.weight[j] * (sin_theta2 - self.sin_theta1) * inv,
            cos_2eta: (c1 * d2 + s1 * two_b) * inv,
            gap,
        }
    }

    /// Mode amplitudes over the whole grid for post-quench phase `theta2`.
    /// `two_eta` is reduced to `(−π, π]`.
    pub fn modes(&self, theta2: f64) -> impl Iterator<Item = ModeAmplitude> + '_ {
        let s2 = theta2.sin();
        (0..self.l).map(move |j| {
            let m = self.terms(j, s2);
            ModeAmplitude {
                k: self.k[j],
                a: m.sin_2eta * m.sin_2eta,
                complement: m.cos_2eta * m.cos_2eta,
                gap: m.gap,
                two_eta: m.sin_2eta.atan2(m.cos_2eta),
            }
        })
    }

    /// `ln L(t)`, accumulated over `j` in ascending order.
    pub fn log_echo(&self, theta2: f64, t: f64) -> f64 {
        let s2 = theta2.sin();
        let mut log = 0.0;
        let mut j = 0;
        while j < self.l {
            let end = (j + LOG_CHUNK).min(self.l);
            let mut prod = 1.0;
            for i in j..end {
                let m = self.terms(i, s2);
                let a = m.sin_2eta * m.sin_2eta;
                let complement = m.cos_2eta * m.cos_2eta;
                prod *= echo_factor(a, complement, m.gap, t);
            }
            log += prod.ln();
            j = end;
        }
        log
    }

    /// `ΔE² = Σ_k ¼ A_k Δε̃_k²`, which reduces to
    /// `¼ weight_k² (sin θ₂ − sin θ₁)²` per mode.
    pub fn energy_variance_sq(&self, theta2: f64) -> f64 {
        let ds = theta2.sin() - self.sin_theta1;
        self.weight
            .iter()
            .map(|w| {
                let x = w * ds;
                0.25 * x * x
            })
            .sum()
    }
}

/// Loschmidt echo at one instant, in both log and linear form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Echo {
    pub log_le: f64,
    pub le: f64,
}

impl Echo {
    fn from_log(log_le: f64) -> Self {
        let le = if log_le == f64::NEG_INFINITY {
            0.0
        } else {
            log_le.exp()
        };
        Self { log_le, le }
    }
}

pub fn loschmidt_echo(spec: &QuenchSpec, t: f64) -> Echo {
    let pre = PreQuench::from_spec(spec).expect("QuenchSpec is validated at construction");
    Echo::from_log(pre.log_echo(spec.theta2, t))
}

/// Sampled echo and rate function `λ(t) = −ln L(t)/L`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeTrace {
    pub l: usize,
    pub times: Vec<f64>,
    pub log_le: Vec<f64>,
    pub rate: Vec<f64>,
    /// Samples at which the echo vanishes exactly: either the computed echo
    /// is exactly zero, or the sample is the grid point nearest to a critical
    /// time of a fully orthogonalizing mode.
    pub divergent: Vec<bool>,
}

impl LeTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Sampling cell `[lo, hi)` owned by sample `i` of an ascending grid.
fn sample_cell(times: &[f64], i: usize) -> (f64, f64) {
    let t = times[i];
    if times.len() == 1 {
        let tol = 1e-9 * t.max(1.0);
        return (t - tol, t + tol);
    }
    let lo = if i == 0 {
        t - 0.5 * (times[1] - t)
    } else {
        0.5 * (times[i - 1] + t)
    };
    let hi = if i + 1 == times.len() {
        t + 0.5 * (t - times[i - 1])
    } else {
        0.5 * (t + times[i + 1])
    };
    (lo, hi)
}

/// Whether some `t_n = (2n+1)π/gap` falls in `[lo, hi]`.
fn critical_time_in(gap: f64, lo: f64, hi: f64) -> bool {
    let n = ((lo * gap / PI - 1.0) * 0.5).ceil().max(0.0);
    let t_n = (2.0 * n + 1.0) * PI / gap;
    t_n >= lo && t_n <= hi
}

pub fn rate_function(spec: &QuenchSpec, times: &[f64]) -> Result<LeTrace> {
    if times.is_empty() {
        return Err(Error::InvalidInput("empty time grid".into()));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidInput(
            "times must be finite and nonnegative".into(),
        ));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "times must be strictly ascending".into(),
        ));
    }
    let pre = PreQuench::from_spec(spec)?;
    let critical_gaps: Vec<f64> = pre
        .modes(spec.theta2)
        .filter(ModeAmplitude::is_critical)
        .map(|m| m.gap)
        .collect();

    let log_le: Vec<f64> = crate::par::map(times, |&t| pre.log_echo(spec.theta2, t));
    let l = spec.l as f64;
    let rate = log_le
        .iter()
        .map(|&x| if x == 0.0 { 0.0 } else { -x / l })
        .collect();
    let divergent = (0..times.len())
        .map(|i| {
            if log_le[i] == f64::NEG_INFINITY {
                return true;
            }
            let (lo, hi) = sample_cell(times, i);
            critical_gaps.iter().any(|&g| critical_time_in(g, lo, hi))
        })
        .collect();
    Ok(LeTrace {
        l: spec.l,
        times: times.to_vec(),
        log_le,
        rate,
        divergent,
    })
}

/// `sin θ₂` required for an exact zero at `k`:
/// `−(2K cos k + M)² / ((2K sin k)² sin θ₁)`.
pub fn zero_condition_rhs(hopping: f64, vertical: f64, theta1: f64, k: f64) -> Result<f64> {
    let s = k.sin();
    if s.abs() < 1e-12 {
        return Err(Error::ExcludedMode(k));
    }
    let eps_qp = 2.0 * hopping * k.cos() + vertical;
    let chord = 2.0 * hopping * s;
    Ok(-(eps_qp * eps_qp) / (chord * chord * theta1.sin()))
}

/// Residual of the exact-zero constraint
/// `(2K cos k + M)² + (2K sin k)² sin θ₁ sin θ₂`.
pub fn zero_condition_residual(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    theta2: f64,
    k: f64,
) -> f64 {
    let eps_qp = 2.0 * hopping * k.cos() + vertical;
    let chord = 2.0 * hopping * k.sin();
    eps_qp * eps_qp + chord * chord * theta1.sin() * theta2.sin()
}

/// A grid mode together with the post-quench phase that makes it fully
/// orthogonalizing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSolution {
    pub j: usize,
    pub k: f64,
    pub theta2: f64,
    /// `Δε̃_k(θ₂)`; exactly zero for the zero-energy mode.
    pub gap: f64,
    /// `π/gap`, infinite for the zero-energy mode.
    pub t_first: f64,
    /// The grid point coincides with a gap-closing momentum.
    pub zero_mode: bool,
}

fn check_theta1(theta1: f64) -> Result<()> {
    if theta1 > 0.0 && theta1 <= 0.5 * PI + 1e-15 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "theta1 = {theta1} outside (0, pi/2]; negate both phases for the mirrored branch"
        )))
    }
}

/// All grid modes admitting an exact echo zero, ordered by `j`.
pub fn allowed_modes(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    l: usize,
) -> Result<Vec<ZeroSolution>> {
    ModelParams::new(hopping, vertical, theta1)?;
    check_theta1(theta1)?;
    if l == 0 {
        return Err(Error::InvalidSize(l));
    }
    let scale = 2.0 * hopping + vertical;
    let mut out = Vec::new();
    for j in 1..l {
        if 2 * j == l {
            continue;
        }
        let k = grid_k(j, l);
        let eps_qp = 2.0 * hopping * k.cos() + vertical;
        if eps_qp.abs() <= ZERO_MODE_TOL * scale {
            out.push(ZeroSolution {
                j,
                k,
                theta2: 0.0,
                gap: 0.0,
                t_first: f64::INFINITY,
                zero_mode: true,
            });
            continue;
        }
        let rhs = zero_condition_rhs(hopping, vertical, theta1, k)?;
        if rhs.abs() > 1.0 {
            continue;
        }
        let theta2 = rhs.asin();
        let chiral = 2.0 * hopping * k.sin() * theta2.sin();
        let gap = 2.0 * eps_qp.hypot(chiral);
        out.push(ZeroSolution {
            j,
            k,
            theta2,
            gap,
            t_first: PI / gap,
            zero_mode: false,
        });
    }
    Ok(out)
}

/// [`allowed_modes`] extended to `θ₁ ∈ [−π/2, 0)` by negating both phases,
/// which maps solutions `θ₂ ≤ 0` onto `θ₂ ≥ 0`.
pub fn signed_allowed_modes(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    l: usize,
) -> Result<Vec<ZeroSolution>> {
    if theta1 < 0.0 {
        let mut sols = allowed_modes(hopping, vertical, -theta1, l)?;
        for s in sols.iter_mut() {
            s.theta2 = -s.theta2;
        }
        Ok(sols)
    } else {
        allowed_modes(hopping, vertical, theta1, l)
    }
}

/// Critical times `t_n* = 2π(n + ½)/gap` for `n = 0..=n_max`.
pub fn critical_times(sol: &ZeroSolution, n_max: usize) -> Result<Vec<f64>> {
    if sol.gap.is_nan() || sol.gap <= 0.0 {
        return Err(Error::NoFiniteCriticalTime);
    }
    Ok((0..=n_max)
        .map(|n| 2.0 * PI * (n as f64 + 0.5) / sol.gap)
        .collect())
}

/// Smallest `|θ₂|` over the exact-zero solutions; `0` when the zero-energy
/// mode is on the grid and `+∞` when there are no solutions.
pub fn delta_c(hopping: f64, vertical: f64, theta1: f64, l: usize) -> Result<f64> {
    let sols = allowed_modes(hopping, vertical, theta1, l)?;
    Ok(sols
        .iter()
        .map(|s| s.theta2.abs())
        .fold(f64::INFINITY, f64::min))
}

/// Small-gap estimate `min_{k∈k_s} (k − k_c⁻)²/sin θ₁` of [`delta_c`].
pub fn delta_c_asymptote(hopping: f64, vertical: f64, theta1: f64, l: usize) -> Result<f64> {
    let params = ModelParams::new(hopping, vertical, theta1)?;
    let (kc, _) = model::gap_closing_modes(&params)?;
    if model::is_commensurate(&params, l) {
        return Ok(0.0);
    }
    let sols = allowed_modes(hopping, vertical, theta1, l)?;
    let s1 = theta1.sin();
    Ok(sols
        .iter()
        .map(|s| (s.k - kc).powi(2) / s1)
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const Q: f64 = 0.25 * PI;

    fn spec(theta2: f64, l: usize) -> QuenchSpec {
        QuenchSpec::new(1.0, 1.0, Q, theta2, l).unwrap()
    }

    #[test]
    fn identity_quench_has_zero_amplitude() {
        for k in [0.0, 0.4, 2.0, PI, 5.0] {
            assert_eq!(mode_amplitude(&spec(Q, 10), k).a, 0.0);
        }
    }

    #[test]
    fn amplitude_is_one_on_zero_solution() {
        let k = 7.0 * PI / 11.0;
        let rhs = zero_condition_rhs(1.0, 1.0, Q, k).unwrap();
        assert_abs_diff_eq!(rhs, -0.012229, epsilon = 1e-6);
        let m = mode_amplitude(&spec(rhs.asin(), 22), k);
        assert!((m.a - 1.0).abs() <= 1e-10);
        assert!(m.a <= 1.0 && m.a >= 0.0);
    }

    #[test]
    fn amplitude_vanishes_at_zero_mode_for_same_sign_phases() {
        let s = QuenchSpec::new(1.0, 1.0, 0.3, 0.7, 6).unwrap();
        let m = mode_amplitude(&s, 2.0 * PI / 3.0);
        assert!(m.a <= 1e-12);
    }

    #[test]
    fn echo_at_time_zero_is_one() {
        let e = loschmidt_echo(&spec(-0.4, 17), 0.0);
        assert_eq!(e.log_le, 0.0);
        assert_eq!(e.le, 1.0);
    }

    #[test]
    fn single_site_identity_quench_never_decays() {
        let s = QuenchSpec::new(1.0, 1.0, 0.2, 0.2, 1).unwrap();
        for t in [0.0, 1.0, 13.7] {
            assert_eq!(loschmidt_echo(&s, t).le, 1.0);
        }
    }

    #[test]
    fn echo_vanishes_at_first_critical_time() {
        let sols = allowed_modes(1.0, 1.0, Q, 22).unwrap();
        let sol = sols.iter().find(|s| s.j == 7).unwrap();
        assert_abs_diff_eq!(sol.theta2, -0.012229, epsilon = 1e-6);
        assert_abs_diff_eq!(sol.gap, 0.34127, epsilon = 1e-4);
        assert_abs_diff_eq!(sol.t_first, 9.206, epsilon = 1e-3);
        let e = loschmidt_echo(&spec(sol.theta2, 22), sol.t_first);
        assert!(e.le <= 1e-12, "le = {}", e.le);
    }

    #[test]
    fn rate_function_flags_nearest_sample() {
        let sol = allowed_modes(1.0, 1.0, Q, 22).unwrap()[2];
        assert_eq!(sol.j, 7);
        let times: Vec<f64> = (0..=400).map(|i| 9.0 + i as f64 * 1e-3).collect();
        let trace = rate_function(&spec(sol.theta2, 22), &times).unwrap();
        let flagged: Vec<usize> = (0..times.len()).filter(|&i| trace.divergent[i]).collect();
        let nearest = times
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - sol.t_first)
                    .abs()
                    .total_cmp(&(b.1 - sol.t_first).abs())
            })
            .unwrap()
            .0;
        assert_eq!(flagged, vec![nearest]);
        assert_abs_diff_eq!(times[nearest], 9.206, epsilon = 1e-3);
    }

    #[test]
    fn rate_function_basics() {
        let trace = rate_function(&spec(Q, 12), &[0.0, 1.0, 5.0]).unwrap();
        assert!(trace.rate.iter().all(|&r| r == 0.0));
        assert!(trace.divergent.iter().all(|d| !d));
        let trace = rate_function(&spec(-0.3, 12), &[0.0, 1.0]).unwrap();
        assert_eq!(trace.rate[0], 0.0);
        assert!(trace.log_le.iter().all(|&x| x <= 0.0));
        assert!(rate_function(&spec(-0.3, 12), &[]).is_err());
        assert!(rate_function(&spec(-0.3, 12), &[1.0, 0.5]).is_err());
        assert!(rate_function(&spec(-0.3, 12), &[-1.0]).is_err());
    }

    #[test]
    fn rhs_examples() {
        assert_abs_diff_eq!(
            zero_condition_rhs(1.0, 1.0, Q, 2.0 * PI / 3.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert!(zero_condition_rhs(1.0, 1.0, Q, PI / 11.0).unwrap().abs() > 1.0);
        assert!(matches!(
            zero_condition_rhs(1.0, 1.0, Q, 0.0),
            Err(Error::ExcludedMode(_))
        ));
        assert!(zero_condition_rhs(1.0, 1.0, Q, PI).is_err());
    }

    #[test]
    fn allowed_mode_examples() {
        let js: Vec<usize> = allowed_modes(1.0, 1.0, Q, 22)
            .unwrap()
            .iter()
            .map(|s| s.j)
            .collect();
        assert_eq!(js, vec![5, 6, 7, 8, 9, 13, 14, 15, 16, 17]);

        let sols = allowed_modes(1.0, 1.0, Q, 21).unwrap();
        let zm: Vec<_> = sols.iter().filter(|s| s.zero_mode).collect();
        assert_eq!(zm.len(), 2);
        assert_eq!(zm[0].j, 7);
        assert_eq!(zm[0].theta2, 0.0);
        assert_eq!(zm[0].gap, 0.0);

        assert!(allowed_modes(1.0, 1.0, 0.3, 2).unwrap().is_empty());
        assert!(allowed_modes(1.0, 1.0, -0.3, 20).is_err());
        assert!(allowed_modes(1.0, 1.0, 0.0, 20).is_err());
    }

    #[test]
    fn mirror_pairs_agree() {
        let sols = allowed_modes(1.0, 1.0, 0.37, 40).unwrap();
        for s in &sols {
            let m = sols.iter().find(|o| o.j == 40 - s.j).unwrap();
            assert_abs_diff_eq!(s.theta2, m.theta2, epsilon = 1e-12);
            assert_abs_diff_eq!(s.gap, m.gap, epsilon = 1e-12);
        }
    }

    #[test]
    fn critical_time_examples() {
        let mut sol = allowed_modes(1.0, 1.0, Q, 22).unwrap()[0];
        sol.gap = 2.0 * PI;
        let ts = critical_times(&sol, 2).unwrap();
        assert_abs_diff_eq!(ts[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ts[1], 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ts[2], 2.5, epsilon = 1e-15);
        sol.gap = PI;
        assert_eq!(critical_times(&sol, 0).unwrap(), vec![1.0]);
        sol.gap = 0.0;
        assert_eq!(critical_times(&sol, 3), Err(Error::NoFiniteCriticalTime));
    }

    #[test]
    fn delta_c_examples() {
        assert_eq!(delta_c(1.0, 1.0, Q, 51).unwrap(), 0.0);
        assert_eq!(delta_c(1.0, 1.0, Q, 2).unwrap(), f64::INFINITY);
        let d = delta_c(1.0, 1.0, Q, 49).unwrap();
        let theory = 4.0 * PI * PI / (9.0 * Q.sin() * 49.0 * 49.0);
        assert!(d > 0.0);
        assert!((d / theory - 1.0).abs() < 0.05, "{d} vs {theory}");
    }

    #[test]
    fn delta_c_asymptote_examples() {
        let a = delta_c_asymptote(1.0, 1.0, Q, 100).unwrap();
        assert_abs_diff_eq!(a, 4.0 * PI * PI / (9.0 * Q.sin() * 1e4), epsilon = 1e-12);
        assert_abs_diff_eq!(a, 6.203e-4, epsilon = 1e-6);
        let a = delta_c_asymptote(1.0, 1.0, 0.5 * PI, 100).unwrap();
        assert_abs_diff_eq!(a, 4.386e-4, epsilon = 1e-6);
        assert_eq!(delta_c_asymptote(1.0, 1.0, Q, 99).unwrap(), 0.0);
    }
}
