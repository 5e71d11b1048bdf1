//! Static Creutz-ladder model: momentum grid, the 2×2 Bloch blocks, their
//! Bogoliubov rotation and band structure, and the finite-size conditions
//! under which the gap-closing modes land on the grid.
//!
//! All energies are in units of the hopping amplitudes; phases are radians.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Hopping amplitudes and Peierls phase of the static Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Horizontal and diagonal hopping `K`.
    pub hopping: f64,
    /// Vertical (rung) hopping `M`.
    pub vertical: f64,
    /// Peierls phase `θ`.
    pub theta: f64,
}

impl ModelParams {
    pub fn new(hopping: f64, vertical: f64, theta: f64) -> Result<Self> {
        if !(hopping.is_finite() && hopping > 0.0) {
            return Err(Error::InvalidParams(format!(
                "K must be positive, got {hopping}"
            )));
        }
        if !(vertical.is_finite() && vertical > 0.0) {
            return Err(Error::InvalidParams(format!(
                "M must be positive, got {vertical}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "theta must be finite, got {theta}"
            )));
        }
        Ok(Self {
            hopping,
            vertical,
            theta,
        })
    }

    /// Same hoppings, different phase.
    pub fn with_theta(self, theta: f64) -> Self {
        Self { theta, ..self }
    }

    /// Errors unless `M < 2K`, the regime with gap-closing modes.
    pub fn require_gapless_regime(&self) -> Result<()> {
        if self.vertical < 2.0 * self.hopping {
            Ok(())
        } else {
            Err(Error::NoGaplessMode {
                m: self.vertical,
                two_k: 2.0 * self.hopping,
            })
        }
    }
}

/// The `L` allowed wave numbers `k_j = 2πj/L` of a periodic chain.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    points: Vec<f64>,
}

impl MomentumGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn k(&self, j: usize) -> f64 {
        self.points[j]
    }
}

/// Wave number of grid index `j` on a chain of `l` sites.
#[inline]
pub fn grid_k(j: usize, l: usize) -> f64 {
    2.0 * PI * j as f64 / l as f64
}

pub fn momentum_grid(l: usize) -> Result<MomentumGrid> {
    if l < 2 {
        return Err(Error::InvalidSize(l));
    }
    Ok(MomentumGrid {
        points: (0..l).map(|j| grid_k(j, l)).collect(),
    })
}

/// Entries of the Bloch block `H(k) = −[[ε_q, ε_qp], [ε_qp, ε_p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockEntries {
    pub eps_q: f64,
    pub eps_p: f64,
    pub eps_qp: f64,
}

impl BlockEntries {
    /// The block as a dense real symmetric matrix, basis order (q, p).
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[-self.eps_q, -self.eps_qp], [-self.eps_qp, -self.eps_p]]
    }
}

pub fn block_entries(params: &ModelParams, k: f64) -> BlockEntries {
    let two_k = 2.0 * params.hopping;
    BlockEntries {
        eps_q: two_k * (k - params.theta).cos(),
        eps_p: two_k * (k + params.theta).cos(),
        eps_qp: two_k * k.cos() + params.vertical,
    }
}

/// Bogoliubov rotation angle `γ_k`.
///
/// The lower quasiparticle is `cos(γ/2)|q⟩ + sin(γ/2)|p⟩` and the upper one
/// `−sin(γ/2)|q⟩ + cos(γ/2)|p⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovAngle(pub f64);

impl BogoliubovAngle {
    pub fn gamma(self) -> f64 {
        self.0
    }

    /// `Rᵀ H R` for the rotation `R` whose columns are the (α, β) vectors.
    pub fn rotate(self, h: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
        let (s, c) = (0.5 * self.0).sin_cos();
        let alpha = [c, s];
        let beta = [-s, c];
        let form = |u: &[f64; 2], v: &[f64; 2]| {
            u[0] * (h[0][0] * v[0] + h[0][1] * v[1]) + u[1] * (h[1][0] * v[0] + h[1][1] * v[1])
        };
        [
            [form(&alpha, &alpha), form(&alpha, &beta)],
            [form(&beta, &alpha), form(&beta, &beta)],
        ]
    }
}

/// `γ` from the two-argument arctangent of `(2ε_qp, ε_q − ε_p)`, with
/// `ε_q − ε_p` taken in its exact form `4K sin k sin θ`.
///
/// The fully degenerate point (both arguments zero) maps to `γ = 0`.
pub(crate) fn angle_from_parts(eps_qp: f64, q_minus_p: f64) -> f64 {
    if eps_qp == 0.0 && q_minus_p == 0.0 {
        0.0
    } else {
        (2.0 * eps_qp).atan2(q_minus_p)
    }
}

pub fn bogoliubov_angle(params: &ModelParams, k: f64) -> BogoliubovAngle {
    let eps_qp = 2.0 * params.hopping * k.cos() + params.vertical;
    let q_minus_p = 4.0 * params.hopping * k.sin() * params.theta.sin();
    BogoliubovAngle(angle_from_parts(eps_qp, q_minus_p))
}

/// Quasiparticle band energies at one wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEnergies {
    pub eps_alpha: f64,
    pub eps_beta: f64,
    pub eps_alpha_tilde: f64,
    pub eps_beta_tilde: f64,
}

/// Half-gap `sqrt(ε_qp² + (2K sin k sin θ)²)`.
#[inline]
fn half_gap(params: &ModelParams, k: f64) -> f64 {
    let eps_qp = 2.0 * params.hopping * k.cos() + params.vertical;
    let chiral = 2.0 * params.hopping * k.sin() * params.theta.sin();
    eps_qp.hypot(chiral)
}

pub fn band_energies(params: &ModelParams, k: f64) -> BandEnergies {
    let center = -2.0 * params.hopping * k.cos() * params.theta.cos();
    let r = half_gap(params, k);
    let eps_alpha = center - r;
    let eps_beta = center + r;
    BandEnergies {
        eps_alpha,
        eps_beta,
        eps_alpha_tilde: eps_alpha - params.vertical,
        eps_beta_tilde: eps_beta - params.vertical,
    }
}

/// Band gap `Δε̃_k = ε̃_β − ε̃_α`.
pub fn band_gap(params: &ModelParams, k: f64) -> f64 {
    2.0 * half_gap(params, k)
}

/// The gap-closing wave numbers `(k_c⁻, k_c⁺) = π ∓ arccos(M/2K)`.
pub fn gap_closing_modes(params: &ModelParams) -> Result<(f64, f64)> {
    params.require_gapless_regime()?;
    let offset = (params.vertical / (2.0 * params.hopping)).acos();
    Ok((PI - offset, PI + offset))
}

/// Best rational approximation `p/q` of `x ≥ 0` with `q ≤ max_den`, from the
/// continued-fraction convergents. Returns `None` unless some convergent is
/// within `tol` of `x`.
pub fn rational_approx(x: f64, max_den: u64, tol: f64) -> Option<(u64, u64)> {
    if !(x.is_finite() && x >= 0.0) {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        if a > u32::MAX as f64 {
            break;
        }
        let a = a as u64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        if (p2 as f64 / q2 as f64 - x).abs() <= tol {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rem - a as f64;
        if frac <= 0.0 {
            break;
        }
        rem = 1.0 / frac;
    }
    None
}

/// Denominator bound for recognizing `arccos(M/2K)/π` as rational.
pub const RATIONAL_MAX_DEN: u64 = 64;
/// Tolerance for the same reconstruction.
pub const RATIONAL_TOL: f64 = 1e-9;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(s, r)` with `arccos(M/2K) = (s/r)π`, reduced.
pub fn zero_mode_fraction(params: &ModelParams) -> Result<(u64, u64)> {
    params.require_gapless_regime()?;
    let x = (params.vertical / (2.0 * params.hopping)).acos() / PI;
    rational_approx(x, RATIONAL_MAX_DEN, RATIONAL_TOL)
        .ok_or(Error::Incommensurate(x, RATIONAL_MAX_DEN))
}

/// Smallest chain length placing both `k_c^±` on the grid when
/// `arccos(M/2K) = (s/r)π`.
pub fn commensurate_period_for(s: u64, r: u64) -> Result<u64> {
    if r == 0 || s >= r {
        return Err(Error::InvalidInput(format!(
            "need 0 <= s < r for arccos(M/2K) = (s/r)pi, got s = {s}, r = {r}"
        )));
    }
    let reduced_den = |num: u64| {
        let den = 2 * r;
        den / gcd(num, den)
    };
    let a = reduced_den(r - s);
    let b = reduced_den(r + s);
    Ok(a / gcd(a, b) * b)
}

pub fn commensurate_period(params: &ModelParams) -> Result<u64> {
    let (s, r) = zero_mode_fraction(params)?;
    commensurate_period_for(s, r)
}

/// All `L ≤ l_max` (and `L ≥ 2`) on which both zero-energy modes are grid
/// points, for known `(s, r)`.
pub fn commensurate_sizes_for(s: u64, r: u64, l_max: usize) -> Result<Vec<usize>> {
    let period = commensurate_period_for(s, r)? as usize;
    Ok((1..=l_max / period)
        .map(|m| m * period)
        .filter(|&l| l >= 2)
        .collect())
}

pub fn commensurate_sizes(params: &ModelParams, l_max: usize) -> Result<Vec<usize>> {
    let (s, r) = zero_mode_fraction(params)?;
    commensurate_sizes_for(s, r, l_max)
}

/// Whether the zero-energy modes sit exactly on the grid of size `l`.
pub fn is_commensurate(params: &ModelParams, l: usize) -> bool {
    match commensurate_period(params) {
        Ok(p) => l as u64 % p == 0,
        Err(_) => false,
    }
}
