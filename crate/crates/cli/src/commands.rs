//! One function per subcommand, each turning a resolved configuration into a
//! [`Table`].

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::row;
use creutz::model::{self, band_energies, band_gap, grid_k, ModelParams};
use creutz::noise::{self, NoiseConfig};
use creutz::qsl::{self, Normalization, Which};
use creutz::quench::{self, QuenchSpec};
use creutz::{par, Error};
use std::f64::consts::PI;

/// Default `θ₁` values for the size-sweep figures.
pub const DEFAULT_THETAS: [f64; 3] = [0.05 * PI, 0.25 * PI, 0.45 * PI];

/// Default size range of the sweeps.
pub const SWEEP_L_MIN: usize = 50;
pub const SWEEP_L_MAX: usize = 1001;

/// Default noise seed for figure reproduction.
pub const DEFAULT_SEED: u64 = 2024;

/// `θ₁` grid for the static-transition sweep: midpoints
/// `(i + ½)·0.05π` for `i = −9..=8`, i.e. ±0.025π … ±0.425π. The grid
/// straddles `θ₁ = 0`, where no exact-zero quench exists.
pub fn theta_sweep_grid() -> Vec<f64> {
    (-9..=8).map(|i| (i as f64 + 0.5) * 0.05 * PI).collect()
}

/// Size step that keeps a sweep off the zero-mode sizes: the commensurate
/// period when `arccos(M/2K)` is a rational multiple of π, else 1.
pub fn natural_step(hopping: f64, vertical: f64) -> usize {
    ModelParams::new(hopping, vertical, 0.0)
        .and_then(|p| model::commensurate_period(&p))
        .map(|p| p as usize)
        .unwrap_or(1)
}

fn sweep_cfg(cfg: &RunConfig) -> RunConfig {
    let defaults = RunConfig {
        l_min: Some(SWEEP_L_MIN),
        l_max: Some(SWEEP_L_MAX),
        ..Default::default()
    };
    if cfg.l.is_some() && cfg.l_min.is_none() && cfg.l_max.is_none() {
        cfg.clone()
    } else {
        defaults.overlay(cfg)
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<Table> {
    let l = cfg.require_l()?;
    let params = ModelParams::new(cfg.hopping(), cfg.vertical(), cfg.require_theta1()?)?;
    let mut t = Table::new(&["j", "k", "eps_alpha", "eps_beta", "gap"]);
    for j in 0..l {
        let k = grid_k(j, l);
        let b = band_energies(&params, k);
        t.push(row![j, k, b.eps_alpha, b.eps_beta, band_gap(&params, k)]);
    }
    Ok(t)
}

pub fn zeros(cfg: &RunConfig) -> Result<Table> {
    let l = cfg.require_l()?;
    let sols =
        quench::signed_allowed_modes(cfg.hopping(), cfg.vertical(), cfg.require_theta1()?, l)?;
    if sols.is_empty() {
        return Err(Error::NoSolution(l).into());
    }
    let mut t = Table::new(&["j", "k", "theta2", "gap", "t_first", "zero_mode"]);
    for s in sols {
        t.push(row![s.j, s.k, s.theta2, s.gap, s.t_first, s.zero_mode]);
    }
    Ok(t)
}

pub fn le(cfg: &RunConfig) -> Result<Table> {
    let spec = QuenchSpec::new(
        cfg.hopping(),
        cfg.vertical(),
        cfg.require_theta1()?,
        cfg.require_theta2()?,
        cfg.require_l()?,
    )?;
    let trace = quench::rate_function(&spec, &cfg.times()?)?;
    let mut t = Table::new(&["t", "le", "log_le", "rate", "divergent"]);
    for i in 0..trace.len() {
        let log = trace.log_le[i];
        t.push(row![
            trace.times[i],
            log.exp(),
            log,
            trace.rate[i],
            trace.divergent[i]
        ]);
    }
    Ok(t)
}

pub fn delta_c(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1) = (cfg.hopping(), cfg.vertical(), cfg.require_theta1()?);
    let sizes = cfg.sizes(natural_step(k, m))?;
    let rows = par::map(&sizes, |&l| -> creutz::Result<_> {
        Ok((
            l,
            quench::delta_c(k, m, theta1, l)?,
            quench::delta_c_asymptote(k, m, theta1, l)?,
        ))
    });
    let mut t = Table::new(&["L", "inv_L2", "delta_c", "delta_c_asymptote"]);
    for r in rows {
        let (l, dc, asym) = r?;
        t.push(row![l, 1.0 / (l * l) as f64, dc, asym]);
    }
    Ok(t)
}

pub fn tau_f(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1) = (cfg.hopping(), cfg.vertical(), cfg.require_theta1()?);
    let sizes = cfg.sizes(natural_step(k, m))?;
    let rows = par::map(&sizes, |&l| -> creutz::Result<_> {
        let ext = qsl::tau_f_extrema(k, m, theta1, l)?;
        let bound = |theta2: f64| -> creutz::Result<f64> {
            let spec = QuenchSpec::new(k, m, theta1, theta2, l)?;
            qsl::mt_bound(qsl::energy_variance(&spec))
        };
        Ok(row![
            l,
            ext.tau_fmax,
            ext.tau_fmin,
            bound(ext.sol_max.theta2)?,
            bound(ext.sol_min.theta2)?
        ])
    });
    let mut t = Table::new(&[
        "L",
        "tau_fmax",
        "tau_fmin",
        "tau_qsl_max_case",
        "tau_qsl_min_case",
    ]);
    for r in rows {
        t.push(r?);
    }
    Ok(t)
}

/// With `--theta2` and `--t` the bound `arccos(√L(t))/ΔE` of a chosen quench;
/// otherwise the Mandelstam–Tamm bound of the extremal exact-zero quench.
pub fn qsl(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1) = (cfg.hopping(), cfg.vertical(), cfg.require_theta1()?);
    let sizes = cfg.sizes(natural_step(k, m))?;
    if let Some(theta2) = cfg.theta2 {
        let time = cfg.t.ok_or_else(|| CliError::usage("--theta2 needs --t"))?;
        return qsl_at_time(k, m, theta1, theta2, time, &sizes);
    }
    let points = qsl::qsl_points(k, m, theta1, cfg.which(), &sizes)?;
    let mut t = Table::new(&["L", "theta2", "tau_f", "delta_e", "tau_qsl"]);
    for p in points {
        t.push(row![p.l, p.sol.theta2, p.tau_f, p.delta_e, p.tau_qsl]);
    }
    Ok(t)
}

pub(crate) fn qsl_at_time(
    k: f64,
    m: f64,
    theta1: f64,
    theta2: f64,
    time: f64,
    sizes: &[usize],
) -> Result<Table> {
    let rows = par::map(sizes, |&l| -> creutz::Result<_> {
        let spec = QuenchSpec::new(k, m, theta1, theta2, l)?;
        let le = quench::loschmidt_echo(&spec, time).le;
        let de = qsl::energy_variance(&spec);
        Ok(row![l, le, de, qsl::qsl_time(le, de)?])
    });
    let mut t = Table::new(&["L", "le", "delta_e", "tau_qsl"]);
    for r in rows {
        t.push(r?);
    }
    Ok(t)
}

pub fn qsl_sweep(cfg: &RunConfig) -> Result<Table> {
    let cfg = sweep_cfg(cfg);
    let (k, m) = (cfg.hopping(), cfg.vertical());
    let (lo, hi) = (
        cfg.l_min.unwrap_or(SWEEP_L_MIN),
        cfg.l_max.unwrap_or(SWEEP_L_MAX),
    );
    let step = cfg.step.unwrap_or_else(|| natural_step(k, m));
    let norm = cfg.normalization.unwrap_or_default();
    let grid = cfg.theta1.map_or_else(theta_sweep_grid, |t| vec![t]);
    let stats = sweep_stats(k, m, &grid, cfg.which(), lo, hi, step, norm)?;
    let mut t = Table::new(&["theta1", "mean", "variance", "sample_count"]);
    for s in stats {
        t.push(row![s.theta1, s.mean, s.variance, s.sample_count]);
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn sweep_stats(
    k: f64,
    m: f64,
    grid: &[f64],
    which: Which,
    lo: usize,
    hi: usize,
    step: usize,
    norm: Normalization,
) -> Result<Vec<qsl::SweepStats>> {
    grid.iter()
        .map(|&theta1| {
            qsl::qsl_sweep_stats(k, m, theta1, which, lo, hi, step, norm).map_err(Into::into)
        })
        .collect()
}

pub fn noise(cfg: &RunConfig) -> Result<Table> {
    let cfg = sweep_cfg(cfg);
    let (k, m, theta1) = (cfg.hopping(), cfg.vertical(), cfg.require_theta1()?);
    let sizes = cfg.sizes(natural_step(k, m))?;
    let ncfg = NoiseConfig {
        fraction: cfg.noise_fraction.unwrap_or(noise::DEFAULT_FRACTION),
        count: cfg.noise_count.unwrap_or(noise::DEFAULT_COUNT),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
        t_eval: cfg.t_eval,
    };
    let points = noise::noisy_qsl_vs_size(k, m, theta1, cfg.which(), &sizes, &ncfg)?;
    let mut t = Table::new(&[
        "L",
        "tau_qsl_noiseless",
        "tau_qsl_noisy",
        "theta_used",
        "mean_dE",
        "theta2",
        "t_eval",
    ]);
    for p in points {
        t.push(row![
            p.l,
            p.tau_qsl_noiseless,
            p.tau_qsl_noisy,
            p.theta_used,
            p.mean_de,
            p.theta2,
            p.t_eval
        ]);
    }
    Ok(t)
}
