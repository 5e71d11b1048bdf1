//! Data behind each figure panel, with the published parameters as defaults.
//!
//! | id | rows |
//! |----|------|
//! | `fig2a`–`fig2c` | `L_i, L, inv_L2, delta_c, delta_c_theory` for the two size families |
//! | `fig3` | `j, theta2, t, rate, divergent` per distinct allowed `θ₂` |
//! | `fig4a` | `theta1, L, tau_fmax, asymptote` |
//! | `fig4b` | `theta1, L, tau_fmin, tau_c` |
//! | `fig5a`, `fig5b` | `theta1, L, theta2, tau_f, delta_e, tau_qsl` (max / min case) |
//! | `fig6a` | `L, le, log_le` at `t = 1` |
//! | `fig6b` | `L, le, delta_e, tau_qsl` at `t = 1` |
//! | `fig7a`–`fig7d` | `theta1, mean` / `theta1, variance` (max case a–b, min case c–d) |
//! | `fig8a`, `fig8b` | noiseless and noisy bounds per `L` (max / min case) |

use crate::commands::{self, natural_step, DEFAULT_SEED, SWEEP_L_MAX, SWEEP_L_MIN};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::row;
use creutz::qsl::{self, Which};
use creutz::quench::{self, QuenchSpec};
use creutz::{noise, par};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
    Fig6a,
    Fig6b,
    Fig7a,
    Fig7b,
    Fig7c,
    Fig7d,
    Fig8a,
    Fig8b,
}

impl FigureId {
    pub const ALL: [FigureId; 16] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig2c,
        FigureId::Fig3,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5a,
        FigureId::Fig5b,
        FigureId::Fig6a,
        FigureId::Fig6b,
        FigureId::Fig7a,
        FigureId::Fig7b,
        FigureId::Fig7c,
        FigureId::Fig7d,
        FigureId::Fig8a,
        FigureId::Fig8b,
    ];

    pub fn name(self) -> &'static str {
        use FigureId::*;
        match self {
            Fig2a => "fig2a",
            Fig2b => "fig2b",
            Fig2c => "fig2c",
            Fig3 => "fig3",
            Fig4a => "fig4a",
            Fig4b => "fig4b",
            Fig5a => "fig5a",
            Fig5b => "fig5b",
            Fig6a => "fig6a",
            Fig6b => "fig6b",
            Fig7a => "fig7a",
            Fig7b => "fig7b",
            Fig7c => "fig7c",
            Fig7d => "fig7d",
            Fig8a => "fig8a",
            Fig8b => "fig8b",
        }
    }

    /// Published parameters for this panel.
    pub fn defaults(self) -> RunConfig {
        use FigureId::*;
        let base = RunConfig {
            hopping: Some(1.0),
            vertical: Some(1.0),
            ..Default::default()
        };
        let sweep = RunConfig {
            l_min: Some(SWEEP_L_MIN),
            l_max: Some(SWEEP_L_MAX),
            ..base.clone()
        };
        match self {
            Fig2a | Fig2b | Fig2c => {
                let (k, m) = match self {
                    Fig2a => (1.0, 1.0),
                    Fig2b => (1.0, 3f64.sqrt()),
                    _ => (2f64.sqrt(), 3f64.sqrt() - 1.0),
                };
                RunConfig {
                    hopping: Some(k),
                    vertical: Some(m),
                    theta1: Some(0.25 * PI),
                    l_min: Some(49),
                    l_max: Some(1000),
                    ..Default::default()
                }
            }
            Fig3 => RunConfig {
                theta1: Some(0.25 * PI),
                l: Some(22),
                t_min: Some(0.0),
                t_max: Some(20.0),
                t_points: Some(2001),
                ..base
            },
            Fig4a | Fig4b => sweep,
            Fig5a | Fig7a | Fig7b => RunConfig {
                which: Some(Which::Max),
                ..sweep
            },
            Fig5b | Fig7c | Fig7d => RunConfig {
                which: Some(Which::Min),
                ..sweep
            },
            Fig6a | Fig6b => RunConfig {
                theta1: Some(0.05 * PI),
                theta2: Some(0.0),
                l_min: Some(51),
                l_max: Some(300),
                step: Some(3),
                t: Some(1.0),
                ..base
            },
            Fig8a | Fig8b => RunConfig {
                theta1: Some(0.25 * PI),
                which: Some(if self == Fig8a {
                    Which::Max
                } else {
                    Which::Min
                }),
                noise_fraction: Some(noise::DEFAULT_FRACTION),
                noise_count: Some(noise::DEFAULT_COUNT),
                seed: Some(DEFAULT_SEED),
                ..sweep
            },
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = FigureId::ALL.iter().map(|f| f.name()).collect();
                CliError::usage(format!(
                    "unknown figure {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Figure data with `user` settings layered over the panel defaults.
pub fn generate(id: FigureId, user: &RunConfig) -> Result<Table> {
    use FigureId::*;
    let cfg = id.defaults().overlay(user);
    match id {
        Fig2a | Fig2b | Fig2c => fig2(&cfg),
        Fig3 => fig3(&cfg),
        Fig4a => fig4(&cfg, true),
        Fig4b => fig4(&cfg, false),
        Fig5a | Fig5b => fig5(&cfg),
        Fig6a => fig6a(&cfg),
        Fig6b => {
            let (k, m) = (cfg.hopping(), cfg.vertical());
            let sizes = cfg.sizes(3)?;
            commands::qsl_at_time(
                k,
                m,
                cfg.require_theta1()?,
                cfg.require_theta2()?,
                cfg.t.ok_or_else(|| CliError::usage("missing --t"))?,
                &sizes,
            )
        }
        Fig7a | Fig7c => fig7(&cfg, true),
        Fig7b | Fig7d => fig7(&cfg, false),
        Fig8a | Fig8b => commands::noise(&cfg),
    }
}

/// `Δ_c` against `1/L²` for the families starting at `L_min` and `L_min + 1`.
fn fig2(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1) = (cfg.hopping(), cfg.vertical(), cfg.require_theta1()?);
    let first = cfg
        .l_min
        .ok_or_else(|| CliError::usage("missing --L-min"))?;
    let last = cfg
        .l_max
        .ok_or_else(|| CliError::usage("missing --L-max"))?;
    let step = cfg.step.unwrap_or_else(|| natural_step(k, m));
    let mut sizes = Vec::new();
    for start in [first, first + 1] {
        let family =
            qsl::sweep_sizes(start, last, step).map_err(|e| CliError::usage(e.to_string()))?;
        sizes.extend(family.into_iter().map(|l| (start, l)));
    }
    let rows = par::map(&sizes, |&(start, l)| -> creutz::Result<_> {
        Ok(row![
            start,
            l,
            1.0 / (l * l) as f64,
            quench::delta_c(k, m, theta1, l)?,
            quench::delta_c_asymptote(k, m, theta1, l)?
        ])
    });
    let mut t = Table::new(&["L_i", "L", "inv_L2", "delta_c", "delta_c_theory"]);
    for r in rows {
        t.push(r?);
    }
    Ok(t)
}

/// Rate function for each distinct allowed `θ₂`; mirrored modes with the same
/// phase appear once, under the smaller `j`.
fn fig3(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1, l) = (
        cfg.hopping(),
        cfg.vertical(),
        cfg.require_theta1()?,
        cfg.require_l()?,
    );
    let times = cfg.times()?;
    let mut sols = quench::signed_allowed_modes(k, m, theta1, l)?;
    if sols.is_empty() {
        return Err(creutz::Error::NoSolution(l).into());
    }
    sols.sort_by_key(|s| s.j);
    let mut distinct: Vec<quench::ZeroSolution> = Vec::new();
    for s in sols {
        let dup = distinct
            .iter()
            .any(|d| (d.theta2 - s.theta2).abs() <= 1e-12 * d.theta2.abs().max(1.0));
        if !dup {
            distinct.push(s);
        }
    }
    let traces = par::map(&distinct, |s| {
        QuenchSpec::new(k, m, theta1, s.theta2, l)
            .and_then(|spec| quench::rate_function(&spec, &times))
    });
    let mut t = Table::new(&["j", "theta2", "t", "rate", "divergent"]);
    for (s, trace) in distinct.iter().zip(traces) {
        let trace = trace?;
        for i in 0..trace.len() {
            t.push(row![
                s.j,
                s.theta2,
                trace.times[i],
                trace.rate[i],
                trace.divergent[i]
            ]);
        }
    }
    Ok(t)
}

fn sweep_sizes(cfg: &RunConfig) -> Result<Vec<usize>> {
    cfg.sizes(natural_step(cfg.hopping(), cfg.vertical()))
}

fn thetas(cfg: &RunConfig) -> Vec<f64> {
    cfg.theta1
        .map_or_else(|| commands::DEFAULT_THETAS.to_vec(), |t| vec![t])
}

fn fig4(cfg: &RunConfig, max: bool) -> Result<Table> {
    let (k, m) = (cfg.hopping(), cfg.vertical());
    let sizes = sweep_sizes(cfg)?;
    let mut t = if max {
        Table::new(&["theta1", "L", "tau_fmax", "asymptote"])
    } else {
        Table::new(&["theta1", "L", "tau_fmin", "tau_c"])
    };
    for theta1 in thetas(cfg) {
        let tau_c = if max {
            0.0
        } else {
            qsl::tau_c_asymptote(k, m, theta1)?
        };
        let rows = par::map(&sizes, |&l| -> creutz::Result<_> {
            let ext = qsl::tau_f_extrema(k, m, theta1, l)?;
            Ok(if max {
                row![theta1, l, ext.tau_fmax, qsl::tau_fmax_asymptote(k, m, l)?]
            } else {
                row![theta1, l, ext.tau_fmin, tau_c]
            })
        });
        for r in rows {
            t.push(r?);
        }
    }
    Ok(t)
}

fn fig5(cfg: &RunConfig) -> Result<Table> {
    let (k, m) = (cfg.hopping(), cfg.vertical());
    let sizes = sweep_sizes(cfg)?;
    let mut t = Table::new(&["theta1", "L", "theta2", "tau_f", "delta_e", "tau_qsl"]);
    for theta1 in thetas(cfg) {
        for p in qsl::qsl_points(k, m, theta1, cfg.which(), &sizes)? {
            t.push(row![
                theta1,
                p.l,
                p.sol.theta2,
                p.tau_f,
                p.delta_e,
                p.tau_qsl
            ]);
        }
    }
    Ok(t)
}

fn fig6a(cfg: &RunConfig) -> Result<Table> {
    let (k, m, theta1, theta2) = (
        cfg.hopping(),
        cfg.vertical(),
        cfg.require_theta1()?,
        cfg.require_theta2()?,
    );
    let time = cfg.t.ok_or_else(|| CliError::usage("missing --t"))?;
    let sizes = cfg.sizes(3)?;
    let rows = par::map(&sizes, |&l| -> creutz::Result<_> {
        let echo = quench::loschmidt_echo(&QuenchSpec::new(k, m, theta1, theta2, l)?, time);
        Ok(row![l, echo.le, echo.log_le])
    });
    let mut t = Table::new(&["L", "le", "log_le"]);
    for r in rows {
        t.push(r?);
    }
    Ok(t)
}

fn fig7(cfg: &RunConfig, mean: bool) -> Result<Table> {
    let (k, m) = (cfg.hopping(), cfg.vertical());
    let lo = cfg
        .l_min
        .ok_or_else(|| CliError::usage("missing --L-min"))?;
    let hi = cfg
        .l_max
        .ok_or_else(|| CliError::usage("missing --L-max"))?;
    let step = cfg.step.unwrap_or_else(|| natural_step(k, m));
    let grid = cfg
        .theta1
        .map_or_else(commands::theta_sweep_grid, |t| vec![t]);
    let norm = cfg.normalization.unwrap_or_default();
    let stats = commands::sweep_stats(k, m, &grid, cfg.which(), lo, hi, step, norm)?;
    let mut t = Table::new(&["theta1", if mean { "mean" } else { "variance" }]);
    for s in stats {
        t.push(row![s.theta1, if mean { s.mean } else { s.variance }]);
    }
    Ok(t)
}
