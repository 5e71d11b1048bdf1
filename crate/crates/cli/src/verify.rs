//! Oracle-equivalence checks: every closed form against brute-force 2×2
//! linear algebra on seeded random inputs.

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::row;
use creutz::model::{band_energies, block_entries, bogoliubov_angle, BogoliubovAngle, ModelParams};
use creutz::noise::{mixed_le, sample_noise};
use creutz::oracle::{
    evolved_norm, numeric_eigensystem, numeric_energy_variance, numeric_mixed_le, numeric_mode_le,
    TwoByTwoBlock,
};
use creutz::par;
use creutz::qsl::energy_variance;
use creutz::quench::{allowed_modes, critical_times, mode_amplitude, QuenchSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Rotate by `γ + π`, which swaps the two quasiparticles. Exists only to
    /// show that the diagonalization check can fail.
    pub inject_wrong_branch: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["check", "samples", "max_deviation", "tolerance", "pass"]);
        for c in &self.checks {
            t.push(row![
                c.name,
                c.samples,
                c.max_deviation,
                c.tolerance,
                c.passed()
            ]);
        }
        t
    }

    pub fn into_result(self) -> Result<()> {
        let failed: Vec<_> = self
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::Verification(failed.join(", ")))
        }
    }
}

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn hopping(&mut self) -> (f64, f64) {
        (self.0.gen_range(0.2..2.0), self.0.gen_range(0.05..3.0))
    }

    fn phase(&mut self) -> f64 {
        self.0.gen_range(-PI..PI)
    }

    fn k(&mut self) -> f64 {
        self.0.gen_range(0.0..2.0 * PI)
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.fold((0, 0.0), |(n, m), v| {
        (n + 1, if v > m || v.is_nan() { v } else { m })
    })
}

fn check(name: &'static str, tolerance: f64, values: impl Iterator<Item = f64>) -> Check {
    let (samples, max_deviation) = max_of(values);
    Check {
        name,
        samples,
        max_deviation,
        tolerance,
    }
}

pub fn run(cfg: &RunConfig, opts: &Options) -> Result<Report> {
    let mut rng = Sampler(ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0)));
    let mut checks = Vec::new();

    let diag: Vec<f64> = (0..2000)
        .map(|_| {
            let (k_hop, m) = rng.hopping();
            let p = ModelParams::new(k_hop, m, rng.phase()).expect("sampled in range");
            let k = rng.k();
            let mut angle = bogoliubov_angle(&p, k);
            if opts.inject_wrong_branch {
                angle = BogoliubovAngle(angle.gamma() + PI);
            }
            let d = angle.rotate(&block_entries(&p, k).matrix());
            let b = band_energies(&p, k);
            let dev = d[0][1]
                .abs()
                .max((d[0][0] - b.eps_alpha).abs())
                .max((d[1][1] - b.eps_beta).abs());
            dev / (2.0 * k_hop + m)
        })
        .collect();
    checks.push(check("diagonalization", 1e-12, diag.into_iter()));

    let eig: Vec<f64> = (0..10_000)
        .map(|_| {
            let (k_hop, m) = rng.hopping();
            let (theta, k) = (rng.phase(), rng.k());
            let b = band_energies(
                &ModelParams::new(k_hop, m, theta).expect("sampled in range"),
                k,
            );
            let e = numeric_eigensystem(&TwoByTwoBlock::creutz(k_hop, m, theta, k));
            (e.values[0] - b.eps_alpha)
                .abs()
                .max((e.values[1] - b.eps_beta).abs())
        })
        .collect();
    checks.push(check("eigenvalues", 1e-10, eig.into_iter()));

    let mut echo = Vec::new();
    let mut norm = Vec::new();
    for _ in 0..1000 {
        let (k_hop, m) = rng.hopping();
        let (t1, t2, k) = (rng.phase(), rng.phase(), rng.k());
        let t = rng.0.gen_range(0.0..50.0);
        let spec = QuenchSpec::new(k_hop, m, t1, t2, 1)?;
        let closed = mode_amplitude(&spec, k).echo_factor(t);
        echo.push((closed - numeric_mode_le(k_hop, m, t1, t2, k, t)).abs());
        norm.push((evolved_norm(k_hop, m, t1, t2, k, t) - 1.0).abs());
    }
    checks.push(check("mode_echo", 1e-9, echo.into_iter()));
    checks.push(check("unitarity", 1e-13, norm.into_iter()));

    let mut zeros = Vec::new();
    for _ in 0..50 {
        let theta1 = rng.0.gen_range(0.05..0.5 * PI);
        let l = rng.0.gen_range(8..120);
        for sol in allowed_modes(1.0, 1.0, theta1, l)?
            .iter()
            .filter(|s| !s.zero_mode)
        {
            for t in critical_times(sol, 2)? {
                zeros.push(numeric_mode_le(1.0, 1.0, theta1, sol.theta2, sol.k, t));
            }
        }
    }
    checks.push(check("critical_zeros", 1e-12, zeros.into_iter()));

    let mut variance = Vec::new();
    for _ in 0..200 {
        let (k_hop, m) = rng.hopping();
        let (t1, t2) = (rng.phase(), rng.phase());
        let l = rng.0.gen_range(1..64);
        let closed = energy_variance(&QuenchSpec::new(k_hop, m, t1, t2, l)?).powi(2);
        let numeric = numeric_energy_variance(k_hop, m, t1, t2, l).powi(2);
        variance.push((closed - numeric).abs() / ((2.0 * k_hop + m).powi(2) * l as f64));
    }
    let q = 0.25 * PI;
    let three = (energy_variance(&QuenchSpec::new(1.0, 1.0, q, -q, 3)?)
        - numeric_energy_variance(1.0, 1.0, q, -q, 3))
    .abs();
    checks.push(check("energy_variance", 1e-12, variance.into_iter()));
    checks.push(check("energy_variance_l3", 1e-10, std::iter::once(three)));

    let mut mixed = Vec::new();
    for _ in 0..40 {
        let (t1, t2) = (rng.phase(), rng.phase());
        let l = rng.0.gen_range(1..=4);
        let t = rng.0.gen_range(0.0..10.0);
        let ens = sample_noise(t2, 0.3, 5, rng.0.gen())?;
        let phases: Vec<f64> = ens.phases(t2).collect();
        let spec = QuenchSpec::new(1.0, 1.0, t1, t2, l)?;
        mixed
            .push((mixed_le(&spec, &ens, t) - numeric_mixed_le(1.0, 1.0, t1, &phases, l, t)).abs());
    }
    checks.push(check("mixed_echo", 1e-10, mixed.into_iter()));

    let spec = QuenchSpec::new(1.0, 1.0, q, -0.3, 200)?;
    let ens = sample_noise(-0.3, 0.1, 500, cfg.seed.unwrap_or(0))?;
    let serial = par::single_threaded(|| mixed_le(&spec, &ens, 3.0));
    let pooled = par::with_threads(4, || mixed_le(&spec, &ens, 3.0));
    let again = mixed_le(
        &spec,
        &sample_noise(-0.3, 0.1, 500, cfg.seed.unwrap_or(0))?,
        3.0,
    );
    checks.push(check(
        "noise_determinism",
        1e-12,
        [(serial - pooled).abs(), (serial - again).abs()].into_iter(),
    ));

    Ok(Report { checks })
}
