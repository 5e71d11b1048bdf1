//! Run configuration: a flat set of optional settings merged from figure
//! defaults, an optional `key = value` file and command-line flags.

use crate::error::{CliError, Result};
use creutz::qsl::{Normalization, Which};
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::usage(format!(
                "unknown format {other:?} (csv|json)"
            ))),
        }
    }
}

/// Parses a phase in radians. Besides plain numbers, multiples of π are
/// accepted as `0.25pi`, `0.25*pi`, `-pi`, `pi/4`, `-3pi/4` or with `π`.
pub fn parse_phase(s: &str) -> Result<f64> {
    let bad = || CliError::usage(format!("invalid phase {s:?}"));
    let t = s.trim().to_ascii_lowercase().replace('π', "pi");
    let Some(pos) = t.find("pi") else {
        return parse_real(&t).map_err(|_| bad());
    };
    let coef = t[..pos].trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[pos + 2..].trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        let d = rest.strip_prefix('/').ok_or_else(bad)?.trim();
        d.parse::<f64>().map_err(|_| bad())?
    };
    let v = coef * PI / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid number {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("non-finite number {s:?}")))
    }
}

fn parse_int<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid integer {s:?}")))
}

/// Every setting is optional; commands fill in what they need.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub hopping: Option<f64>,
    pub vertical: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub l: Option<usize>,
    pub l_min: Option<usize>,
    pub l_max: Option<usize>,
    pub step: Option<usize>,
    pub t: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_points: Option<usize>,
    pub t_eval: Option<f64>,
    pub which: Option<Which>,
    pub noise_fraction: Option<f64>,
    pub noise_count: Option<usize>,
    pub seed: Option<u64>,
    pub normalization: Option<Normalization>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Canonical keys in serialization order.
pub const KEYS: [&str; 20] = [
    "K",
    "M",
    "theta1",
    "theta2",
    "L",
    "L_min",
    "L_max",
    "step",
    "t",
    "t_min",
    "t_max",
    "t_points",
    "t_eval",
    "which",
    "noise_fraction",
    "noise_count",
    "seed",
    "normalization",
    "out",
    "format",
];

fn canonical_key(key: &str) -> Result<&'static str> {
    let k = key.trim().trim_start_matches("--").replace('-', "_");
    let k = match k.as_str() {
        "theta" => "theta1",
        "output" | "output_path" => "out",
        other => other,
    };
    // Keys match case-insensitively, so `k`, `l_min` and `L-MAX` all work.
    KEYS.iter()
        .find(|c| c.eq_ignore_ascii_case(k))
        .copied()
        .ok_or_else(|| CliError::usage(format!("unknown config key {key:?}")))
}

impl RunConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match canonical_key(key)? {
            "K" => self.hopping = Some(parse_real(v)?),
            "M" => self.vertical = Some(parse_real(v)?),
            "theta1" => self.theta1 = Some(parse_phase(v)?),
            "theta2" => self.theta2 = Some(parse_phase(v)?),
            "L" => self.l = Some(parse_int(v)?),
            "L_min" => self.l_min = Some(parse_int(v)?),
            "L_max" => self.l_max = Some(parse_int(v)?),
            "step" => self.step = Some(parse_int(v)?),
            "t" => self.t = Some(parse_real(v)?),
            "t_min" => self.t_min = Some(parse_real(v)?),
            "t_max" => self.t_max = Some(parse_real(v)?),
            "t_points" => self.t_points = Some(parse_int(v)?),
            "t_eval" => self.t_eval = Some(parse_real(v)?),
            "which" => {
                self.which = Some(
                    v.parse()
                        .map_err(|e: creutz::Error| CliError::usage(e.to_string()))?,
                )
            }
            "noise_fraction" => self.noise_fraction = Some(parse_real(v)?),
            "noise_count" => self.noise_count = Some(parse_int(v)?),
            "seed" => self.seed = Some(parse_int(v)?),
            "normalization" => {
                self.normalization = Some(
                    v.parse()
                        .map_err(|e: creutz::Error| CliError::usage(e.to_string()))?,
                )
            }
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => self.format = Some(v.parse()?),
            k => unreachable!("key {k} listed but not handled"),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<String> {
        let real = |x: Option<f64>| x.map(crate::output::format_f64);
        let int = |x: Option<usize>| x.map(|v| v.to_string());
        match key {
            "K" => real(self.hopping),
            "M" => real(self.vertical),
            "theta1" => real(self.theta1),
            "theta2" => real(self.theta2),
            "L" => int(self.l),
            "L_min" => int(self.l_min),
            "L_max" => int(self.l_max),
            "step" => int(self.step),
            "t" => real(self.t),
            "t_min" => real(self.t_min),
            "t_max" => real(self.t_max),
            "t_points" => int(self.t_points),
            "t_eval" => real(self.t_eval),
            "which" => self.which.map(|w| w.to_string()),
            "noise_fraction" => real(self.noise_fraction),
            "noise_count" => int(self.noise_count),
            "seed" => self.seed.map(|s| s.to_string()),
            "normalization" => self.normalization.map(|n| n.to_string()),
            "out" => self.out.as_ref().map(|p| p.display().to_string()),
            "format" => self.format.map(|f| f.to_string()),
            _ => None,
        }
    }

    /// Parses the flat `key = value` format. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected key = value", n + 1))
            })?;
            cfg.set(key, value)
                .map_err(|e| CliError::usage(format!("config line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Settings from `other` win where present.
    pub fn overlay(&self, other: &RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => {
                RunConfig { $($f: other.$f.clone().or_else(|| self.$f.clone())),* }
            };
        }
        pick!(
            hopping,
            vertical,
            theta1,
            theta2,
            l,
            l_min,
            l_max,
            step,
            t,
            t_min,
            t_max,
            t_points,
            t_eval,
            which,
            noise_fraction,
            noise_count,
            seed,
            normalization,
            out,
            format
        )
    }

    pub fn hopping(&self) -> f64 {
        self.hopping.unwrap_or(1.0)
    }

    pub fn vertical(&self) -> f64 {
        self.vertical.unwrap_or(1.0)
    }

    pub fn require_theta1(&self) -> Result<f64> {
        self.theta1
            .ok_or_else(|| CliError::usage("missing --theta1"))
    }

    pub fn require_theta2(&self) -> Result<f64> {
        self.theta2
            .ok_or_else(|| CliError::usage("missing --theta2"))
    }

    pub fn require_l(&self) -> Result<usize> {
        match self.l {
            Some(0) => Err(CliError::usage("--L must be positive")),
            Some(l) => Ok(l),
            None => Err(CliError::usage("missing --L")),
        }
    }

    pub fn which(&self) -> Which {
        self.which.unwrap_or(Which::Max)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// Either the single size `L` or the range `L_min..=L_max` in `step`s.
    pub fn sizes(&self, default_step: usize) -> Result<Vec<usize>> {
        match (self.l, self.l_min, self.l_max) {
            (Some(l), None, None) => Ok(vec![self.require_l().map(|_| l)?]),
            (_, Some(lo), Some(hi)) => {
                creutz::qsl::sweep_sizes(lo, hi, self.step.unwrap_or(default_step))
                    .map_err(|e| CliError::usage(e.to_string()))
            }
            _ => Err(CliError::usage(
                "give either --L or both --L-min and --L-max",
            )),
        }
    }

    /// The sample times: the single `t`, or `t_points` evenly spaced points
    /// on `[t_min, t_max]`.
    pub fn times(&self) -> Result<Vec<f64>> {
        if let Some(t) = self.t {
            return Ok(vec![t]);
        }
        let lo = self.t_min.unwrap_or(0.0);
        let hi = self
            .t_max
            .ok_or_else(|| CliError::usage("give --t or --t-max"))?;
        let n = self.t_points.unwrap_or(1001);
        if n < 2 || hi.is_nan() || lo.is_nan() || hi <= lo || lo < 0.0 {
            return Err(CliError::usage(format!(
                "invalid time grid [{lo}, {hi}] with {n} points"
            )));
        }
        let dt = (hi - lo) / (n - 1) as f64;
        Ok((0..n).map(|i| lo + dt * i as f64).collect())
    }
}

impl fmt::Display for RunConfig {
    /// The flat `key = value` form, one line per set key, in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for key in KEYS {
            if let Some(v) = self.get(key) {
                writeln!(f, "{key} = {v}")?;
            }
        }
        Ok(())
    }
}
