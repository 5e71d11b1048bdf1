//! Quench dynamics of the Creutz ladder.
//!
//! The crate is layered bottom-up:
//!
//! - [`model`]: momentum grid, 2×2 Bloch blocks, Bogoliubov angles, bands,
//!   gap-closing modes and the commensurability condition.
//! - [`quench`]: per-mode echo amplitudes, the Loschmidt echo and rate
//!   function, the exact-zero condition and the allowed-mode set.
//! - [`qsl`]: first divergence times, energy spread, Mandelstam–Tamm bounds
//!   and size-sweep statistics.
//! - [`noise`]: seeded classical-noise ensembles on the post-quench phase.
//! - [`oracle`]: brute-force 2×2 linear algebra used to check all of the
//!   above.
//!
//! Size sweeps and ensembles fan out through [`par`], which uses rayon when
//! the `parallel` feature is enabled and plain iterators otherwise. Every
//! reduction runs over an ordered buffer, so results do not depend on the
//! number of workers.

pub mod error;
pub mod model;
pub mod noise;
pub mod oracle;
pub mod par;
pub mod qsl;
pub mod quench;

pub use error::{Error, Result};
pub use model::{
    band_energies, band_gap, block_entries, bogoliubov_angle, commensurate_sizes,
    gap_closing_modes, momentum_grid, BandEnergies, BlockEntries, BogoliubovAngle, ModelParams,
    MomentumGrid,
};
pub use noise::{
    ensemble_mean_variance, mixed_le, noisy_qsl_bound, sample_noise, NoiseConfig, NoiseEnsemble,
};
pub use qsl::{
    energy_variance, first_divergence_time, mt_bound, qsl_sweep_stats, qsl_time, qsl_vs_size,
    tau_c_asymptote, tau_f_extrema, tau_fmax_asymptote, Normalization, SweepStats, TauFExtrema,
    Which,
};
pub use quench::{
    allowed_modes, critical_times, delta_c, delta_c_asymptote, loschmidt_echo, mode_amplitude,
    rate_function, zero_condition_rhs, LeTrace, ModeAmplitude, QuenchSpec, ZeroSolution,
};
