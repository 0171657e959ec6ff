//! Simple-random-walk simulation on the lattice graphs and their duals,
//! leaving-time tracking with the confirmation-depth rule, and Monte Carlo
//! estimators with mergeable statistics.
//!
//! Determinism contract: every walker draws from a ChaCha stream keyed by
//! `(seed, walker index)`, walkers share no mutable state, and partial
//! results merge in walker order, so outputs are bit-identical for a fixed
//! seed regardless of thread count or scheduling.

mod engine;
mod leaving;
mod mc;
mod stats;

pub use engine::{walker_rng, DualWalker, HalfPlaneWalker, TrajectoryRow, WrappedWalker};
pub use leaving::{leaving_distribution, run_with_leaving_times, LeavingDistribution, LeavingRecord};
pub use mc::{
    dual_harmonic_counts, dual_speed, estimate_p3, harmonic_sample_error_bound,
    sample_harmonic_dual, sample_harmonic_half_plane, sample_harmonic_wrapped,
    sample_stationary_word, stationary_bit_window, two_step_drift_table, DriftTable, P3Run,
};
pub use stats::{chi_square_uniform, ks_two_sample, ChiSquareTest, Estimate, KsTest};
