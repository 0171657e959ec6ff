//! Numerical measure construction and analysis: the truncated stationary
//! chain, the convolution construction of the harmonic measure, the exact
//! dual measures, conditional-probability profiles with entropy, and the
//! singularity diagnostics.

mod analysis;
mod chain;
mod convolution;
mod histogram;

pub use analysis::{
    singularity_table, substring_density, substring_density_se, two_bit_stats, GMeasureProfile,
    TwoBitStats,
};
pub use chain::{
    dual_chain_step, dual_invariance_residual, truncated_stationary, StationaryChain,
};
pub use convolution::{harmonic_histogram, HarmonicApprox};
pub use histogram::{dual_harmonic_exact, DyadicHistogram};
