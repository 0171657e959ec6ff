//! Matrix-free iterative solutions of harmonic boundary problems on
//! truncated wrapped graphs: the crest-probability fields, per-level
//! normalisation, geometric-ratio extrapolation, and the one-level
//! horizontal increment law.

mod band;
mod crest;
mod k1;

pub use band::solve_band;
pub use crest::{
    crest_pipeline, esc_to_p3, extrapolate_ratio2, p3_to_esc, solve_crest, solve_crest_sequence,
    CrestField, CrestSummary, Extrapolation,
};
pub use k1::{k1_law, IncrementLaw};
