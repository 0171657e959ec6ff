//! Dyadic lattice graphs, simple random walks on them, and numerical
//! machinery for the stationary and harmonic measures those walks define.
//!
//! The crate is organised around five concerns:
//!
//! * [`dyadic`] — exact arithmetic on finite binary words, lazily evaluated
//!   dyadic integers, and dyadic-rational horizontal positions;
//! * [`graphs`] — neighbour oracles for the lattice graphs, their wrapped
//!   quotient and plane duals, plus structure-recovery algorithms
//!   (edge classification, orientation, root-bit read-back);
//! * [`walk`] — deterministic, seedable random-walk simulation with
//!   leaving-time tracking and mergeable Monte Carlo estimators;
//! * [`dirichlet`] — matrix-free iterative solutions of harmonic boundary
//!   problems on truncated graphs (crest probabilities, the one-level
//!   horizontal increment law);
//! * [`measure`] — histogram construction and analysis for the stationary,
//!   harmonic and dual measures, including the conditional-probability
//!   profile and entropy.
//!
//! With the default `parallel` feature the data-parallel inner loops run on
//! rayon; building with `--no-default-features` selects a sequential
//! fallback with bit-identical results.

pub mod dirichlet;
pub mod dyadic;
pub mod graphs;
pub mod measure;
pub mod walk;

mod error;
pub(crate) mod par;

pub use error::{Error, Result};
