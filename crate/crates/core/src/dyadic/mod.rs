//! Exact arithmetic on the label types of the lattice graphs: finite binary
//! words, lazily evaluated dyadic integers, and dyadic-rational horizontal
//! positions. No floating point appears anywhere in this module.

mod lazy;
mod rational;
mod word;

pub use lazy::{BitProvider, LazyDyadic};
pub use rational::DyadicRational;
pub use word::Word;
