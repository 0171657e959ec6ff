//! Neighbour oracles for the dyadic lattice graphs and their duals, plus the
//! structure-recovery algorithms: edge classification, vertical-edge
//! orientation, and root-bit read-back.
//!
//! The infinite graphs are never materialised; every oracle is a pure
//! function of the vertex, so the graphs may be explored lazily and in
//! parallel. Only the Dirichlet solver builds explicit value arrays, and it
//! does so over the finite wrapped truncations.

mod lattice;
mod recovery;
mod wrapped;

pub use lattice::{
    lattice_neighbors, FullLattice, GammaVertex, LatticeGraph, NeighborOracle, VertexKey,
    WindowedLattice,
};
pub use recovery::{avoiding_distance, read_root_bits, EdgeClassifier, EdgeOrientation};
pub use wrapped::{
    dual_neighbors, dual_reflect, reflect, wrapped_degree, wrapped_edge_dump, wrapped_neighbors,
    DualMove, PrimalMove,
};
