use crate::dyadic::{DyadicRational, LazyDyadic};
use crate::graphs::PrimalMove;
use crate::{Error, Result};

/// Which lattice graph a neighbour query runs on: the full graph with
/// vertices at every depth, or its restriction to nonnegative depths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeGraph {
    /// All depths; the rooted graph of a dyadic integer.
    Full,
    /// Depths >= 0 only; no upward move from depth 0.
    HalfPlane,
}

/// A vertex of the lattice graph: a depth, an exact label, and the exact
/// horizontal position relative to the root column. Positions change by
/// `2^-depth` on horizontal moves and are preserved by vertical moves, so
/// `(depth, position)` identifies a vertex within one rooted graph and is
/// used as the hash key during breadth-first searches.
#[derive(Clone, Debug)]
pub struct GammaVertex {
    depth: i64,
    label: LazyDyadic,
    position: DyadicRational,
}

/// The hashable identity of a vertex within a fixed rooted graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexKey {
    pub depth: i64,
    pub position: DyadicRational,
}

impl GammaVertex {
    /// The root `(0, a)` of the rooted graph of `a`.
    pub fn root(label: LazyDyadic) -> Self {
        GammaVertex { depth: 0, label, position: DyadicRational::zero() }
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn label(&self) -> &LazyDyadic {
        &self.label
    }

    pub fn position(&self) -> &DyadicRational {
        &self.position
    }

    pub fn key(&self) -> VertexKey {
        VertexKey { depth: self.depth, position: self.position.clone() }
    }

    /// Degree in the full lattice: 4 when the label is even, else 3.
    pub fn full_degree(&self) -> usize {
        if self.label.is_even() {
            4
        } else {
            3
        }
    }

    /// Steps left (toward smaller positions).
    pub fn left(&self) -> GammaVertex {
        GammaVertex {
            depth: self.depth,
            label: self.label.pred(),
            position: &self.position - &DyadicRational::step_size(self.depth),
        }
    }

    pub fn right(&self) -> GammaVertex {
        GammaVertex {
            depth: self.depth,
            label: self.label.succ(),
            position: &self.position + &DyadicRational::step_size(self.depth),
        }
    }

    pub fn down(&self) -> GammaVertex {
        GammaVertex {
            depth: self.depth + 1,
            label: self.label.double(),
            position: self.position.clone(),
        }
    }

    /// Steps up; defined only on even labels.
    pub fn up(&self) -> Result<GammaVertex> {
        Ok(GammaVertex {
            depth: self.depth - 1,
            label: self.label.halve()?,
            position: self.position.clone(),
        })
    }
}

/// The incident edges of `v` with move labels: horizontal neighbours at
/// equal depth, the downward neighbour, and the upward neighbour when the
/// label is even (and, on the half-plane graph, the depth is positive).
pub fn lattice_neighbors(v: &GammaVertex, graph: LatticeGraph) -> Vec<(GammaVertex, PrimalMove)> {
    let mut out = vec![
        (v.left(), PrimalMove::Left),
        (v.right(), PrimalMove::Right),
        (v.down(), PrimalMove::Down),
    ];
    let up_allowed = match graph {
        LatticeGraph::Full => true,
        LatticeGraph::HalfPlane => v.depth >= 1,
    };
    if up_allowed && v.label.is_even() {
        out.push((v.up().expect("even label"), PrimalMove::Up));
    }
    out
}

/// An unlabelled neighbour oracle, the interface the structure-recovery
/// algorithms are allowed to see: adjacency and degrees only, no move
/// labels and no label peeking.
pub trait NeighborOracle {
    fn neighbors(&self, v: &GammaVertex) -> Result<Vec<GammaVertex>>;

    fn degree(&self, v: &GammaVertex) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }
}

/// The full lattice graph as an oracle; pure and inexhaustible.
pub struct FullLattice;

impl NeighborOracle for FullLattice {
    fn neighbors(&self, v: &GammaVertex) -> Result<Vec<GammaVertex>> {
        Ok(lattice_neighbors(v, LatticeGraph::Full).into_iter().map(|(n, _)| n).collect())
    }
}

/// A depth-windowed oracle for exhaustion testing: queries outside the
/// window report `InsufficientContext` instead of answering.
pub struct WindowedLattice {
    pub min_depth: i64,
    pub max_depth: i64,
    pub radius: usize,
}

impl NeighborOracle for WindowedLattice {
    fn neighbors(&self, v: &GammaVertex) -> Result<Vec<GammaVertex>> {
        if v.depth < self.min_depth || v.depth > self.max_depth {
            return Err(Error::InsufficientContext { radius: self.radius });
        }
        FullLattice.neighbors(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::BitProvider;

    fn root_of(provider: BitProvider) -> GammaVertex {
        GammaVertex::root(LazyDyadic::from_provider(provider))
    }

    #[test]
    fn even_root_sees_negative_depth() {
        let v = root_of(BitProvider::zero_tail("0").unwrap());
        let ns = lattice_neighbors(&v, LatticeGraph::Full);
        assert_eq!(ns.len(), 4);
        let up = ns.iter().find(|(_, m)| *m == PrimalMove::Up).unwrap();
        assert_eq!(up.0.depth(), -1);
    }

    #[test]
    fn half_plane_has_no_upward_move_at_depth_zero() {
        let even = root_of(BitProvider::zero_tail("0").unwrap());
        assert_eq!(lattice_neighbors(&even, LatticeGraph::HalfPlane).len(), 3);
        let odd = root_of(BitProvider::zero_tail("1").unwrap());
        assert_eq!(lattice_neighbors(&odd, LatticeGraph::HalfPlane).len(), 3);
    }

    #[test]
    fn odd_vertex_at_positive_depth_has_degree_three() {
        let v = root_of(BitProvider::zero_tail("1").unwrap()).down().right();
        assert_eq!(v.depth(), 1);
        assert_eq!(v.label().parity(), 1);
        let ns = lattice_neighbors(&v, LatticeGraph::Full);
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn positions_track_moves_exactly() {
        let v = root_of(BitProvider::random(11));
        let w = v.down().down().right().right().down().left();
        // 2/4 - 1/8 = 3/8
        assert_eq!(w.position().to_string(), "3/8");
        // moving back retraces the exact position
        let back = w.right().left();
        assert_eq!(back.position(), w.position());
    }

    #[test]
    fn windowed_oracle_reports_exhaustion() {
        let oracle = WindowedLattice { min_depth: 0, max_depth: 2, radius: 8 };
        let v = root_of(BitProvider::zero_tail("0").unwrap());
        assert!(oracle.neighbors(&v).is_ok());
        let above = v.up().unwrap();
        assert!(matches!(
            oracle.neighbors(&above),
            Err(Error::InsufficientContext { radius: 8 })
        ));
    }
}
