use std::collections::{HashMap, HashSet, VecDeque};

use crate::dyadic::{LazyDyadic, Word};
use crate::graphs::{GammaVertex, NeighborOracle, VertexKey};
use crate::{Error, Result};

/// The recovered class of a lattice edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrientation {
    Horizontal,
    Vertical,
}

/// Length of a shortest path from `from` to `to` that avoids `avoid`,
/// searched up to `cap` steps; `None` if no such path exists within the
/// cap. Oracle errors (windowed context exhaustion) propagate.
pub fn avoiding_distance<O: NeighborOracle>(
    oracle: &O,
    from: &GammaVertex,
    avoid: &GammaVertex,
    to: &GammaVertex,
    cap: usize,
) -> Result<Option<usize>> {
    let target = to.key();
    let banned = avoid.key();
    if from.key() == target {
        return Ok(Some(0));
    }
    let mut seen: HashSet<VertexKey> = HashSet::new();
    seen.insert(from.key());
    seen.insert(banned);
    let mut frontier: VecDeque<(GammaVertex, usize)> = VecDeque::new();
    frontier.push_back((from.clone(), 0));
    while let Some((v, d)) = frontier.pop_front() {
        if d == cap {
            continue;
        }
        for n in oracle.neighbors(&v)? {
            let k = n.key();
            if k == target {
                return Ok(Some(d + 1));
            }
            if seen.insert(k) {
                frontier.push_back((n, d + 1));
            }
        }
    }
    Ok(None)
}

/// Recovers edge classes and vertical orientations from adjacency and
/// degrees alone. Classifications are memoised per instance because the
/// orientation search reuses the same edges many times.
///
/// Classification rule: two degree-4 endpoints make a vertical edge. For a
/// degree-3/degree-4 pair (x, y): if y has two degree-4 neighbours the edge
/// is horizontal; otherwise, with z the unique degree-4 neighbour of y, the
/// edge is horizontal exactly when some path from x to z avoiding y has
/// length at most 3. The actual avoiding distance in the vertical case is
/// measured by [`avoiding_distance`] rather than assumed; the dichotomy at
/// 3 is all the classifier needs.
pub struct EdgeClassifier<'a, O: NeighborOracle> {
    oracle: &'a O,
    memo: HashMap<(VertexKey, VertexKey), EdgeOrientation>,
}

impl<'a, O: NeighborOracle> EdgeClassifier<'a, O> {
    pub fn new(oracle: &'a O) -> Self {
        EdgeClassifier { oracle, memo: HashMap::new() }
    }

    pub fn classify(&mut self, u: &GammaVertex, v: &GammaVertex) -> Result<EdgeOrientation> {
        let key = (u.key(), v.key());
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        let class = self.classify_uncached(u, v)?;
        self.memo.insert((key.1.clone(), key.0.clone()), class);
        self.memo.insert(key, class);
        Ok(class)
    }

    fn classify_uncached(&mut self, u: &GammaVertex, v: &GammaVertex) -> Result<EdgeOrientation> {
        let du = self.oracle.degree(u)?;
        let dv = self.oracle.degree(v)?;
        match (du, dv) {
            (4, 4) => Ok(EdgeOrientation::Vertical),
            (3, 4) | (4, 3) => {
                let (x, y) = if du == 3 { (u, v) } else { (v, u) };
                let mut degree_four = Vec::new();
                for n in self.oracle.neighbors(y)? {
                    if self.oracle.degree(&n)? == 4 {
                        degree_four.push(n);
                    }
                }
                match degree_four.len() {
                    0 => Err(Error::Structure(
                        "degree-4 vertex with no degree-4 neighbour".into(),
                    )),
                    1 => {
                        let z = &degree_four[0];
                        if avoiding_distance(self.oracle, x, y, z, 3)?.is_some() {
                            Ok(EdgeOrientation::Horizontal)
                        } else {
                            Ok(EdgeOrientation::Vertical)
                        }
                    }
                    _ => Ok(EdgeOrientation::Horizontal),
                }
            }
            _ => Err(Error::Structure(format!(
                "edge with endpoint degrees {du} and {dv} cannot occur"
            ))),
        }
    }

    /// Returns the upper endpoint of a vertical edge: the endpoint from
    /// which exactly two paths of move pattern
    /// (horizontal, vertical, horizontal, horizontal) reach the other.
    pub fn orient(&mut self, u: &GammaVertex, v: &GammaVertex) -> Result<GammaVertex> {
        if self.classify(u, v)? != EdgeOrientation::Vertical {
            return Err(Error::Structure("orient called on a horizontal edge".into()));
        }
        let from_u = self.pattern_paths(u, v)?;
        let from_v = self.pattern_paths(v, u)?;
        match (from_u, from_v) {
            (2, 0) => Ok(u.clone()),
            (0, 2) => Ok(v.clone()),
            other => Err(Error::Structure(format!(
                "vertical edge with pattern-path counts {other:?}; neighbour oracle is inconsistent"
            ))),
        }
    }

    fn pattern_paths(&mut self, from: &GammaVertex, to: &GammaVertex) -> Result<usize> {
        let target = to.key();
        let mut count = 0;
        for n1 in self.oracle.neighbors(from)? {
            if self.classify(from, &n1)? != EdgeOrientation::Horizontal {
                continue;
            }
            for n2 in self.oracle.neighbors(&n1)? {
                if self.classify(&n1, &n2)? != EdgeOrientation::Vertical {
                    continue;
                }
                for n3 in self.oracle.neighbors(&n2)? {
                    if self.classify(&n2, &n3)? != EdgeOrientation::Horizontal {
                        continue;
                    }
                    for n4 in self.oracle.neighbors(&n3)? {
                        if n4.key() == target
                            && self.classify(&n3, &n4)? == EdgeOrientation::Horizontal
                        {
                            count += 1;
                        }
                    }
                }
            }
        }
        Ok(count)
    }
}

/// Reads the low `k` bits of a root label from the rooted graph by walking
/// upwards: a degree-4 vertex emits 0 and steps up; a degree-3 vertex emits
/// 1 and steps left, then up. Only degree queries and the construction's
/// left/up moves are used (telling left from right is a planar-orientation
/// datum, not a graph-structure one). The result is the word whose value is
/// the label modulo `2^k`.
pub fn read_root_bits(root_label: &LazyDyadic, k: usize) -> Word {
    let mut emitted = Vec::with_capacity(k);
    let mut v = GammaVertex::root(root_label.clone());
    for _ in 0..k {
        if v.full_degree() == 4 {
            emitted.push(0);
            v = v.up().expect("degree-4 vertex has an even label");
        } else {
            emitted.push(1);
            let left = v.left();
            v = left.up().expect("left neighbour of an odd vertex is even");
        }
    }
    emitted.reverse();
    Word::from_bits(&emitted)
}
