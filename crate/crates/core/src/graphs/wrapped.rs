use crate::dyadic::Word;

/// A move of the primal walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimalMove {
    Left,
    Right,
    Down,
    Up,
}

/// A move of the dual walk, which always has five options: sideways,
/// removing the final bit, or appending either bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualMove {
    Left,
    Right,
    Up,
    DownZero,
    DownOne,
}

/// Degree in the wrapped graph. Vertices ending in 0 have degree 4; the
/// root's two loops are counted once each, giving it degree 3.
pub fn wrapped_degree(w: &Word) -> usize {
    if w.is_empty() || !w.is_even() {
        3
    } else {
        4
    }
}

/// The full multiset of edges incident to `w` in the wrapped graph, with
/// move labels. A vertex of depth 1 sees its two horizontal edges lead to
/// the same word, and the root sees its two loops as distinct Left/Right
/// entries; the walk steps uniformly over the returned list.
pub fn wrapped_neighbors(w: &Word) -> Vec<(Word, PrimalMove)> {
    if w.is_empty() {
        return vec![
            (Word::empty(), PrimalMove::Left),
            (Word::empty(), PrimalMove::Right),
            (w.append(0), PrimalMove::Down),
        ];
    }
    let mut out = vec![
        (w.offset_mod(-1).expect("nonempty"), PrimalMove::Left),
        (w.offset_mod(1).expect("nonempty"), PrimalMove::Right),
        (w.append(0), PrimalMove::Down),
    ];
    if w.is_even() {
        out.push((w.pop().expect("nonempty"), PrimalMove::Up));
    }
    out
}

/// The five dual moves from `w`. At the root the sideways and upward moves
/// are self-loops, keeping the move menu uniform; only the walk's behaviour
/// after leaving the root matters for the measures it defines.
pub fn dual_neighbors(w: &Word) -> Vec<(Word, DualMove)> {
    if w.is_empty() {
        return vec![
            (Word::empty(), DualMove::Left),
            (Word::empty(), DualMove::Right),
            (Word::empty(), DualMove::Up),
            (w.append(0), DualMove::DownZero),
            (w.append(1), DualMove::DownOne),
        ];
    }
    vec![
        (w.offset_mod(-1).expect("nonempty"), DualMove::Left),
        (w.offset_mod(1).expect("nonempty"), DualMove::Right),
        (w.pop().expect("nonempty"), DualMove::Up),
        (w.append(0), DualMove::DownZero),
        (w.append(1), DualMove::DownOne),
    ]
}

/// The unique nontrivial automorphism of the wrapped graph: a word of depth
/// `n` with value `v` maps to the word of value `2^n - v (mod 2^n)`. An
/// involution that swaps left and right moves.
pub fn reflect(w: &Word) -> Word {
    let d = w.depth();
    if d == 0 {
        return Word::empty();
    }
    // 2^d - v = bitwise complement of (v - 1); computed by flipping every
    // bit above the lowest set bit.
    let bits = w.bits();
    let mut out = vec![0u8; d];
    let mut flipping = false;
    for i in (0..d).rev() {
        if flipping {
            out[i] = 1 - bits[i];
        } else {
            out[i] = bits[i];
            if bits[i] == 1 {
                flipping = true;
            }
        }
    }
    Word::from_bits(&out)
}

/// The reflection of the dual graph's vertex labels: bitwise complement.
/// Faces are labelled by their upper-left corner, so the primal reflection
/// shifts by one on dual labels, landing on the complement map. Conjugating
/// the dual walk by this map swaps Left with Right and DownZero with
/// DownOne.
pub fn dual_reflect(w: &Word) -> Word {
    let flipped: Vec<u8> = w.bits().iter().map(|&b| 1 - b).collect();
    Word::from_bits(&flipped)
}

/// CSV dump of the edges of the wrapped graph up to `max_depth`, one row
/// per edge with its construction classification. Self-loops at the root
/// are omitted. Columns: depth_u, label_u, depth_v, label_v, class, upper
/// (upper endpoint's label for vertical edges, empty otherwise).
pub fn wrapped_edge_dump(max_depth: usize) -> String {
    let mut out = String::from("depth_u,label_u,depth_v,label_v,class,upper\n");
    let mut level = vec![Word::empty()];
    for depth in 0..=max_depth {
        for w in &level {
            if depth > 0 {
                let right = w.offset_mod(1).expect("nonempty");
                out.push_str(&format!("{},{},{},{},horizontal,\n", depth, w, depth, right));
            }
            if depth < max_depth {
                let down = w.append(0);
                out.push_str(&format!(
                    "{},{},{},{},vertical,{}\n",
                    depth,
                    w,
                    depth + 1,
                    down,
                    w
                ));
            }
        }
        if depth < max_depth {
            level = level
                .iter()
                .flat_map(|w| [w.append(0), w.append(1)])
                .collect();
            level.sort();
        }
    }
    out
}
