//! The shared sweep kernel: a harmonic solve on a band of consecutive
//! levels of the wrapped graph, with the first and last level held fixed as
//! boundary data.

use crate::par;
use crate::{Error, Result};

/// Below this level width the per-level loops run sequentially; the update
/// rule is identical either way, so results do not depend on the choice.
const PAR_THRESHOLD: usize = 1 << 15;

/// Statistics of a completed band solve.
#[derive(Clone, Copy, Debug)]
pub struct SolveStats {
    pub iterations: u64,
    pub residual: f64,
}

/// Solves the discrete Dirichlet problem on `levels`, where `levels[i]` is
/// the full vertex row at depth `depth0 + i` of the wrapped graph
/// (so `levels[i].len() == 2^(depth0 + i)`), `levels[0]` and the last row
/// are fixed boundary data, and every interior vertex must equal the mean
/// of its neighbours counted with edge multiplicity.
///
/// The interior rows are updated by alternating downward and upward
/// Gauss–Seidel passes over levels, Jacobi within each level. Within-level
/// updates write disjoint slots from a snapshot of the level, so the result
/// is bit-identical whether the row is filled sequentially or in parallel.
/// Stops when the maximum interior residual drops to `tol`; errors if
/// `max_sweeps` alternating passes are not enough.
pub fn solve_band(
    levels: &mut [Vec<f64>],
    depth0: usize,
    tol: f64,
    max_sweeps: u64,
) -> Result<SolveStats> {
    assert!(levels.len() >= 3, "need at least one interior level");
    for (i, level) in levels.iter().enumerate() {
        assert_eq!(level.len(), 1usize << (depth0 + i), "level width mismatch");
    }
    let interior = 1..levels.len() - 1;
    let mut scratch: Vec<f64> = Vec::new();
    let mut sweeps = 0u64;
    loop {
        for i in interior.clone() {
            update_level(levels, i, &mut scratch);
        }
        for i in interior.clone().rev() {
            update_level(levels, i, &mut scratch);
        }
        sweeps += 1;
        if sweeps % 4 == 0 || sweeps >= max_sweeps {
            let residual = band_residual(levels);
            if residual <= tol {
                return Ok(SolveStats { iterations: sweeps, residual });
            }
            if sweeps >= max_sweeps {
                return Err(Error::Solver { residual, iterations: sweeps });
            }
        }
    }
}

/// One Jacobi update of row `i` from a snapshot of itself and the current
/// neighbouring rows.
fn update_level(levels: &mut [Vec<f64>], i: usize, scratch: &mut Vec<f64>) {
    let (lo, rest) = levels.split_at_mut(i);
    let (mid, hi) = rest.split_at_mut(1);
    let above = lo.last().expect("interior level has a row above");
    let row = &mut mid[0];
    let below = hi.first().expect("interior level has a row below");

    scratch.clear();
    scratch.extend_from_slice(row);
    let len = row.len();
    let mask = len - 1;
    let same = &scratch[..];
    let rule = |v: usize| -> f64 {
        let sides = same[(v + mask) & mask] + same[(v + 1) & mask];
        if v & 1 == 0 {
            0.25 * (sides + below[2 * v] + above[v >> 1])
        } else {
            (sides + below[2 * v]) / 3.0
        }
    };
    if len >= PAR_THRESHOLD {
        par::fill_indexed(row, rule);
    } else {
        for (v, slot) in row.iter_mut().enumerate() {
            *slot = rule(v);
        }
    }
}

/// Maximum interior defect |value - neighbour mean|.
pub fn band_residual(levels: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for i in 1..levels.len() - 1 {
        let above = &levels[i - 1];
        let row = &levels[i];
        let below = &levels[i + 1];
        let mask = row.len() - 1;
        let defect = |v: usize| -> f64 {
            let sides = row[(v + mask) & mask] + row[(v + 1) & mask];
            let mean = if v & 1 == 0 {
                0.25 * (sides + below[2 * v] + above[v >> 1])
            } else {
                (sides + below[2 * v]) / 3.0
            };
            (row[v] - mean).abs()
        };
        let level_worst = if row.len() >= PAR_THRESHOLD {
            par::map_indexed(row.len(), defect).into_iter().fold(0.0f64, f64::max)
        } else {
            (0..row.len()).map(defect).fold(0.0f64, f64::max)
        };
        worst = worst.max(level_worst);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_band_matches_hand_solution() {
        // Depths 0..=2 of the wrapped graph with boundary 1 at the root and
        // 0 at depth 2: harmonicity at 0 gives e0 = (2 e1 + 1)/4, at 1 gives
        // e1 = 2 e0 / 3, so e0 = 3/8 and e1 = 1/4.
        let mut levels = vec![vec![1.0], vec![0.0, 0.0], vec![0.0; 4]];
        let stats = solve_band(&mut levels, 0, 1e-14, 10_000).unwrap();
        assert!(stats.residual <= 1e-14);
        assert!((levels[1][0] - 0.375).abs() < 1e-12);
        assert!((levels[1][1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_reports_solver_error() {
        let mut levels = vec![vec![1.0], vec![0.0, 0.0], vec![0.0; 4]];
        let err = solve_band(&mut levels, 0, 1e-30, 8).unwrap_err();
        assert!(matches!(err, Error::Solver { .. }));
    }
}
