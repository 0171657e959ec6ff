use crate::measure::DyadicHistogram;
use crate::par;
use crate::{Error, Result};

/// Stationary vector of the finite window chain: states are the last `L`
/// bits of the label, moves are add/subtract 1 modulo `2^L` (always),
/// append-0-drop-first-bit (always, the downward move), and
/// drop-last-append-leading-0 (from even states only, the upward move with
/// the revealed bit fixed to 0). Each legal move has equal probability.
#[derive(Clone, Debug)]
pub struct StationaryChain {
    length: u32,
    dist: Vec<f64>,
    iterations: u64,
    residual: f64,
    random_up_bit: bool,
}

impl StationaryChain {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn distribution(&self) -> &[f64] {
        &self.dist
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    /// Final L1 change between successive iterates.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn random_up_bit(&self) -> bool {
        self.random_up_bit
    }

    /// Mass of the odd states: the implied fraction of time at degree-3
    /// vertices.
    pub fn implied_p3(&self) -> f64 {
        self.dist.iter().skip(1).step_by(2).sum()
    }

    /// Marginal over the last `to` bits of a longer chain's state.
    pub fn marginal(&self, to: u32) -> Vec<f64> {
        assert!(to <= self.length);
        let mask = (1usize << to) - 1;
        let mut out = vec![0.0; 1 << to];
        for (v, &p) in self.dist.iter().enumerate() {
            out[v & mask] += p;
        }
        out
    }

    /// The distribution pushed through the display map
    /// `(a_0, a_1, ...) -> 0.a_0 a_1 ...` and aggregated to `resolution`
    /// most-significant display bits: bin index is the bit-reversed low part
    /// of the state.
    pub fn display_histogram(&self, resolution: u32) -> DyadicHistogram {
        assert!(resolution <= self.length);
        let mut mass = vec![0.0; 1 << resolution];
        for (v, &p) in self.dist.iter().enumerate() {
            let mut bin = 0usize;
            for k in 0..resolution {
                bin = (bin << 1) | ((v >> k) & 1);
            }
            mass[bin] += p;
        }
        DyadicHistogram::new(resolution, mass)
    }

    /// CSV dump: state (as an `L`-bit label, most significant first), mass.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,mass\n");
        let l = self.length as usize;
        for (v, &p) in self.dist.iter().enumerate() {
            out.push_str(&format!("{:0l$b},{p:.17e}\n", v));
        }
        out
    }
}

fn degree(v: usize) -> f64 {
    if v & 1 == 0 {
        4.0
    } else {
        3.0
    }
}

/// One step of the window chain applied by gathering from predecessors;
/// `random_up_bit` replaces the fixed revealed bit with a fair one.
fn chain_step(dist: &[f64], length: u32, random_up_bit: bool, out: &mut [f64]) {
    let size = dist.len();
    let mask = size - 1;
    let half = size >> 1;
    let rule = |t: usize| -> f64 {
        let mut acc = dist[(t + 1) & mask] / degree((t + 1) & mask)
            + dist[(t + size - 1) & mask] / degree((t + size - 1) & mask);
        if t & 1 == 0 {
            // downward predecessors: both states sharing the shifted window
            let a = t >> 1;
            acc += dist[a] / degree(a) + dist[a | half] / degree(a | half);
        }
        if random_up_bit {
            acc += dist[2 * (t & (half - 1))] / 4.0 * 0.5;
        } else if t < half {
            acc += dist[2 * t] / 4.0;
        }
        acc
    };
    let _ = length;
    if size >= (1 << 15) {
        par::fill_indexed(out, rule);
    } else {
        for (t, slot) in out.iter_mut().enumerate() {
            *slot = rule(t);
        }
    }
}

/// Power iteration for the stationary vector of the window chain, stopping
/// when successive iterates differ by at most `tol` in L1.
pub fn truncated_stationary(length: u32, tol: f64, random_up_bit: bool) -> Result<StationaryChain> {
    if !(2..=20).contains(&length) {
        return Err(Error::Domain(format!(
            "window length must be between 2 and 20, got {length}"
        )));
    }
    let size = 1usize << length;
    let mut dist = vec![1.0 / size as f64; size];
    let mut next = vec![0.0; size];
    let max_iterations = 4_000_000u64;
    let mut iterations = 0;
    loop {
        chain_step(&dist, length, random_up_bit, &mut next);
        iterations += 1;
        let l1: f64 = dist.iter().zip(next.iter()).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut dist, &mut next);
        if l1 <= tol {
            // renormalise away accumulated rounding
            let total: f64 = dist.iter().sum();
            for p in dist.iter_mut() {
                *p /= total;
            }
            return Ok(StationaryChain { length, dist, iterations, residual: l1, random_up_bit });
        }
        if iterations >= max_iterations {
            return Err(Error::Solver { residual: l1, iterations });
        }
    }
}

/// One step of the window chain of the dual walk applied to `dist`: five
/// equally likely moves — add or subtract 1, drop the last bit revealing a
/// fair leading bit, append 0, append 1 (dropping the leading bit).
pub fn dual_chain_step(dist: &[f64]) -> Vec<f64> {
    let size = dist.len();
    assert!(size.is_power_of_two() && size >= 2);
    let mask = size - 1;
    let half = size >> 1;
    let mut out = vec![0.0; size];
    par::fill_indexed(&mut out, |t| {
        let sideways = dist[(t + 1) & mask] + dist[(t + size - 1) & mask];
        let up = 0.5 * (dist[2 * (t & (half - 1))] + dist[2 * (t & (half - 1)) + 1]);
        let down = dist[t >> 1] + dist[(t >> 1) | half];
        (sideways + up + down) / 5.0
    });
    out
}

/// L1 distance from uniform after one dual-chain step applied to the
/// uniform vector; zero up to rounding, because the fair-coin product
/// measure is invariant under every one of the five moves.
pub fn dual_invariance_residual(length: u32) -> f64 {
    assert!((1..=24).contains(&length));
    let size = 1usize << length;
    let uniform = vec![1.0 / size as f64; size];
    let stepped = dual_chain_step(&uniform);
    uniform
        .iter()
        .zip(stepped.iter())
        .map(|(a, b)| (a - b).abs())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense transition-matrix oracle, built by scattering moves state by
    /// state; an independent construction path from the gather rule.
    fn dense_stationary(length: u32) -> Vec<f64> {
        let size = 1usize << length;
        let mask = size - 1;
        let half = size >> 1;
        let mut p = vec![vec![0.0f64; size]; size];
        for s in 0..size {
            let deg = degree(s);
            p[s][(s + 1) & mask] += 1.0 / deg;
            p[s][(s + size - 1) & mask] += 1.0 / deg;
            p[s][(s << 1) & mask] += 1.0 / deg;
            if s & 1 == 0 {
                p[s][s >> 1] += 1.0 / deg;
            }
        }
        let _ = half;
        let mut dist = vec![1.0 / size as f64; size];
        for _ in 0..200_000 {
            let mut next = vec![0.0; size];
            for (s, row) in p.iter().enumerate() {
                for (t, &w) in row.iter().enumerate() {
                    next[t] += dist[s] * w;
                }
            }
            let l1: f64 = dist.iter().zip(next.iter()).map(|(a, b)| (a - b).abs()).sum();
            dist = next;
            if l1 < 1e-15 {
                break;
            }
        }
        dist
    }

    #[test]
    fn matches_dense_oracle_for_short_windows() {
        for length in 2..=4u32 {
            let chain = truncated_stationary(length, 1e-14, false).unwrap();
            let oracle = dense_stationary(length);
            for (a, b) in chain.distribution().iter().zip(oracle.iter()) {
                assert!((a - b).abs() < 1e-10, "L={length}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn stationarity_residual_is_below_tolerance() {
        let chain = truncated_stationary(8, 1e-13, false).unwrap();
        assert!(chain.residual() <= 1e-13);
        let stepped = {
            let mut out = vec![0.0; 1 << 8];
            chain_step(chain.distribution(), 8, false, &mut out);
            out
        };
        let l1: f64 = chain
            .distribution()
            .iter()
            .zip(stepped.iter())
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(l1 < 1e-12);
    }

    #[test]
    fn dual_uniform_is_exactly_invariant() {
        assert_eq!(dual_invariance_residual(1), 0.0);
        assert!(dual_invariance_residual(8) <= 1e-14);
    }

    #[test]
    fn dual_point_mass_is_not_invariant() {
        let mut point = vec![0.0; 256];
        point[37] = 1.0;
        let stepped = dual_chain_step(&point);
        let l1: f64 = point.iter().zip(stepped.iter()).map(|(a, b)| (a - b).abs()).sum();
        assert!(l1 > 1.0);
    }

    #[test]
    fn fixed_width_marginals_converge_geometrically() {
        // The full-window L1 between successive chains grows with the
        // window (the limit measure is singular); what converges is any
        // fixed-width marginal, and it does so at ratio about one half.
        let mut gaps = Vec::new();
        let mut prev = truncated_stationary(5, 1e-13, false).unwrap();
        for l in 6..=10u32 {
            let chain = truncated_stationary(l, 1e-13, false).unwrap();
            let a = chain.marginal(4);
            let b = prev.marginal(4);
            let l1: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum();
            assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            gaps.push(l1);
            prev = chain;
        }
        for pair in gaps.windows(2) {
            assert!(pair[1] < pair[0], "marginal gaps not shrinking: {gaps:?}");
        }
        assert!(gaps.last().unwrap() / gaps.first().unwrap() < 0.25);
    }

    #[test]
    fn display_histogram_reverses_bits() {
        let chain = truncated_stationary(4, 1e-13, false).unwrap();
        let h = chain.display_histogram(4);
        // state 0b0001 (a0 = 1) lands in display bin 0b1000
        let direct = chain.distribution()[0b0001];
        assert!((h.mass()[0b1000] - direct).abs() < 1e-15);
        assert!((h.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_up_bit_variant_differs() {
        let fixed = truncated_stationary(8, 1e-13, false).unwrap();
        let random = truncated_stationary(8, 1e-13, true).unwrap();
        assert!((fixed.implied_p3() - random.implied_p3()).abs() > 1e-6);
    }
}
