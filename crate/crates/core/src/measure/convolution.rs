use crate::dirichlet::IncrementLaw;
use crate::measure::DyadicHistogram;
use crate::par;
use crate::{Error, Result};

/// The harmonic-measure approximation produced by convolving the geometric
/// cascade of one-level increments, together with its bookkeeping: the
/// reported truncation bound is the expected absolute position change the
/// neglected tail of the series could still contribute.
#[derive(Clone, Debug)]
pub struct HarmonicApprox {
    pub histogram: DyadicHistogram,
    pub terms: usize,
    pub symmetrized: bool,
    /// `E|tail| = E|Z| * 2^-terms`, in units of the circle.
    pub tail_position_bound: f64,
}

impl HarmonicApprox {
    /// A crude but honest bound on how far any single bin mass can move
    /// under the neglected tail when the histogram is read at resolution
    /// `m`: displacing the whole law by the tail bound shifts at most
    /// `2 * bound * 2^m` of L1 mass per unit density.
    pub fn l1_bound_at(&self, resolution: u32) -> f64 {
        2.0 * self.tail_position_bound * (1u64 << resolution) as f64
    }
}

/// Computes the law of `sum_{n=1..terms} Z_n 2^-n (mod 1)` where the `Z_n`
/// are independent copies of the half-step increment law, by iterated
/// cyclic convolution on the dyadic grid of resolution `terms` (every term
/// lies exactly on that grid), then aggregates to `resolution` bins.
///
/// The law is symmetrised by default, enforcing the reflection symmetry the
/// true increment law has; pass `symmetrize = false` to keep the raw solver
/// output.
pub fn harmonic_histogram(
    law: &IncrementLaw,
    terms: usize,
    resolution: u32,
    symmetrize: bool,
) -> Result<HarmonicApprox> {
    if terms > 24 {
        return Err(Error::Resolution(format!(
            "internal grid 2^{terms} exceeds the supported range (terms <= 24)"
        )));
    }
    if terms < resolution as usize + 4 {
        return Err(Error::Resolution(format!(
            "need terms >= resolution + 4 for the aggregation to be meaningful \
             (terms {terms}, resolution {resolution})"
        )));
    }
    let law = if symmetrize { law.symmetrized() } else { law.clone() };
    let grid_bits = terms as u32;
    let size = 1usize << grid_bits;
    let mask = size - 1;

    let mut dist = vec![0.0f64; size];
    dist[0] = 1.0;
    let mut next = vec![0.0f64; size];

    for n in 1..=terms {
        // kernel for this level: displacement z lands at z * 2^(terms - n),
        // merged when distinct z alias to one grid shift
        let scale = grid_bits - n as u32;
        let mut kernel: Vec<(usize, f64)> = Vec::with_capacity(law.masses().len());
        for &(z, m) in law.masses() {
            let shift = ((z << scale) & mask as i64).rem_euclid(size as i64) as usize;
            match kernel.iter_mut().find(|(s, _)| *s == shift) {
                Some((_, acc)) => *acc += m,
                None => kernel.push((shift, m)),
            }
        }
        kernel.sort_by_key(|&(s, _)| s);

        {
            let dist_ref = &dist;
            let kernel_ref = &kernel;
            par::fill_indexed(&mut next, |j| {
                let mut acc = 0.0;
                for &(shift, m) in kernel_ref {
                    acc += m * dist_ref[(j.wrapping_sub(shift)) & mask];
                }
                acc
            });
        }
        std::mem::swap(&mut dist, &mut next);
    }

    let fine = DyadicHistogram::new(grid_bits, dist);
    let histogram = fine.coarsen(resolution);
    let tail_position_bound = law.mean_abs() * 0.5f64.powi(terms as i32);
    Ok(HarmonicApprox { histogram, terms, symmetrized: symmetrize, tail_position_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::k1_law;

    fn small_approx() -> HarmonicApprox {
        let law = k1_law(3, 4, 9, 1e-12).unwrap();
        harmonic_histogram(&law, 12, 8, true).unwrap()
    }

    #[test]
    fn total_mass_one() {
        let h = small_approx();
        assert!((h.histogram.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn first_bit_is_fair() {
        let h = small_approx();
        // at this small scale the single boundary atoms at 0 and 1/2 leave
        // a visible residue; the full-scale run is checked at 1e-6
        let lower: f64 = h.histogram.mass()[..128].iter().sum();
        assert!((lower - 0.5).abs() < 1e-3, "mass of [0, 1/2) = {lower}");
    }

    #[test]
    fn matched_bits_beat_mixed_bits() {
        let h = small_approx();
        let m = h.histogram.mass();
        let quarter = m.len() / 4;
        let m00: f64 = m[..quarter].iter().sum();
        let m01: f64 = m[quarter..2 * quarter].iter().sum();
        let m10: f64 = m[2 * quarter..3 * quarter].iter().sum();
        let m11: f64 = m[3 * quarter..].iter().sum();
        assert!(m00 + m11 > 0.5 + 1e-4, "equal-bit mass: {}", m00 + m11);
        assert!((m00 - m11).abs() < 1e-3);
        assert!((m01 - m10).abs() < 1e-3);
    }

    #[test]
    fn reflection_symmetry_at_bin_level() {
        let h = small_approx();
        assert!(h.histogram.mirror_asymmetry() < 1e-3);
    }

    #[test]
    fn doubling_invariance_within_reported_bound() {
        let h = small_approx();
        let pushed = h.histogram.pushforward_doubling();
        let coarsened = h.histogram.coarsen(h.histogram.resolution() - 1);
        let l1 = pushed.l1_to(&coarsened);
        assert!(
            l1 <= h.l1_bound_at(h.histogram.resolution() - 1).max(1e-12),
            "doubling defect {l1} above bound"
        );
    }

    #[test]
    fn resolution_guards() {
        let law = k1_law(3, 4, 9, 1e-12).unwrap();
        assert!(harmonic_histogram(&law, 30, 8, true).is_err());
        assert!(harmonic_histogram(&law, 10, 8, true).is_err());
    }
}
