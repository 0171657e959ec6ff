use crate::dyadic::Word;

/// A probability mass function over the `2^m` dyadic intervals
/// `[k 2^-m, (k+1) 2^-m)` of the circle. Total-variation distances are
/// reported in their L1 form, `sum |p_i - q_i|`, throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicHistogram {
    resolution: u32,
    mass: Vec<f64>,
}

impl DyadicHistogram {
    pub fn new(resolution: u32, mass: Vec<f64>) -> Self {
        assert_eq!(mass.len(), 1usize << resolution, "bin count mismatch");
        debug_assert!(mass.iter().all(|&m| m >= 0.0));
        debug_assert!((mass.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        DyadicHistogram { resolution, mass }
    }

    /// The uniform histogram, every bin `2^-m`.
    pub fn uniform(resolution: u32) -> Self {
        let bins = 1usize << resolution;
        DyadicHistogram { resolution, mass: vec![1.0 / bins as f64; bins] }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn bins(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Sums adjacent bins down to a coarser resolution; exact bin algebra.
    pub fn coarsen(&self, to: u32) -> DyadicHistogram {
        assert!(to <= self.resolution);
        let factor = 1usize << (self.resolution - to);
        let mass = self
            .mass
            .chunks_exact(factor)
            .map(|chunk| chunk.iter().sum())
            .collect();
        DyadicHistogram { resolution: to, mass }
    }

    /// The image under the doubling map `x -> 2x (mod 1)`, one resolution
    /// coarser: bin `i` collects the two preimage bins `i` and `i + 2^(m-1)`.
    pub fn pushforward_doubling(&self) -> DyadicHistogram {
        assert!(self.resolution >= 1);
        let half = self.mass.len() / 2;
        let mass = (0..half).map(|i| self.mass[i] + self.mass[i + half]).collect();
        DyadicHistogram { resolution: self.resolution - 1, mass }
    }

    /// L1 distance to another histogram at the same resolution.
    pub fn l1_to(&self, other: &DyadicHistogram) -> f64 {
        assert_eq!(self.resolution, other.resolution);
        self.mass
            .iter()
            .zip(other.mass.iter())
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// Total-variation distance to the uniform histogram, in L1 form.
    pub fn tv_to_uniform(&self) -> f64 {
        self.l1_to(&DyadicHistogram::uniform(self.resolution))
    }

    /// Largest difference between a bin and its mirror under `x -> 1 - x`
    /// (bin `j` against bin `2^m - 1 - j`).
    pub fn mirror_asymmetry(&self) -> f64 {
        let n = self.mass.len();
        (0..n)
            .map(|j| (self.mass[j] - self.mass[n - 1 - j]).abs())
            .fold(0.0, f64::max)
    }

    /// Mass of the cylinder of a finite word: the interval of numbers whose
    /// binary expansion starts with it.
    pub fn prefix_mass(&self, prefix: &Word) -> f64 {
        let l = prefix.depth() as u32;
        assert!(l <= self.resolution, "prefix finer than the histogram");
        let width = 1usize << (self.resolution - l);
        let start = (prefix.value_u64() as usize) << (self.resolution - l);
        self.mass[start..start + width].iter().sum()
    }

    /// CSV dump: bin_index, left_endpoint (as the exact unreduced string
    /// `k/2^m`), mass, density (mass times `2^m`), and the number of
    /// changes between successive bits in the bin index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_index,left_endpoint,mass,density,bit_changes\n");
        let m = self.resolution;
        let den = 1u64 << m;
        let scale = den as f64;
        for (k, &mass) in self.mass.iter().enumerate() {
            let changes = if m == 0 {
                0
            } else {
                let v = k as u64;
                (v ^ (v >> 1)).count_ones() - if v >> (m - 1) == 1 { 1 } else { 0 }
            };
            out.push_str(&format!(
                "{k},{k}/{den},{:.17e},{:.17e},{changes}\n",
                mass,
                mass * scale
            ));
        }
        out
    }
}

/// The harmonic measure of the dual walk, which is exactly uniform; kept as
/// a named constructor so the exact reference is explicit at call sites.
pub fn dual_harmonic_exact(resolution: u32) -> DyadicHistogram {
    DyadicHistogram::uniform(resolution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarsening_sums_adjacent_bins() {
        let h = DyadicHistogram::new(2, vec![0.1, 0.2, 0.3, 0.4]);
        let c = h.coarsen(1);
        assert_eq!(c.mass(), &[0.30000000000000004, 0.7]);
        assert_eq!(h.coarsen(0).mass().len(), 1);
    }

    #[test]
    fn uniform_is_its_own_reference() {
        let u = dual_harmonic_exact(4);
        assert_eq!(u.tv_to_uniform(), 0.0);
        assert_eq!(u.mirror_asymmetry(), 0.0);
        assert_eq!(dual_harmonic_exact(1).mass(), &[0.5, 0.5]);
    }

    #[test]
    fn prefix_masses() {
        let h = DyadicHistogram::new(2, vec![0.1, 0.2, 0.3, 0.4]);
        let w: Word = "1".parse().unwrap();
        assert!((h.prefix_mass(&w) - 0.7).abs() < 1e-15);
        let w2: Word = "01".parse().unwrap();
        assert!((h.prefix_mass(&w2) - 0.2).abs() < 1e-15);
        assert!((h.prefix_mass(&Word::empty()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn doubling_pushforward_collects_preimages() {
        let h = DyadicHistogram::new(2, vec![0.1, 0.2, 0.3, 0.4]);
        let p = h.pushforward_doubling();
        assert_eq!(p.resolution(), 1);
        assert!((p.mass()[0] - 0.4).abs() < 1e-15);
        assert!((p.mass()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn csv_left_endpoints_are_unreduced() {
        let h = DyadicHistogram::uniform(2);
        let csv = h.to_csv();
        assert!(csv.contains("\n2,2/4,"));
        let first_data = csv.lines().nth(1).unwrap();
        assert!(first_data.starts_with("0,0/4,"));
        // bit changes of 0b10 (index 2 at resolution 2) = 1
        assert!(csv.lines().nth(3).unwrap().ends_with(",1"));
    }
}
