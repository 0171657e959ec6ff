use crate::dyadic::Word;
use crate::measure::DyadicHistogram;

/// The conditional probability of the leading bit given the rest, computed
/// bin by bin: `g` at bin `I_x` is `mass(I_x) / (mass(I_x) + mass(I_s))`
/// with `I_s` the bin shifted by one half. The entropy is the histogram
/// estimate of `-sum mass * log2 g`, which is also the Hausdorff-dimension
/// estimate for the measure.
#[derive(Clone, Debug)]
pub struct GMeasureProfile {
    resolution: u32,
    g: Vec<f64>,
    entropy: f64,
    flagged: Vec<usize>,
}

impl GMeasureProfile {
    /// Builds the profile from a histogram. Bins whose sibling pair carries
    /// no mass are flagged and excluded from the entropy sum rather than
    /// divided.
    pub fn from_histogram(h: &DyadicHistogram) -> GMeasureProfile {
        assert!(h.resolution() >= 1);
        let mass = h.mass();
        let half = mass.len() / 2;
        let mut g = vec![0.5; mass.len()];
        let mut flagged = Vec::new();
        let mut entropy = 0.0;
        for (j, &m) in mass.iter().enumerate() {
            let sibling = mass[(j + half) % mass.len()];
            let pair = m + sibling;
            if pair <= 0.0 {
                flagged.push(j);
                continue;
            }
            g[j] = m / pair;
            if m > 0.0 {
                entropy -= m * g[j].log2();
            }
        }
        GMeasureProfile { resolution: h.resolution(), g, entropy, flagged }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// g at the bin whose left endpoint is `k/2^m`.
    pub fn g_at_bin(&self, k: usize) -> f64 {
        self.g[k]
    }

    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    pub fn flagged(&self) -> &[usize] {
        &self.flagged
    }

    /// Largest violation of the exact complement identity
    /// `g(x) + g(x + 1/2) = 1`.
    pub fn complement_defect(&self) -> f64 {
        let half = self.g.len() / 2;
        (0..half)
            .map(|j| (self.g[j] + self.g[j + half] - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV dump: a leading `h` record, then bin_index, g, and the discrete
    /// derivative to the next bin.
    pub fn to_csv(&self) -> String {
        let mut out = format!("h,{:.17e}\n", self.entropy);
        out.push_str("bin_index,g,dg\n");
        let n = self.g.len();
        for (j, &g) in self.g.iter().enumerate() {
            let dg = self.g[(j + 1) % n] - g;
            out.push_str(&format!("{j},{g:.17e},{dg:.17e}\n"));
        }
        out
    }
}

/// Quarter-interval masses of a histogram: the joint law of the first two
/// bits.
#[derive(Clone, Copy, Debug)]
pub struct TwoBitStats {
    pub m00: f64,
    pub m01: f64,
    pub m10: f64,
    pub m11: f64,
}

impl TwoBitStats {
    /// How much the equal-bit mass exceeds one half.
    pub fn excess(&self) -> f64 {
        self.m00 + self.m11 - 0.5
    }
}

pub fn two_bit_stats(h: &DyadicHistogram) -> TwoBitStats {
    assert!(h.resolution() >= 2);
    let q = h.coarsen(2);
    let m = q.mass();
    TwoBitStats { m00: m[0], m01: m[1], m10: m[2], m11: m[3] }
}

/// Per-resolution total-variation distance (L1 form) between the histogram
/// and uniform, the quantitative evidence of singularity: it can only grow
/// as the resolution refines.
pub fn singularity_table(
    h: &DyadicHistogram,
    resolutions: impl IntoIterator<Item = u32>,
) -> Vec<(u32, f64)> {
    resolutions
        .into_iter()
        .map(|m| {
            assert!(m <= h.resolution());
            (m, h.coarsen(m).tv_to_uniform())
        })
        .collect()
}

/// Sliding-window frequency of `pattern` among the bit windows of `s`,
/// read most-significant-first. The empty pattern matches everywhere.
pub fn substring_density(s: &Word, pattern: &Word) -> f64 {
    let n = s.depth();
    let l = pattern.depth();
    if l == 0 {
        return 1.0;
    }
    if n < l {
        return 0.0;
    }
    let bits = s.bits();
    let pat = pattern.bits();
    let mut hits = 0usize;
    for window in bits.windows(l) {
        if window == pat {
            hits += 1;
        }
    }
    hits as f64 / (n - l + 1) as f64
}

/// Sliding-window frequency with a batch-means standard error: the windows
/// are split into `batches` contiguous blocks and the spread of the block
/// frequencies estimates the error of the overall mean under the string's
/// short-range correlations.
pub fn substring_density_se(s: &Word, pattern: &Word, batches: usize) -> (f64, f64) {
    let l = pattern.depth();
    let n = s.depth();
    assert!(batches >= 2 && l >= 1 && n > l * (batches + 1));
    let bits = s.bits();
    let pat = pattern.bits();
    let windows = n - l + 1;
    let per = windows / batches;
    let mut means = Vec::with_capacity(batches);
    for b in 0..batches {
        let start = b * per;
        let end = if b + 1 == batches { windows } else { (b + 1) * per };
        let mut hits = 0usize;
        for w in start..end {
            if &bits[w..w + l] == pat {
                hits += 1;
            }
        }
        means.push(hits as f64 / (end - start) as f64);
    }
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>()
        / (batches as f64 - 1.0);
    (mean, (var / batches as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_profile_is_exactly_fair() {
        let u = DyadicHistogram::uniform(8);
        let p = GMeasureProfile::from_histogram(&u);
        assert!(p.g().iter().all(|&g| g == 0.5));
        assert!((p.entropy() - 1.0).abs() < 1e-12);
        assert!(p.flagged().is_empty());
        assert_eq!(p.complement_defect(), 0.0);
    }

    #[test]
    fn complement_identity_holds_by_construction() {
        let mass = vec![0.4, 0.1, 0.2, 0.3];
        let h = DyadicHistogram::new(2, mass);
        let p = GMeasureProfile::from_histogram(&h);
        assert!(p.complement_defect() < 1e-15);
        // g(00-bin) = 0.4 / 0.6
        assert!((p.g_at_bin(0) - 0.4 / 0.6).abs() < 1e-15);
    }

    #[test]
    fn zero_sibling_pairs_are_flagged_not_divided() {
        let mass = vec![0.5, 0.0, 0.5, 0.0];
        let h = DyadicHistogram::new(2, mass);
        let p = GMeasureProfile::from_histogram(&h);
        assert_eq!(p.flagged(), &[1, 3]);
        assert!(p.entropy().is_finite());
    }

    #[test]
    fn two_bit_stats_on_uniform() {
        let stats = two_bit_stats(&DyadicHistogram::uniform(6));
        assert!((stats.m00 - 0.25).abs() < 1e-15);
        assert!(stats.excess().abs() < 1e-15);
    }

    #[test]
    fn tv_identity_with_two_bit_excess() {
        // symmetric two-bit law: TV at resolution 2 (L1 form) equals twice
        // the equal-bit excess
        let mass = vec![0.3, 0.2, 0.2, 0.3];
        let h = DyadicHistogram::new(2, mass);
        let stats = two_bit_stats(&h);
        let table = singularity_table(&h, [2]);
        assert!((table[0].1 - 2.0 * stats.excess().abs()).abs() < 1e-15);
    }

    #[test]
    fn singularity_table_on_uniform_is_zero() {
        let u = DyadicHistogram::uniform(10);
        for (_, tv) in singularity_table(&u, 4..=10) {
            assert_eq!(tv, 0.0);
        }
    }

    #[test]
    fn substring_densities() {
        let s: Word = "0101010101".parse().unwrap();
        assert_eq!(substring_density(&s, &Word::empty()), 1.0);
        assert!((substring_density(&s, &"01".parse().unwrap()) - 5.0 / 9.0).abs() < 1e-15);
        assert!((substring_density(&s, &"11".parse().unwrap()) - 0.0).abs() < 1e-15);
        let (mean, se) = substring_density_se(
            &"01010101010101010101010101010101".parse().unwrap(),
            &"0".parse().unwrap(),
            4,
        );
        assert!((mean - 0.5).abs() < 0.01);
        assert!(se < 0.1);
    }
}
