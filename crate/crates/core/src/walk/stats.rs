use statrs::distribution::{ChiSquared, ContinuousCDF};

/// A mergeable mean/variance accumulator (Welford moments). Used over
/// batch means, so `standard_error` estimates the error of the grand mean
/// under short-range correlation. Merging is associative and commutative
/// up to floating-point rounding; estimators merge partial results in
/// walker order so outputs stay deterministic.
#[derive(Clone, Copy, Debug, Default)]
pub struct Estimate {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Estimate {
    pub fn new() -> Self {
        Estimate::default()
    }

    pub fn from_samples(samples: impl IntoIterator<Item = f64>) -> Self {
        let mut e = Estimate::new();
        for s in samples {
            e.push(s);
        }
        e
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Estimate) -> Estimate {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / n as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64) * (other.count as f64) / n as f64;
        Estimate { count: n, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn value(&self) -> f64 {
        self.mean
    }

    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        self.m2 / (self.count - 1) as f64
    }

    /// Standard error of the mean of the pushed samples.
    pub fn standard_error(&self) -> f64 {
        (self.sample_variance() / self.count as f64).sqrt()
    }
}

/// Two-sample Kolmogorov–Smirnov test with the asymptotic p-value.
#[derive(Clone, Copy, Debug)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    assert!(!a.is_empty() && !b.is_empty());
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        let gap = (i as f64 / xs.len() as f64 - j as f64 / ys.len() as f64).abs();
        d = d.max(gap);
    }
    let n = (xs.len() as f64 * ys.len() as f64) / (xs.len() + ys.len()) as f64;
    let lambda = d * n.sqrt();
    let mut p = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        p += 2.0 * (-1.0f64).powi(k as i32 - 1) * (-2.0 * k * k * lambda * lambda).exp();
    }
    KsTest { statistic: d, p_value: p.clamp(0.0, 1.0) }
}

/// Pearson chi-square test of uniformity over equiprobable bins.
#[derive(Clone, Copy, Debug)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees: u64,
    pub critical: f64,
    pub alpha: f64,
    pub pass: bool,
}

pub fn chi_square_uniform(counts: &[u64], alpha: f64) -> ChiSquareTest {
    assert!(counts.len() >= 2);
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let degrees = (counts.len() - 1) as u64;
    let dist = ChiSquared::new(degrees as f64).expect("valid dof");
    let critical = dist.inverse_cdf(1.0 - alpha);
    ChiSquareTest { statistic, degrees, critical, alpha, pass: statistic <= critical }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_is_associative_and_commutative() {
        let a = Estimate::from_samples([1.0, 2.0, 3.5]);
        let b = Estimate::from_samples([-1.0, 0.25]);
        let c = Estimate::from_samples([10.0, 11.0, 12.0, 9.5]);
        let abc1 = a.merge(&b).merge(&c);
        let abc2 = a.merge(&b.merge(&c));
        let abc3 = c.merge(&b).merge(&a);
        for pair in [(abc1, abc2), (abc1, abc3)] {
            assert_eq!(pair.0.count(), pair.1.count());
            assert!((pair.0.value() - pair.1.value()).abs() < 1e-12);
            assert!((pair.0.standard_error() - pair.1.standard_error()).abs() < 1e-12);
        }
        let direct = Estimate::from_samples([1.0, 2.0, 3.5, -1.0, 0.25]);
        let merged = a.merge(&b);
        assert!((direct.value() - merged.value()).abs() < 1e-14);
        assert!((direct.sample_variance() - merged.sample_variance()).abs() < 1e-12);
    }

    #[test]
    fn ks_detects_shifted_samples() {
        let a: Vec<f64> = (0..2000).map(|i| i as f64 / 2000.0).collect();
        let b: Vec<f64> = (0..2000).map(|i| i as f64 / 2000.0 + 0.2).collect();
        let same = ks_two_sample(&a, &a);
        assert!(same.p_value > 0.99);
        let diff = ks_two_sample(&a, &b);
        assert!(diff.statistic > 0.15);
        assert!(diff.p_value < 1e-6);
    }

    #[test]
    fn chi_square_flags_point_mass() {
        let uniform = vec![100u64; 64];
        let t = chi_square_uniform(&uniform, 0.001);
        assert!(t.pass);
        let mut skew = vec![100u64; 64];
        skew[0] = 500;
        assert!(!chi_square_uniform(&skew, 0.001).pass);
    }
}
