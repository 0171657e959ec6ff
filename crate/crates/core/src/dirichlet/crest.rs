use crate::dirichlet::band::{band_residual, solve_band};
use crate::dyadic::Word;
use crate::{Error, Result};

/// The solved harmonic field on the wrapped graph truncated at depth `n`:
/// value 1 at the root, 0 on the cut level, and the neighbour-mean property
/// (with edge multiplicities) everywhere between. The value at a vertex is
/// the probability that the walk started there reaches the root before the
/// cut.
#[derive(Clone, Debug)]
pub struct CrestField {
    levels: Vec<Vec<f64>>,
    tol: f64,
    iterations: u64,
    residual: f64,
}

impl CrestField {
    /// The truncation depth `n`.
    pub fn depth_bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// The whole row at `depth`.
    pub fn level(&self, depth: usize) -> &[f64] {
        &self.levels[depth]
    }

    /// Value at the vertex with the given depth and label value.
    pub fn value(&self, depth: usize, label: u64) -> f64 {
        self.levels[depth][label as usize]
    }

    pub fn value_at(&self, w: &Word) -> f64 {
        self.value(w.depth(), w.value_u64())
    }

    /// The row at `depth` rescaled to sum to 1.
    pub fn normalized_level(&self, depth: usize) -> Result<Vec<f64>> {
        let row = &self.levels[depth];
        let sum: f64 = row.iter().sum();
        if sum <= 0.0 {
            return Err(Error::DegenerateLevel(format!(
                "level {depth} sums to {sum}; cannot normalise"
            )));
        }
        Ok(row.iter().map(|v| v / sum).collect())
    }

    /// CSV dump (depth, label, value, normalized_value) for depths up to
    /// `max_depth`.
    pub fn to_csv(&self, max_depth: usize) -> Result<String> {
        let mut out = String::from("depth,label,value,normalized_value\n");
        for depth in 0..=max_depth.min(self.depth_bound()) {
            let normalized = self.normalized_level(depth)?;
            for (v, (&value, &norm)) in
                self.levels[depth].iter().zip(normalized.iter()).enumerate()
            {
                let label = if depth == 0 {
                    "~".to_string()
                } else {
                    Word::from_value(depth, v as u64).to_string()
                };
                out.push_str(&format!("{depth},{label},{value:.17e},{norm:.17e}\n"));
            }
        }
        Ok(out)
    }
}

/// Solves the crest field at truncation depth `n` to residual `tol`.
pub fn solve_crest(n: usize, tol: f64) -> Result<CrestField> {
    let fields = solve_crest_sequence(n, tol)?;
    Ok(fields.into_iter().next_back().expect("nonempty sequence"))
}

/// Solves the crest fields for every truncation depth 2..=`max_n`, warm
/// starting each solve from the previous one. The whole sequence is what
/// the extrapolation consumes, so solving it incrementally costs little
/// more than the deepest solve alone.
pub fn solve_crest_sequence(max_n: usize, tol: f64) -> Result<Vec<CrestField>> {
    if !(2..=22).contains(&max_n) {
        return Err(Error::Domain(format!(
            "truncation depth must be between 2 and 22, got {max_n}"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let mut fields: Vec<CrestField> = Vec::with_capacity(max_n - 1);
    let mut levels: Vec<Vec<f64>> = vec![vec![1.0], vec![0.0, 0.0], vec![0.0; 4]];
    for n in 2..=max_n {
        if n > 2 {
            // previous cut level becomes interior, rising from 0
            levels.push(vec![0.0; 1 << n]);
        }
        let stats = solve_band(&mut levels, 0, tol, 500_000)?;
        for row in levels.iter_mut() {
            for v in row.iter_mut() {
                *v = v.clamp(0.0, 1.0);
            }
        }
        fields.push(CrestField {
            levels: levels.clone(),
            tol,
            iterations: stats.iterations,
            residual: band_residual(&levels),
        });
    }
    Ok(fields)
}

/// Least-squares fit of `s_n = limit - b * 2^-n` over the trailing
/// `window` terms of a series indexed by `n`.
#[derive(Clone, Debug)]
pub struct Extrapolation {
    pub limit: f64,
    pub coefficient: f64,
    /// RMS misfit of the model over the window.
    pub rms_residual: f64,
    /// Present when the trailing terms are not monotone, which the
    /// geometric model assumes.
    pub warning: Option<String>,
    pub window: usize,
}

/// Fits the geometric-approach model to the tail of `series` (pairs of
/// truncation depth and value) and reports the inferred limit together
/// with the fit residual; the residual is part of the result because the
/// geometric rate is observed, not proven.
pub fn extrapolate_ratio2(series: &[(usize, f64)], window: usize) -> Result<Extrapolation> {
    if series.len() < 4 {
        return Err(Error::Domain(format!(
            "extrapolation needs at least 4 terms, got {}",
            series.len()
        )));
    }
    let window = window.clamp(4, series.len());
    let tail = &series[series.len() - window..];

    let mut warning = None;
    let increasing = tail.windows(2).all(|w| w[1].1 >= w[0].1);
    let decreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    if !increasing && !decreasing {
        warning = Some("trailing terms are not monotone; geometric model is suspect".into());
    }

    let m = tail.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(n, s) in tail {
        let x = 0.5f64.powi(n as i32);
        sx += x;
        sy += s;
        sxx += x * x;
        sxy += x * s;
    }
    let det = m * sxx - sx * sx;
    if det.abs() < f64::MIN_POSITIVE * 16.0 {
        return Err(Error::Domain("degenerate extrapolation design".into()));
    }
    let slope = (m * sxy - sx * sy) / det;
    let limit = (sy - slope * sx) / m;
    let mut ss = 0.0;
    for &(n, s) in tail {
        let x = 0.5f64.powi(n as i32);
        let fit = limit + slope * x;
        ss += (fit - s) * (fit - s);
    }
    Ok(Extrapolation {
        limit,
        coefficient: -slope,
        rms_residual: (ss / m).sqrt(),
        warning,
        window,
    })
}

/// The little algebra tying the crest probability at a depth-1 vertex of
/// even label to the fraction of time spent at odd labels: both sides
/// express the per-step probability of never returning to the current
/// level. The map is a self-inverse rational involution.
pub fn esc_to_p3(esc0: f64) -> f64 {
    3.0 * (1.0 - esc0) / (3.0 + esc0)
}

/// Inverse of [`esc_to_p3`]; the same rational map.
pub fn p3_to_esc(p3: f64) -> f64 {
    3.0 * (1.0 - p3) / (3.0 + p3)
}

/// Everything the crest pipeline produces: the solved fields, the
/// per-level-normalised series at depths 1 and 2, and their extrapolated
/// limits.
#[derive(Clone, Debug)]
pub struct CrestSummary {
    pub fields: Vec<CrestField>,
    /// Extrapolated limits of the normalised depth-1 values (labels 0, 1).
    pub esc0: Extrapolation,
    pub esc1: Extrapolation,
    /// Extrapolated limits of the normalised depth-2 values (labels 0..4).
    pub level2: Vec<Extrapolation>,
    /// Extrapolated limit of the raw (unnormalised) depth-1 sum, which
    /// tends to 1 only in the limit.
    pub level1_raw_sum: Extrapolation,
    pub window: usize,
}

impl CrestSummary {
    pub fn implied_p3(&self) -> f64 {
        esc_to_p3(self.esc0.limit)
    }
}

/// Runs solve → per-level normalise → extrapolate for truncation depths
/// 2..=`max_n`, fitting the trailing `window` terms.
pub fn crest_pipeline(max_n: usize, tol: f64, window: usize) -> Result<CrestSummary> {
    let fields = solve_crest_sequence(max_n, tol)?;
    let series_norm = |depth: usize, label: usize| -> Result<Vec<(usize, f64)>> {
        fields
            .iter()
            .filter(|f| f.depth_bound() > depth)
            .map(|f| Ok((f.depth_bound(), f.normalized_level(depth)?[label])))
            .collect()
    };
    let esc0 = extrapolate_ratio2(&series_norm(1, 0)?, window)?;
    let esc1 = extrapolate_ratio2(&series_norm(1, 1)?, window)?;
    let mut level2 = Vec::with_capacity(4);
    for label in 0..4 {
        level2.push(extrapolate_ratio2(&series_norm(2, label)?, window)?);
    }
    let raw_sum: Vec<(usize, f64)> = fields
        .iter()
        .map(|f| (f.depth_bound(), f.level(1).iter().sum()))
        .collect();
    let level1_raw_sum = extrapolate_ratio2(&raw_sum, window)?;
    Ok(CrestSummary { fields, esc0, esc1, level2, level1_raw_sum, window })
}
