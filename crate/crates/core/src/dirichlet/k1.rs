use crate::dirichlet::band::solve_band;
use crate::{Error, Result};

/// The law of twice the one-level horizontal increment: a probability mass
/// function on the signed integer displacements a walk can accumulate
/// between leaving consecutive levels, measured in half steps of the level
/// it leaves. Solved on a band of the wrapped graph; `truncation_l1` is
/// the L1 distance to the law solved with the bottom of the band one level
/// shallower, our surrogate for the (unreported) truncation error.
#[derive(Clone, Debug)]
pub struct IncrementLaw {
    masses: Vec<(i64, f64)>,
    pub inner: usize,
    pub target: usize,
    pub outer: usize,
    pub truncation_l1: f64,
    pub symmetrized: bool,
}

impl IncrementLaw {
    /// Mass points as (displacement, mass), ordered by displacement.
    pub fn masses(&self) -> &[(i64, f64)] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().map(|&(_, m)| m).sum()
    }

    pub fn mass_at(&self, z: i64) -> f64 {
        self.masses
            .iter()
            .find(|&&(d, _)| d == z)
            .map(|&(_, m)| m)
            .unwrap_or(0.0)
    }

    /// Mean absolute displacement of the half-step law.
    pub fn mean_abs(&self) -> f64 {
        self.masses.iter().map(|&(z, m)| (z.abs() as f64) * m).sum()
    }

    /// Averages the law with its reflection, enforcing the exact left/right
    /// symmetry the true law has and removing solver asymmetry noise. The
    /// displacement window is symmetric except for its closing point, which
    /// is its own mirror modulo the wrap.
    pub fn symmetrized(&self) -> IncrementLaw {
        let wrap = self.masses.len() as i64;
        let mut out = self.clone();
        for i in 0..out.masses.len() {
            let (z, _) = out.masses[i];
            let mirror = if z == wrap / 2 { z } else { -z };
            let m_mirror = self.mass_at(mirror);
            out.masses[i].1 = 0.5 * (self.masses[i].1 + m_mirror);
        }
        out.symmetrized = true;
        out
    }

    /// Largest absolute asymmetry between mirror displacements.
    pub fn asymmetry(&self) -> f64 {
        let wrap = self.masses.len() as i64;
        self.masses
            .iter()
            .filter(|&&(z, _)| z != wrap / 2)
            .map(|&(z, m)| (m - self.mass_at(-z)).abs())
            .fold(0.0, f64::max)
    }

    /// CSV dump: displacement_num (of the half-step law), mass.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("displacement_num,mass\n");
        for &(z, m) in &self.masses {
            out.push_str(&format!("{z},{m:.17e}\n"));
        }
        out
    }
}

/// Solves for the law of the one-level horizontal increment on the band of
/// the wrapped graph between depths `inner` and `outer`: the harmonic
/// function that is 1 at the all-zeros vertex of depth `inner`, 0 at the
/// other depth-`inner` vertices and at depth `outer`, read off on the row
/// at depth `target = inner + 1` and normalised to total mass 1. The
/// displacement of a row vertex is its signed wrapped offset from the
/// column of the distinguished vertex, in half steps.
pub fn k1_law(inner: usize, target: usize, outer: usize, tol: f64) -> Result<IncrementLaw> {
    if !(inner < target && target < outer) {
        return Err(Error::Domain(format!(
            "need inner < target < outer, got {inner}, {target}, {outer}"
        )));
    }
    if target != inner + 1 {
        return Err(Error::Domain(
            "the increment law reads the row one level below the inner boundary".into(),
        ));
    }
    if outer > 24 {
        return Err(Error::Domain("outer depth beyond 24 is not materialisable".into()));
    }
    let row_with_outer = |outer: usize| -> Result<Vec<f64>> {
        let mut levels: Vec<Vec<f64>> = (inner..=outer).map(|d| vec![0.0; 1 << d]).collect();
        levels[0][0] = 1.0;
        solve_band(&mut levels, inner, tol, 500_000)?;
        Ok(levels[target - inner].clone())
    };
    let row = row_with_outer(outer)?;
    let shallower = row_with_outer(outer - 1)?;

    let to_law = |row: &[f64]| -> Vec<(i64, f64)> {
        let width = row.len() as i64;
        let total: f64 = row.iter().sum();
        let mut masses: Vec<(i64, f64)> = row
            .iter()
            .enumerate()
            .map(|(v, &h)| {
                let v = v as i64;
                let z = if v <= width / 2 { v } else { v - width };
                (z, h / total)
            })
            .collect();
        masses.sort_by_key(|&(z, _)| z);
        masses
    };
    let masses = to_law(&row);
    let masses_shallow = to_law(&shallower);
    let truncation_l1: f64 = masses
        .iter()
        .zip(masses_shallow.iter())
        .map(|(&(_, a), &(_, b))| (a - b).abs())
        .sum();

    Ok(IncrementLaw { masses, inner, target, outer, truncation_l1, symmetrized: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_law() -> IncrementLaw {
        k1_law(3, 4, 9, 1e-12).unwrap()
    }

    #[test]
    fn law_is_normalised() {
        let law = small_law();
        assert!((law.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(law.masses().len(), 16);
        assert!(law.masses().iter().all(|&(_, m)| m >= 0.0));
    }

    #[test]
    fn zero_displacement_is_the_largest_atom() {
        let law = small_law();
        let m0 = law.mass_at(0);
        for &(z, m) in law.masses() {
            if z != 0 {
                assert!(m0 > m, "mass at 0 not dominant: {m} at {z}");
            }
        }
    }

    #[test]
    fn near_symmetric_and_exactly_symmetric_after_symmetrization() {
        let law = small_law();
        assert!(law.asymmetry() < 1e-9, "asymmetry {}", law.asymmetry());
        let sym = law.symmetrized();
        assert!(sym.asymmetry() == 0.0);
        assert!((sym.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_surrogate_is_small_and_positive() {
        let law = small_law();
        assert!(law.truncation_l1 > 0.0);
        assert!(law.truncation_l1 < 1e-2);
    }

    #[test]
    fn rejects_bad_band() {
        assert!(k1_law(6, 8, 19, 1e-10).is_err());
        assert!(k1_law(6, 7, 7, 1e-10).is_err());
    }

    #[test]
    fn csv_schema() {
        let csv = small_law().to_csv();
        assert!(csv.starts_with("displacement_num,mass\n"));
        assert_eq!(csv.lines().count(), 17);
    }
}
