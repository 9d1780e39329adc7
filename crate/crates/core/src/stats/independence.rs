//! Greedy screening for pairwise independent measures.

use alloc::vec;
use alloc::vec::Vec;

use super::correlation::{pearson, spearman};
use super::residuals::ResidualMatrix;
use super::special::normal_critical_two_tailed;
use crate::error::StatsError;

/// Adjusted Fisher transformation `sqrt(n - 3) / 2 * ln((1 + r) / (1 - r))`.
pub fn fisher_z(r: f64, n: usize) -> Result<f64, StatsError> {
    if n < 4 {
        return Err(StatsError::Invalid(alloc::format!(
            "Fisher transformation needs n >= 4, got {n}"
        )));
    }
    if !(libm::fabs(r) < 1.0) {
        return Err(StatsError::PerfectlyDependent);
    }
    Ok(libm::sqrt((n - 3) as f64) / 2.0 * libm::log((1.0 + r) / (1.0 - r)))
}

/// Outcome of the screening; indices refer to `ResidualMatrix::columns`.
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub selected: Vec<usize>,
    /// Removed columns in removal order.
    pub removed: Vec<usize>,
    /// `|z|` threshold used for both correlation tests.
    pub z_critical: f64,
}

/// Largest `|z|` of the residual (Pearson) and rank (Spearman) correlations
/// of two columns over their jointly present rows; infinite for `|r| = 1`,
/// zero when undefined.
fn pair_z(rm: &ResidualMatrix, a: usize, b: usize) -> f64 {
    let (ca, cb) = (&rm.columns[a], &rm.columns[b]);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (x, y) in ca.residuals.iter().zip(&cb.residuals) {
        if let (Some(x), Some(y)) = (x, y) {
            xs.push(*x);
            ys.push(*y);
        }
    }
    let n = xs.len();
    if n < 4 {
        return 0.0;
    }
    let abs_x: Vec<f64> = xs.iter().map(|v| libm::fabs(*v)).collect();
    let abs_y: Vec<f64> = ys.iter().map(|v| libm::fabs(*v)).collect();
    [pearson(&xs, &ys), spearman(&abs_x, &abs_y)]
        .into_iter()
        .flatten()
        .map(|r| match fisher_z(r, n) {
            Ok(z) => libm::fabs(z),
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

/// Removes measures until no pair is dependent at level `alpha`. Each round
/// drops the measure in the most dependent pairs; ties go to the larger
/// summed `|z|`, then to the later column.
pub fn screen_independent(rm: &ResidualMatrix, alpha: f64) -> Selection {
    let m = rm.columns.len();
    let z_critical = normal_critical_two_tailed(alpha);
    let mut z = vec![vec![0.0f64; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let v = pair_z(rm, a, b);
            z[a][b] = v;
            z[b][a] = v;
        }
    }
    let mut alive = vec![true; m];
    let mut removed = Vec::new();
    loop {
        let mut worst: Option<(usize, usize, f64)> = None;
        for a in (0..m).filter(|&a| alive[a]) {
            let (mut count, mut sum) = (0usize, 0.0f64);
            for b in (0..m).filter(|&b| b != a && alive[b]) {
                if z[a][b] >= z_critical {
                    count += 1;
                    sum += z[a][b];
                }
            }
            if count == 0 {
                continue;
            }
            let better = match worst {
                None => true,
                Some((_, c, s)) => count > c || (count == c && sum >= s),
            };
            if better {
                worst = Some((a, count, sum));
            }
        }
        match worst {
            Some((a, _, _)) => {
                alive[a] = false;
                removed.push(a);
            }
            None => break,
        }
    }
    Selection {
        selected: (0..m).filter(|&a| alive[a]).collect(),
        removed,
        z_critical,
    }
}

/// [`screen_independent`], failing when fewer than two measures survive.
pub fn select_independent_measures(
    rm: &ResidualMatrix,
    alpha: f64,
) -> Result<Selection, StatsError> {
    if rm.columns.len() < 2 {
        return Err(StatsError::Redundant(rm.columns.len()));
    }
    let sel = screen_independent(rm, alpha);
    if sel.selected.len() < 2 {
        return Err(StatsError::Redundant(sel.selected.len()));
    }
    Ok(sel)
}
