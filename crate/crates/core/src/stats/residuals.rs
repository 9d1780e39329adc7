use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::special::t_critical_two_tailed;
use super::MeasureMatrix;
use crate::error::StatsError;

/// Externally studentized residuals of one fully observed column: each
/// value against the mean and corrected deviation (divisor `n - 2`) of the
/// remaining `n - 1` values, scaled by `sqrt(1 - 1/n)`.
pub fn column_residuals(values: &[f64]) -> Result<Vec<f64>, StatsError> {
    let n = values.len();
    if n < 3 {
        return Err(StatsError::TooFewDatabases { need: 3, got: n });
    }
    let nf = n as f64;
    let scale = libm::sqrt(1.0 - 1.0 / nf);
    let mut out = Vec::with_capacity(n);
    for (i, &x) in values.iter().enumerate() {
        let others = values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &v)| v);
        let mean = others.clone().sum::<f64>() / (nf - 1.0);
        let ss: f64 = others.map(|v| (v - mean) * (v - mean)).sum();
        let sd = libm::sqrt(ss / (nf - 2.0));
        if !(sd > 0.0) {
            return Err(StatsError::ZeroDeviation(String::new()));
        }
        out.push((x - mean) / (sd * scale));
    }
    Ok(out)
}

/// Residuals, consistency ranks and inconsistency flags for one measure.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualColumn {
    pub measure: String,
    pub residuals: Vec<Option<f64>>,
    /// 1 for the smallest `|residual|`; a missing cell ranks last.
    pub ranks: Vec<usize>,
    /// `|residual|` above the two-tailed t critical value.
    pub flags: Vec<bool>,
    pub critical: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualMatrix {
    pub databases: Vec<String>,
    pub columns: Vec<ResidualColumn>,
    /// Measures rejected before ranking, with the reason.
    pub dropped: Vec<(String, String)>,
}

impl ResidualMatrix {
    pub fn n_databases(&self) -> usize {
        self.databases.len()
    }

    pub fn column(&self, measure: &str) -> Option<&ResidualColumn> {
        self.columns.iter().find(|c| c.measure == measure)
    }
}

fn rank_column(databases: &[String], residuals: &[Option<f64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..residuals.len()).collect();
    // ties fall back to database names so ranks do not depend on row order
    order.sort_by(|&a, &b| {
        let key = |i: usize| residuals[i].map(libm::fabs);
        match (key(a), key(b)) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
        .then_with(|| databases[a].cmp(&databases[b]))
        .then(a.cmp(&b))
    });
    let mut ranks = alloc::vec![0; residuals.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

/// Residual analysis of every column at significance level `alpha`.
/// Columns with more than one missing value or a zero leave-one-out
/// deviation are dropped and listed in `dropped`.
pub fn studentized_residuals(
    m: &MeasureMatrix,
    alpha: f64,
) -> Result<ResidualMatrix, StatsError> {
    let n = m.n_databases();
    if n < 4 {
        return Err(StatsError::TooFewDatabases { need: 4, got: n });
    }
    let mut columns = Vec::new();
    let mut dropped = Vec::new();
    for (j, name) in m.measures.iter().enumerate() {
        let cells = m.column(j);
        let present: Vec<f64> = cells.iter().flatten().copied().collect();
        if present.len() + 1 < n {
            dropped.push((name.clone(), StatsError::TooManyMissing(name.clone()).to_string()));
            continue;
        }
        let res = match column_residuals(&present) {
            Ok(r) => r,
            Err(_) => {
                dropped.push((name.clone(), StatsError::ZeroDeviation(name.clone()).to_string()));
                continue;
            }
        };
        let mut it = res.into_iter();
        let residuals: Vec<Option<f64>> = cells.iter().map(|c| c.and_then(|_| it.next())).collect();
        let critical = t_critical_two_tailed(alpha, (present.len() - 2) as f64);
        let flags = residuals
            .iter()
            .map(|r| r.is_some_and(|x| libm::fabs(x) > critical))
            .collect();
        columns.push(ResidualColumn {
            measure: name.clone(),
            ranks: rank_column(&m.databases, &residuals),
            residuals,
            flags,
            critical,
        });
    }
    if columns.is_empty() {
        return Err(StatsError::NoColumns);
    }
    Ok(ResidualMatrix {
        databases: m.databases.clone(),
        columns,
        dropped,
    })
}
