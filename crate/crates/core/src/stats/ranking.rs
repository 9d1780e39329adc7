use alloc::string::String;
use alloc::vec::Vec;

use super::residuals::ResidualMatrix;
use super::special::chi2_critical;
use crate::error::StatsError;

/// Friedman statistic `12K / (N(N+1)) * (sum R_i^2 - N(N+1)^2 / 4)` from
/// mean ranks `R_i` over `k` measures.
pub fn friedman_statistic(mean_ranks: &[f64], k: usize) -> f64 {
    let n = mean_ranks.len() as f64;
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    12.0 * k as f64 / (n * (n + 1.0)) * (sum_sq - n * (n + 1.0) * (n + 1.0) / 4.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub critical: f64,
    pub df: usize,
    pub significant: bool,
}

/// Friedman test on integer ranks, one `Vec` per measure with one rank per
/// database, against chi-squared with `N - 1` degrees of freedom.
pub fn friedman_test(
    rank_columns: &[Vec<usize>],
    alpha: f64,
) -> Result<(Vec<f64>, FriedmanResult), StatsError> {
    let k = rank_columns.len();
    if k < 2 {
        return Err(StatsError::Invalid(alloc::format!(
            "Friedman test needs K >= 2 measures, got {k}"
        )));
    }
    let n = rank_columns[0].len();
    if n < 3 {
        return Err(StatsError::TooFewDatabases { need: 3, got: n });
    }
    if rank_columns.iter().any(|c| c.len() != n) {
        return Err(StatsError::Shape("rank columns differ in length".into()));
    }
    let mean_ranks: Vec<f64> = (0..n)
        .map(|i| rank_columns.iter().map(|c| c[i] as f64).sum::<f64>() / k as f64)
        .collect();
    let statistic = friedman_statistic(&mean_ranks, k);
    let df = n - 1;
    let critical = chi2_critical(alpha, df as f64);
    Ok((
        mean_ranks,
        FriedmanResult {
            statistic,
            critical,
            df,
            significant: statistic > critical,
        },
    ))
}

/// Nemenyi critical difference `q * sqrt(N(N+1) / (6K))`.
pub fn critical_difference(q: f64, n: usize, k: usize) -> f64 {
    let n = n as f64;
    q * libm::sqrt(n * (n + 1.0) / (6.0 * k as f64))
}

/// Critical values of the two-tailed Nemenyi test (studentized range over
/// `sqrt(2)`) for 2..=10 compared items at `alpha` 0.05 or 0.10.
pub fn studentized_range_q(n: usize, alpha: f64) -> Option<f64> {
    const Q05: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];
    const Q10: [f64; 9] = [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920];
    let table = if libm::fabs(alpha - 0.05) < 1e-12 {
        &Q05
    } else if libm::fabs(alpha - 0.10) < 1e-12 {
        &Q10
    } else {
        return None;
    };
    n.checked_sub(2).and_then(|i| table.get(i)).copied()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankingResult {
    pub databases: Vec<String>,
    pub mean_ranks: Vec<f64>,
    pub friedman: FriedmanResult,
    pub critical_difference: f64,
    pub q: f64,
    pub k: usize,
    /// Database indices per group, each sorted by mean rank; groups are
    /// listed left to right.
    pub groups: Vec<Vec<usize>>,
    /// Set when the Friedman test was not significant and a single
    /// all-inclusive group was returned.
    pub not_significant: bool,
}

impl RankingResult {
    /// Database indices by ascending mean rank (ties by name).
    pub fn order(&self) -> Vec<usize> {
        order_by_rank(&self.databases, &self.mean_ranks)
    }
}

fn order_by_rank(databases: &[String], mean_ranks: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..mean_ranks.len()).collect();
    order.sort_by(|&a, &b| {
        mean_ranks[a]
            .total_cmp(&mean_ranks[b])
            .then_with(|| databases[a].cmp(&databases[b]))
    });
    order
}

/// Maximal runs of databases (sorted by mean rank) whose rank range stays
/// below the critical difference. Every database lands in at least one
/// group; a non-significant Friedman test yields one group of all.
pub fn nemenyi_groups(
    databases: &[String],
    mean_ranks: &[f64],
    k: usize,
    q: f64,
    friedman: FriedmanResult,
) -> RankingResult {
    let n = mean_ranks.len();
    let cd = critical_difference(q, n, k);
    let order = order_by_rank(databases, mean_ranks);
    let groups = if !friedman.significant {
        alloc::vec![order.clone()]
    } else {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut last_end = None;
        for start in 0..n {
            let mut end = start;
            while end + 1 < n && mean_ranks[order[end + 1]] - mean_ranks[order[start]] < cd {
                end += 1;
            }
            if last_end.is_none_or(|e| end > e) {
                groups.push(order[start..=end].to_vec());
                last_end = Some(end);
            }
        }
        groups
    };
    RankingResult {
        databases: databases.to_vec(),
        mean_ranks: mean_ranks.to_vec(),
        friedman,
        critical_difference: cd,
        q,
        k,
        groups,
        not_significant: !friedman.significant,
    }
}

/// Friedman + Nemenyi over the `selected` columns of `rm`.
pub fn rank_databases(
    rm: &ResidualMatrix,
    selected: &[usize],
    alpha: f64,
    q: f64,
) -> Result<RankingResult, StatsError> {
    let ranks: Vec<Vec<usize>> = selected
        .iter()
        .map(|&j| rm.columns[j].ranks.clone())
        .collect();
    let (mean_ranks, friedman) = friedman_test(&ranks, alpha)?;
    Ok(nemenyi_groups(&rm.databases, &mean_ranks, ranks.len(), q, friedman))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("db{i}")).collect()
    }

    fn significant() -> FriedmanResult {
        FriedmanResult { statistic: 100.0, critical: 1.0, df: 1, significant: true }
    }

    #[test]
    fn concordant_three_by_two() {
        let (mr, f) = friedman_test(&[vec![1, 2, 3], vec![1, 2, 3]], 0.1).unwrap();
        assert_eq!(mr, [1.0, 2.0, 3.0]);
        assert_eq!(f.statistic, 4.0);
        assert!((f.critical - 4.605170185988092).abs() < 1e-9);
        assert!(!f.significant);
    }

    #[test]
    fn null_configuration() {
        assert_eq!(friedman_statistic(&[3.5; 6], 13), 0.0);
    }

    #[test]
    fn concordant_six_by_thirteen() {
        let cols = vec![vec![1, 2, 3, 4, 5, 6]; 13];
        let (_, f) = friedman_test(&cols, 0.1).unwrap();
        assert!((f.statistic - 65.0).abs() < 1e-12);
        assert!(f.significant);
    }

    #[test]
    fn cd_for_six_databases() {
        let cd = critical_difference(2.59, 6, 13);
        assert!((cd - 2.59 * libm::sqrt(42.0 / 78.0)).abs() < 1e-15);
        assert!((cd - 1.9006).abs() < 1e-4);
    }

    #[test]
    fn q_table_matches_paper_value() {
        assert!((studentized_range_q(6, 0.1).unwrap() - 2.59).abs() < 0.001);
        assert_eq!(studentized_range_q(11, 0.1), None);
        assert_eq!(studentized_range_q(6, 0.2), None);
    }

    #[test]
    fn equal_ranks_form_one_group() {
        let r = nemenyi_groups(&names(4), &[2.5; 4], 10, 2.59, significant());
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.groups[0].len(), 4);
    }

    #[test]
    fn wide_gaps_give_singletons() {
        // k chosen so that CD is close to 1.9
        let r = nemenyi_groups(&names(3), &[1.0, 3.5, 6.0], 1, 1.9 / libm::sqrt(2.0), significant());
        assert!((r.critical_difference - 1.9).abs() < 1e-12);
        assert_eq!(r.groups, [vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn overlapping_groups() {
        let r = nemenyi_groups(&names(4), &[1.0, 2.0, 3.0, 4.5], 6, 2.0, significant());
        // CD = 2 * sqrt(20 / 36) ~ 1.49; 4.5 - 3.0 is just above it
        assert_eq!(r.groups, [vec![0, 1], vec![1, 2], vec![3]]);
    }

    #[test]
    fn insignificant_friedman_yields_one_flagged_group() {
        let f = FriedmanResult { statistic: 0.1, critical: 5.0, df: 3, significant: false };
        let r = nemenyi_groups(&names(4), &[1.0, 2.0, 3.0, 4.0], 2, 2.59, f);
        assert!(r.not_significant);
        assert_eq!(r.groups, [vec![0, 1, 2, 3]]);
    }
}
