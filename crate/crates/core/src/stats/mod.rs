//! Cross-database statistics: studentized residuals, independence screening,
//! Friedman test and Nemenyi critical-difference groups.

pub mod correlation;
pub mod independence;
pub mod ranking;
pub mod residuals;
pub mod special;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::StatsError;

pub use independence::{fisher_z, screen_independent, select_independent_measures, Selection};
pub use ranking::{
    critical_difference, friedman_statistic, friedman_test, nemenyi_groups, rank_databases,
    studentized_range_q, FriedmanResult, RankingResult,
};
pub use residuals::{column_residuals, studentized_residuals, ResidualColumn, ResidualMatrix};

/// Databases (rows) by measures (columns); `None` marks a missing cell.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureMatrix {
    pub databases: Vec<String>,
    pub measures: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl MeasureMatrix {
    pub fn new(
        databases: Vec<String>,
        measures: Vec<String>,
        values: Vec<Vec<Option<f64>>>,
    ) -> Result<Self, StatsError> {
        if values.len() != databases.len() {
            return Err(StatsError::Shape(format!(
                "{} rows for {} databases",
                values.len(),
                databases.len()
            )));
        }
        if let Some((i, row)) = values
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != measures.len())
        {
            return Err(StatsError::Shape(format!(
                "row {i} has {} values for {} measures",
                row.len(),
                measures.len()
            )));
        }
        Ok(MeasureMatrix {
            databases,
            measures,
            values,
        })
    }

    /// Convenience constructor for fully observed matrices.
    pub fn from_dense(
        databases: Vec<String>,
        measures: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, StatsError> {
        let values = values
            .into_iter()
            .map(|r| r.into_iter().map(Some).collect())
            .collect();
        Self::new(databases, measures, values)
    }

    pub fn n_databases(&self) -> usize {
        self.databases.len()
    }

    pub fn n_measures(&self) -> usize {
        self.measures.len()
    }

    pub fn column(&self, j: usize) -> Vec<Option<f64>> {
        self.values.iter().map(|r| r[j]).collect()
    }
}
