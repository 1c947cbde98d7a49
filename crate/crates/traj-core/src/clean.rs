//! Trajectory cleaning: consecutive-duplicate collapse, outlier removal, and
//! the length filter that decides dataset membership.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::mercator::mercator_project;
use crate::types::{GpsTrajectory, LonLat, TrajId};
use crate::Result;

/// Cleaning thresholds. Distances are Euclidean in the Web-Mercator plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CleanConfig {
    /// Consecutive points closer than this collapse to the first.
    pub dedup_dist_m: f64,
    /// A point whose displacement to both neighbors exceeds this multiple of
    /// the trajectory's median neighbor displacement is dropped.
    pub outlier_factor: f64,
    pub min_len: usize,
    pub max_len: usize,
}

impl Default for CleanConfig {
    fn default() -> Self {
        Self {
            dedup_dist_m: 5.0,
            outlier_factor: 5.0,
            min_len: 10,
            max_len: 300,
        }
    }
}

impl CleanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dedup_dist_m <= 0.0 || self.outlier_factor <= 0.0 {
            return Err(CoreError::InvalidConfig(
                "clean thresholds must be positive".into(),
            ));
        }
        if self.min_len == 0 || self.min_len > self.max_len {
            return Err(CoreError::InvalidConfig(format!(
                "invalid length window [{}, {}]",
                self.min_len, self.max_len
            )));
        }
        Ok(())
    }
}

/// Why a trajectory was excluded from the dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    TooShort(usize),
    TooLong(usize),
}

/// Rejection is an expected dataset-filter outcome, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum CleanOutcome {
    Kept(GpsTrajectory),
    Rejected(RejectReason),
}

impl CleanOutcome {
    pub fn kept(self) -> Option<GpsTrajectory> {
        match self {
            CleanOutcome::Kept(t) => Some(t),
            CleanOutcome::Rejected(_) => None,
        }
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Cleans one raw point sequence.
///
/// Passes, in order: collapse consecutive near-duplicates, drop isolated
/// outliers (displacement to *both* neighbors above `outlier_factor` times
/// the median neighbor displacement; endpoints exempt), then reject if the
/// surviving length falls outside `[min_len, max_len]`.
pub fn clean_trajectory(id: TrajId, raw: &[LonLat], cfg: &CleanConfig) -> Result<CleanOutcome> {
    cfg.validate()?;
    if raw.is_empty() {
        return Err(CoreError::EmptyDataset);
    }

    let proj: Vec<_> = raw.iter().map(mercator_project).collect();

    // Dedup against the last kept point.
    let mut kept_idx: Vec<usize> = vec![0];
    for i in 1..raw.len() {
        let last = *kept_idx.last().unwrap();
        if proj[last].dist(&proj[i]) >= cfg.dedup_dist_m {
            kept_idx.push(i);
        }
    }

    // Outlier pass over the deduped sequence.
    if kept_idx.len() >= 3 {
        let disps: Vec<f64> = kept_idx
            .windows(2)
            .map(|w| proj[w[0]].dist(&proj[w[1]]))
            .collect();
        let mut sorted = disps.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let threshold = cfg.outlier_factor * median(&sorted);
        let keep: Vec<usize> = kept_idx
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                if *k == 0 || *k == kept_idx.len() - 1 {
                    true
                } else {
                    !(disps[*k - 1] > threshold && disps[*k] > threshold)
                }
            })
            .map(|(_, &i)| i)
            .collect();
        kept_idx = keep;
    }

    let n = kept_idx.len();
    if n < cfg.min_len {
        return Ok(CleanOutcome::Rejected(RejectReason::TooShort(n)));
    }
    if n > cfg.max_len {
        return Ok(CleanOutcome::Rejected(RejectReason::TooLong(n)));
    }
    let points = kept_idx.into_iter().map(|i| raw[i]).collect();
    Ok(CleanOutcome::Kept(GpsTrajectory::new(id, points)))
}
