//! Per-point feature extraction: normalized Mercator coordinates plus
//! distance and bearing to the previous and next point.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::mercator::{mercator_project, MeterXY};
use crate::types::GpsTrajectory;
use crate::Result;

/// Normalization constants, computed over the training split only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormStats {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// 99th percentile of neighbor distances (nearest-rank), in meters.
    pub d_max: f64,
}

impl NormStats {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(CoreError::DegenerateExtent(format!(
                "x [{}, {}], y [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if !(self.d_max > 0.0) {
            return Err(CoreError::DegenerateExtent(format!(
                "d_max = {}",
                self.d_max
            )));
        }
        Ok(())
    }
}

/// An `n x 6` feature matrix with rows
/// `(x, y, d_prev, theta_prev, d_next, theta_next)`, all entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFeatureSeq {
    pub rows: Vec<[f64; 6]>,
}

impl PointFeatureSeq {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Min/max envelope of projected coordinates plus the robust neighbor-distance
/// scale. Call on the training split only to avoid test leakage.
pub fn compute_norm_stats(dataset: &[GpsTrajectory]) -> Result<NormStats> {
    if dataset.is_empty() {
        return Err(CoreError::EmptyDataset);
    }
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    let mut neighbor_dists = Vec::new();
    for t in dataset {
        let mut prev: Option<MeterXY> = None;
        for p in &t.points {
            let m = mercator_project(p);
            x_min = x_min.min(m.x);
            x_max = x_max.max(m.x);
            y_min = y_min.min(m.y);
            y_max = y_max.max(m.y);
            if let Some(q) = prev {
                neighbor_dists.push(q.dist(&m));
            }
            prev = Some(m);
        }
    }
    if neighbor_dists.is_empty() {
        return Err(CoreError::DegenerateExtent(
            "no neighbor distances in dataset".into(),
        ));
    }
    neighbor_dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let d_max = percentile_nearest_rank(&neighbor_dists, 0.99);
    let stats = NormStats {
        x_min,
        x_max,
        y_min,
        y_max,
        d_max,
    };
    stats.validate()?;
    Ok(stats)
}

/// Nearest-rank percentile of an ascending-sorted slice: element at 1-based
/// rank `ceil(p * n)`.
pub fn percentile_nearest_rank(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let rank = (p * n as f64).ceil().max(1.0) as usize;
    sorted[rank.min(n) - 1]
}

fn clip01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Bearing clockwise from north, normalized to `[0, 1)`.
fn bearing(from: &MeterXY, to: &MeterXY) -> f64 {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    let theta = dx.atan2(dy); // 0 = north, pi/2 = east
    let frac = theta / std::f64::consts::TAU;
    if frac < 0.0 {
        frac + 1.0
    } else {
        frac
    }
}

/// Extracts the 6-column feature rows for a cleaned trajectory.
///
/// Boundary rows use replication: the first point copies its successor pair
/// into the missing predecessor slots, the last point mirrors that.
pub fn extract_point_features(t: &GpsTrajectory, norm: &NormStats) -> Result<PointFeatureSeq> {
    norm.validate()?;
    let n = t.points.len();
    if n < 2 {
        return Err(CoreError::TooShort(n, 2));
    }
    let proj: Vec<_> = t.points.iter().map(mercator_project).collect();

    // Forward neighbor distance/bearing for each segment i -> i+1.
    let mut d_fwd = Vec::with_capacity(n - 1);
    let mut th_fwd = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        d_fwd.push(clip01(proj[i].dist(&proj[i + 1]) / norm.d_max));
        th_fwd.push(bearing(&proj[i], &proj[i + 1]));
    }

    let x_span = norm.x_max - norm.x_min;
    let y_span = norm.y_max - norm.y_min;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let x = clip01((proj[i].x - norm.x_min) / x_span);
        let y = clip01((proj[i].y - norm.y_min) / y_span);
        let (d_prev, th_prev) = if i == 0 {
            (d_fwd[0], th_fwd[0])
        } else {
            (d_fwd[i - 1], th_fwd[i - 1])
        };
        let (d_next, th_next) = if i == n - 1 {
            (d_fwd[n - 2], th_fwd[n - 2])
        } else {
            (d_fwd[i], th_fwd[i])
        };
        rows.push([x, y, d_prev, th_prev, d_next, th_next]);
    }
    Ok(PointFeatureSeq { rows })
}
