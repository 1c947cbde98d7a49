//! Geographic primitives shared across the workspace.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::Result;

/// Latitude bound of the Web-Mercator projection (exclusive).
pub const MAX_MERCATOR_LAT: f64 = 85.0511;

/// Opaque trajectory identifier.
pub type TrajId = u64;

/// A longitude/latitude pair in degrees, restricted to the Web-Mercator
/// validity range. Construction validates; the fields are immutable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LonLat {
    lon: f64,
    lat: f64,
}

impl LonLat {
    pub fn new(lon: f64, lat: f64) -> Result<Self> {
        if !lon.is_finite() || !lat.is_finite() {
            return Err(CoreError::NonFiniteCoordinate(lon, lat));
        }
        if !(-180.0..180.0).contains(&lon) {
            return Err(CoreError::LongitudeOutOfRange(lon));
        }
        if lat <= -MAX_MERCATOR_LAT || lat >= MAX_MERCATOR_LAT {
            return Err(CoreError::LatitudeOutOfRange(lat));
        }
        Ok(Self { lon, lat })
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }
}

/// An ordered sequence of GPS points sampled at a fixed interval.
///
/// After cleaning, the point count is guaranteed to fall inside the
/// configured `[min_len, max_len]` window and no two consecutive points sit
/// closer than the dedup threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct GpsTrajectory {
    pub id: TrajId,
    pub points: Vec<LonLat>,
}

impl GpsTrajectory {
    pub fn new(id: TrajId, points: Vec<LonLat>) -> Self {
        Self { id, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
