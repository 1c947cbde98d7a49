//! Spherical Web-Mercator projection (EPSG:3857).

use serde::{Deserialize, Serialize};

use crate::types::{LonLat, MAX_MERCATOR_LAT};
use crate::Result;

/// WGS84 equatorial radius in meters.
pub const EARTH_RADIUS_M: f64 = 6_378_137.0;

/// A point in the Web-Mercator plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeterXY {
    pub x: f64,
    pub y: f64,
}

impl MeterXY {
    pub fn dist(&self, other: &MeterXY) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Projects a geographic point onto the Web-Mercator plane.
///
/// `x = R * lon_rad`, `y = R * ln(tan(pi/4 + lat_rad/2))`; the y formula is
/// evaluated as the identical `asinh(tan(lat_rad))`, which is exact at the
/// equator.
pub fn mercator_project(p: &LonLat) -> MeterXY {
    let lon_rad = p.lon().to_radians();
    let lat_rad = p.lat().to_radians();
    MeterXY {
        x: EARTH_RADIUS_M * lon_rad,
        y: EARTH_RADIUS_M * lat_rad.tan().asinh(),
    }
}

/// Projects raw degrees, validating the Web-Mercator latitude range.
pub fn project_raw(lon: f64, lat: f64) -> Result<MeterXY> {
    Ok(mercator_project(&LonLat::new(lon, lat)?))
}

/// Inverse projection back to degrees.
pub fn mercator_unproject(m: &MeterXY) -> Result<LonLat> {
    let lon = (m.x / EARTH_RADIUS_M).to_degrees();
    let lat = (m.y / EARTH_RADIUS_M).sinh().atan().to_degrees();
    // Numerical noise near the bounds gets pulled back inside the domain.
    let lat = lat.clamp(-MAX_MERCATOR_LAT + 1e-12, MAX_MERCATOR_LAT - 1e-12);
    let lon = if lon >= 180.0 { lon - 360.0 } else { lon };
    let lon = lon.clamp(-180.0, 180.0 - 1e-12);
    LonLat::new(lon, lat)
}
