use thiserror::Error;

/// Errors produced by the core trajectory operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("latitude {0} outside Web-Mercator range ({lo}, {hi})", lo = crate::types::MAX_MERCATOR_LAT * -1.0, hi = crate::types::MAX_MERCATOR_LAT)]
    LatitudeOutOfRange(f64),

    #[error("longitude {0} outside [-180, 180)")]
    LongitudeOutOfRange(f64),

    #[error("non-finite coordinate ({0}, {1})")]
    NonFiniteCoordinate(f64, f64),

    #[error("point {index} at ({lon}, {lat}) lies outside the grid bbox")]
    OutsideBbox { index: usize, lon: f64, lat: f64 },

    #[error("trajectory has {0} points, need at least {1}")]
    TooShort(usize, usize),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("degenerate coordinate extent: {0}")]
    DegenerateExtent(String),

    #[error("invalid bounding box: min ({min_lon}, {min_lat}) not strictly below max ({max_lon}, {max_lat})")]
    EmptyBbox {
        min_lon: f64,
        min_lat: f64,
        max_lon: f64,
        max_lat: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cell id {0} not representable at zoom {1}")]
    CellOutOfRange(u64, u8),
}
