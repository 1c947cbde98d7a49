//! Core trajectory domain: GPS/grid trajectory types, cleaning, Web-Mercator
//! projection, slippy-tile grid mapping, point feature extraction, and a
//! deterministic synthetic trajectory generator.
//!
//! Everything here is pure and immutable after construction; all operations
//! are safe to call from many threads concurrently.

pub mod clean;
pub mod error;
pub mod features;
pub mod grid;
pub mod mercator;
pub mod synth;
pub mod types;

pub use clean::{clean_trajectory, CleanConfig, CleanOutcome, RejectReason};
pub use error::CoreError;
pub use features::{compute_norm_stats, extract_point_features, NormStats, PointFeatureSeq};
pub use grid::{cell_center, map_to_grid, BBox, CellVocab, GridSpec, GridTrajectory};
pub use mercator::{mercator_project, mercator_unproject, MeterXY, EARTH_RADIUS_M};
pub use synth::{generate_synthetic, GeneratorConfig};
pub use types::{GpsTrajectory, LonLat, TrajId};

pub type Result<T> = std::result::Result<T, CoreError>;
