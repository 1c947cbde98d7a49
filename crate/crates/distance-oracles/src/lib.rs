//! Heuristic trajectory similarity measures (DTW, DFD, EDwP) and the parallel
//! ground-truth distance matrix used for supervision and evaluation.
//!
//! All kernels operate on Web-Mercator meter coordinates and accumulate in
//! 64-bit floating point. Only rank order matters downstream, so the raw
//! measure units are kept: DTW/DFD in meters, EDwP in the coverage-weighted
//! m^2-scaled score of its recurrence.

pub mod dfd;
pub mod dtw;
pub mod edwp;
pub mod error;
pub mod matrix;

pub use dfd::dfd;
pub use dtw::dtw;
pub use edwp::edwp;
pub use error::OracleError;
pub use matrix::{
    ground_truth_topk, pairwise_matrix, rect_matrix, topk_from_rows, DistanceMatrix, Measure,
    RankLists,
};

pub type Result<T> = std::result::Result<T, OracleError>;

pub(crate) fn dist(a: &traj_core::MeterXY, b: &traj_core::MeterXY) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}
