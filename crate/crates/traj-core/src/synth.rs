//! Deterministic synthetic trajectory generator.
//!
//! Produces correlated random walks grouped into route clusters so that every
//! trajectory has true nearest neighbors: each cluster owns a centroid route
//! confined to its own sub-box of the city bbox, and members trace a window
//! of that route with a per-trajectory lateral offset plus point jitter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::grid::BBox;
use crate::mercator::{mercator_project, mercator_unproject, MeterXY};
use crate::types::{GpsTrajectory, LonLat};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorConfig {
    pub count: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub bbox: BBox,
    pub clusters: usize,
    /// Mean step length of the centroid walk, meters.
    pub step_mean_m: f64,
    pub step_std_m: f64,
    /// Heading change per step, radians (std of a normal).
    pub turn_std_rad: f64,
    /// Per-trajectory lateral offset from the centroid route, meters (std).
    pub lateral_std_m: f64,
    /// Per-point jitter, meters (std).
    pub jitter_std_m: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            count: 100,
            min_len: 20,
            max_len: 40,
            bbox: BBox {
                min_lon: -8.70,
                min_lat: 41.10,
                max_lon: -8.50,
                max_lat: 41.25,
            },
            clusters: 10,
            step_mean_m: 120.0,
            step_std_m: 30.0,
            turn_std_rad: 0.35,
            lateral_std_m: 220.0,
            jitter_std_m: 15.0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        self.bbox.validate()?;
        if self.clusters == 0 {
            return Err(CoreError::InvalidConfig("clusters must be >= 1".into()));
        }
        if self.min_len < 2 || self.min_len > self.max_len {
            return Err(CoreError::InvalidConfig(format!(
                "invalid length window [{}, {}]",
                self.min_len, self.max_len
            )));
        }
        if self.step_mean_m <= 0.0 {
            return Err(CoreError::InvalidConfig("step_mean_m must be > 0".into()));
        }
        Ok(())
    }
}

/// SplitMix64 step, used to derive independent per-index seeds.
fn mix(seed: u64, salt: u64, idx: u64) -> u64 {
    let mut z = seed ^ salt ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u1 kept away from 0.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Meter-space rectangle the cluster's route is confined to.
fn cluster_box(cfg: &GeneratorConfig, cluster: usize) -> (MeterXY, MeterXY) {
    let side = (cfg.clusters as f64).sqrt().ceil() as usize;
    let (cx, cy) = (cluster % side, cluster / side);
    let lo = mercator_project(&LonLat::new(cfg.bbox.min_lon, cfg.bbox.min_lat).unwrap());
    let hi = mercator_project(&LonLat::new(cfg.bbox.max_lon, cfg.bbox.max_lat).unwrap());
    let w = (hi.x - lo.x) / side as f64;
    let h = (hi.y - lo.y) / side as f64;
    // 8% margin keeps offsets and jitter inside the bbox.
    let margin_x = 0.08 * w;
    let margin_y = 0.08 * h;
    (
        MeterXY {
            x: lo.x + cx as f64 * w + margin_x,
            y: lo.y + cy as f64 * h + margin_y,
        },
        MeterXY {
            x: lo.x + (cx + 1) as f64 * w - margin_x,
            y: lo.y + (cy + 1) as f64 * h - margin_y,
        },
    )
}

/// Correlated random walk inside `(lo, hi)`, reflecting at the walls.
fn centroid_route(cfg: &GeneratorConfig, seed: u64, cluster: usize) -> Vec<MeterXY> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 0xC1A5_7E12, cluster as u64));
    let (lo, hi) = cluster_box(cfg, cluster);
    let route_len = cfg.max_len * 2;
    let mut x = lo.x + (hi.x - lo.x) * rng.gen_range(0.3..0.7);
    let mut y = lo.y + (hi.y - lo.y) * rng.gen_range(0.3..0.7);
    let mut heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut route = Vec::with_capacity(route_len);
    route.push(MeterXY { x, y });
    for _ in 1..route_len {
        heading += cfg.turn_std_rad * normal(&mut rng);
        let step = (cfg.step_mean_m + cfg.step_std_m * normal(&mut rng)).max(1.0);
        let mut nx = x + step * heading.sin();
        let mut ny = y + step * heading.cos();
        if nx < lo.x || nx > hi.x {
            heading = -heading; // reflect east-west
            nx = nx.clamp(lo.x, hi.x);
        }
        if ny < lo.y || ny > hi.y {
            heading = std::f64::consts::PI - heading; // reflect north-south
            ny = ny.clamp(lo.y, hi.y);
        }
        x = nx;
        y = ny;
        route.push(MeterXY { x, y });
    }
    route
}

fn one_trajectory(
    cfg: &GeneratorConfig,
    seed: u64,
    idx: usize,
    routes: &[Vec<MeterXY>],
) -> GpsTrajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 0x7AA9_0B3F, idx as u64));
    let cluster = idx % cfg.clusters;
    let route = &routes[cluster];
    let len = rng.gen_range(cfg.min_len..=cfg.max_len);
    let start = rng.gen_range(0..=route.len() - len);
    let off_x = cfg.lateral_std_m * normal(&mut rng);
    let off_y = cfg.lateral_std_m * normal(&mut rng);
    // Keep generated points strictly inside the user bbox.
    let lo = mercator_project(&LonLat::new(cfg.bbox.min_lon, cfg.bbox.min_lat).unwrap());
    let hi = mercator_project(&LonLat::new(cfg.bbox.max_lon, cfg.bbox.max_lat).unwrap());
    let eps = 1.0;
    let points = (0..len)
        .map(|k| {
            let base = route[start + k];
            let m = MeterXY {
                x: (base.x + off_x + cfg.jitter_std_m * normal(&mut rng))
                    .clamp(lo.x + eps, hi.x - eps),
                y: (base.y + off_y + cfg.jitter_std_m * normal(&mut rng))
                    .clamp(lo.y + eps, hi.y - eps),
            };
            mercator_unproject(&m).expect("bbox-clamped point is always valid")
        })
        .collect();
    GpsTrajectory::new(idx as u64, points)
}

/// Generates `cfg.count` trajectories, byte-identical for a fixed seed.
/// Each trajectory draws from its own derived RNG, so generation order (and
/// the rayon partitioning below) cannot affect the output.
pub fn generate_synthetic(cfg: &GeneratorConfig, seed: u64) -> Result<Vec<GpsTrajectory>> {
    cfg.validate()?;
    let routes: Vec<_> = (0..cfg.clusters)
        .map(|c| centroid_route(cfg, seed, c))
        .collect();
    Ok((0..cfg.count)
        .into_par_iter()
        .map(|idx| one_trajectory(cfg, seed, idx, &routes))
        .collect())
}
