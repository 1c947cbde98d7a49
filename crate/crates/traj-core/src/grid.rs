//! Slippy-map tile grid: mapping GPS trajectories to discrete cell sequences
//! and compacting raw tile ids to a dense vocabulary.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::types::{GpsTrajectory, LonLat, TrajId};
use crate::Result;

/// Geographic bounding box in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min_lon: f64,
    pub min_lat: f64,
    pub max_lon: f64,
    pub max_lat: f64,
}

impl BBox {
    pub fn validate(&self) -> Result<()> {
        if self.min_lon < self.max_lon && self.min_lat < self.max_lat {
            Ok(())
        } else {
            Err(CoreError::EmptyBbox {
                min_lon: self.min_lon,
                min_lat: self.min_lat,
                max_lon: self.max_lon,
                max_lat: self.max_lat,
            })
        }
    }

    pub fn contains(&self, p: &LonLat) -> bool {
        p.lon() >= self.min_lon
            && p.lon() <= self.max_lon
            && p.lat() >= self.min_lat
            && p.lat() <= self.max_lat
    }
}

/// Tiling level plus an optional bounding region.
///
/// At the equator a cell side is roughly `40_075_016.686 / 2^zoom` meters;
/// zoom 18 gives the ~153 m cells used at full scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub zoom: u8,
    pub bbox: Option<BBox>,
}

impl GridSpec {
    pub fn new(zoom: u8, bbox: Option<BBox>) -> Result<Self> {
        if zoom < 1 || zoom > 30 {
            return Err(CoreError::InvalidConfig(format!(
                "zoom {zoom} outside [1, 30]"
            )));
        }
        if let Some(b) = &bbox {
            b.validate()?;
        }
        Ok(Self { zoom, bbox })
    }

    fn side(&self) -> u64 {
        1u64 << self.zoom
    }

    /// Slippy-map tile of a point: `x = floor((lon+180)/360 * 2^z)`,
    /// `y = floor((1 - ln(tan(lat) + sec(lat))/pi)/2 * 2^z)`.
    pub fn tile_of(&self, p: &LonLat) -> (u64, u64) {
        let n = self.side() as f64;
        let x = ((p.lon() + 180.0) / 360.0 * n).floor();
        let lat_rad = p.lat().to_radians();
        let y = ((1.0 - (lat_rad.tan() + 1.0 / lat_rad.cos()).ln() / PI) / 2.0 * n).floor();
        let clamp = |v: f64| (v.max(0.0) as u64).min(self.side() - 1);
        (clamp(x), clamp(y))
    }

    /// Linearized cell id: `y_tile * 2^zoom + x_tile`.
    pub fn cell_id(&self, p: &LonLat) -> u64 {
        let (x, y) = self.tile_of(p);
        y * self.side() + x
    }

    pub fn cell_to_tile(&self, cell: u64) -> Result<(u64, u64)> {
        let side = self.side();
        let (x, y) = (cell % side, cell / side);
        if y >= side {
            return Err(CoreError::CellOutOfRange(cell, self.zoom));
        }
        Ok((x, y))
    }
}

/// A trajectory mapped onto grid cells, consecutive duplicates collapsed.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTrajectory {
    pub id: TrajId,
    pub cells: Vec<u64>,
}

impl GridTrajectory {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Maps each GPS point to its cell id and collapses consecutive duplicates.
pub fn map_to_grid(t: &GpsTrajectory, grid: &GridSpec) -> Result<GridTrajectory> {
    if t.points.is_empty() {
        return Err(CoreError::TooShort(0, 1));
    }
    let mut cells = Vec::with_capacity(t.points.len());
    for (index, p) in t.points.iter().enumerate() {
        if let Some(bbox) = &grid.bbox {
            if !bbox.contains(p) {
                return Err(CoreError::OutsideBbox {
                    index,
                    lon: p.lon(),
                    lat: p.lat(),
                });
            }
        }
        let id = grid.cell_id(p);
        if cells.last() != Some(&id) {
            cells.push(id);
        }
    }
    Ok(GridTrajectory { id: t.id, cells })
}

/// Center of a cell in degrees.
pub fn cell_center(grid: &GridSpec, cell: u64) -> Result<LonLat> {
    let (x, y) = grid.cell_to_tile(cell)?;
    let n = grid.side() as f64;
    let lon = (x as f64 + 0.5) / n * 360.0 - 180.0;
    let y_norm = 1.0 - 2.0 * (y as f64 + 0.5) / n;
    let lat = (PI * y_norm).sinh().atan().to_degrees();
    LonLat::new(lon, lat)
}

/// Reserved dense index for cells never seen during vocabulary construction.
///
/// Dense indices run `0..M`; the UNK index is `M` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct CellVocab {
    ids: Vec<u64>,
    index: HashMap<u64, u64>,
}

impl CellVocab {
    /// Builds the dense vocabulary from the cells visited by a (training)
    /// set of grid trajectories. Dense ids follow ascending raw-id order.
    pub fn build(trajs: &[GridTrajectory]) -> Self {
        let mut ids: Vec<u64> = trajs
            .iter()
            .flat_map(|t| t.cells.iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let index = ids
            .iter()
            .enumerate()
            .map(|(dense, raw)| (*raw, dense as u64))
            .collect();
        Self { ids, index }
    }

    pub fn from_raw_ids(mut ids: Vec<u64>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        let index = ids
            .iter()
            .enumerate()
            .map(|(dense, raw)| (*raw, dense as u64))
            .collect();
        Self { ids, index }
    }

    /// Number of known cells, `M`.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// The reserved index for unseen cells.
    pub fn unk(&self) -> u64 {
        self.ids.len() as u64
    }

    pub fn dense(&self, raw: u64) -> u64 {
        self.index.get(&raw).copied().unwrap_or_else(|| self.unk())
    }

    pub fn raw(&self, dense: u64) -> Option<u64> {
        self.ids.get(dense as usize).copied()
    }

    pub fn raw_ids(&self) -> &[u64] {
        &self.ids
    }

    /// Rewrites a raw-id trajectory into dense ids, re-collapsing any
    /// consecutive duplicates introduced by the UNK mapping.
    pub fn encode(&self, t: &GridTrajectory) -> GridTrajectory {
        let mut cells = Vec::with_capacity(t.cells.len());
        for &raw in &t.cells {
            let d = self.dense(raw);
            if cells.last() != Some(&d) {
                cells.push(d);
            }
        }
        GridTrajectory { id: t.id, cells }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mercator::{project_raw, EARTH_RADIUS_M};
    use crate::types::GpsTrajectory;

    fn ll(lon: f64, lat: f64) -> LonLat {
        LonLat::new(lon, lat).unwrap()
    }

    #[test]
    fn origin_is_grid_midpoint_at_zoom_18() {
        let grid = GridSpec::new(18, None).unwrap();
        assert_eq!(grid.tile_of(&ll(0.0, 0.0)), (131072, 131072));
    }

    #[test]
    fn porto_tile_matches_mercator_route() {
        // Independent oracle: derive y_tile from the projected Mercator y,
        // y_tile = floor((1 - y/(pi*R))/2 * 2^z), instead of the tan+sec form.
        let grid = GridSpec::new(18, None).unwrap();
        let p = ll(-8.61, 41.15);
        let m = project_raw(-8.61, 41.15).unwrap();
        let n = (1u64 << 18) as f64;
        let x_oracle = ((-8.61 + 180.0) / 360.0 * n).floor() as u64;
        let y_oracle = ((1.0 - m.y / (std::f64::consts::PI * EARTH_RADIUS_M)) / 2.0 * n).floor()
            as u64;
        assert_eq!(grid.tile_of(&p), (x_oracle, y_oracle));
        assert_eq!(grid.cell_id(&p), y_oracle * (1 << 18) + x_oracle);
    }

    #[test]
    fn single_cell_trajectory_collapses_to_length_one() {
        let grid = GridSpec::new(10, None).unwrap();
        // All points within ~10 m of each other: one zoom-10 cell (~39 km).
        let pts = (0..20).map(|i| ll(0.0001 * i as f64, 0.0)).collect();
        let t = GpsTrajectory::new(7, pts);
        let g = map_to_grid(&t, &grid).unwrap();
        assert_eq!(g.cells.len(), 1);
        assert_eq!(g.id, 7);
    }

    #[test]
    fn out_of_bbox_point_names_offending_index() {
        let grid = GridSpec::new(12, Some(BBox {
            min_lon: -1.0,
            min_lat: -1.0,
            max_lon: 1.0,
            max_lat: 1.0,
        }))
        .unwrap();
        let t = GpsTrajectory::new(0, vec![ll(0.0, 0.0), ll(0.5, 0.5), ll(5.0, 0.0)]);
        match map_to_grid(&t, &grid) {
            Err(CoreError::OutsideBbox { index, .. }) => assert_eq!(index, 2),
            other => panic!("expected bbox error, got {other:?}"),
        }
    }

    #[test]
    fn remapping_cell_centers_is_idempotent() {
        let grid = GridSpec::new(14, None).unwrap();
        let pts = vec![ll(-8.6, 41.1), ll(-8.59, 41.12), ll(-8.57, 41.15)];
        let t = GpsTrajectory::new(1, pts);
        let g = map_to_grid(&t, &grid).unwrap();
        for &cell in &g.cells {
            let center = cell_center(&grid, cell).unwrap();
            assert_eq!(grid.cell_id(&center), cell);
        }
    }

    #[test]
    fn vocab_maps_unseen_to_unk_and_recollapses() {
        let train = vec![GridTrajectory { id: 0, cells: vec![10, 20, 30] }];
        let vocab = CellVocab::build(&train);
        assert_eq!(vocab.len(), 3);
        assert_eq!(vocab.dense(20), 1);
        assert_eq!(vocab.dense(999), vocab.unk());
        let test = GridTrajectory { id: 1, cells: vec![10, 77, 88, 30] };
        let enc = vocab.encode(&test);
        assert_eq!(enc.cells, vec![0, vocab.unk(), 2]);
    }
}
