//! Property tests for the projection, grid, and feature invariants.

use proptest::prelude::*;
use traj_core::{
    extract_point_features, mercator_project, mercator_unproject, GpsTrajectory, GridSpec, LonLat,
    MeterXY, NormStats,
};

fn valid_lonlat() -> impl Strategy<Value = LonLat> {
    (-179.999f64..179.999, -84.9f64..84.9).prop_map(|(lon, lat)| LonLat::new(lon, lat).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn project_unproject_roundtrip(p in valid_lonlat()) {
        let m = mercator_project(&p);
        let q = mercator_unproject(&m).unwrap();
        prop_assert!((p.lon() - q.lon()).abs() < 1e-9);
        prop_assert!((p.lat() - q.lat()).abs() < 1e-9);
    }

    #[test]
    fn grid_mapping_idempotent_on_cell_centers(p in valid_lonlat(), zoom in 4u8..18) {
        let grid = GridSpec::new(zoom, None).unwrap();
        let cell = grid.cell_id(&p);
        let center = traj_core::cell_center(&grid, cell).unwrap();
        prop_assert_eq!(grid.cell_id(&center), cell);
    }
}

#[test]
fn roundtrip_dense_sample() {
    // 10^4 deterministic quasi-random points across the full domain.
    for i in 0..10_000u64 {
        let lon = -180.0 + 359.99 * ((i as f64 * 0.6180339887498949) % 1.0);
        let lat = -84.9 + 169.8 * ((i as f64 * 0.3819660112501051) % 1.0);
        let p = LonLat::new(lon, lat).unwrap();
        let q = mercator_unproject(&mercator_project(&p)).unwrap();
        assert!(
            (p.lon() - q.lon()).abs() < 1e-9 && (p.lat() - q.lat()).abs() < 1e-9,
            "roundtrip drift at ({lon}, {lat})"
        );
    }
}

fn traj_from_meters(pts: &[(f64, f64)]) -> GpsTrajectory {
    let points = pts
        .iter()
        .map(|&(x, y)| mercator_unproject(&MeterXY { x, y }).unwrap())
        .collect();
    GpsTrajectory::new(0, points)
}

#[test]
fn features_invariant_under_translation() {
    let norm = NormStats {
        x_min: -100_000.0,
        x_max: 100_000.0,
        y_min: -100_000.0,
        y_max: 100_000.0,
        d_max: 500.0,
    };
    let base: Vec<(f64, f64)> = vec![
        (0.0, 0.0),
        (120.0, 40.0),
        (260.0, 90.0),
        (400.0, 60.0),
        (520.0, -20.0),
    ];
    let shifted: Vec<(f64, f64)> = base.iter().map(|&(x, y)| (x + 5_000.0, y + 7_000.0)).collect();
    let f = extract_point_features(&traj_from_meters(&base), &norm).unwrap();
    let g = extract_point_features(&traj_from_meters(&shifted), &norm).unwrap();
    for (rf, rg) in f.rows.iter().zip(&g.rows) {
        // Relative columns (d, theta) are unchanged; x/y shift.
        for c in 2..6 {
            assert!((rf[c] - rg[c]).abs() < 1e-6, "column {c}: {} vs {}", rf[c], rg[c]);
        }
        assert!((rg[0] - rf[0] - 5_000.0 / 200_000.0).abs() < 1e-6);
        assert!((rg[1] - rf[1] - 7_000.0 / 200_000.0).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feature_entries_stay_in_unit_interval(
        steps in proptest::collection::vec((-400.0f64..400.0, -400.0f64..400.0), 2..40)
    ) {
        let norm = NormStats {
            x_min: -2_000.0,
            x_max: 2_000.0,
            y_min: -2_000.0,
            y_max: 2_000.0,
            d_max: 50.0, // small on purpose so clipping engages
        };
        let mut pts = vec![(0.0, 0.0)];
        let (mut x, mut y) = (0.0, 0.0);
        for (dx, dy) in steps {
            x += dx;
            y += dy;
            pts.push((x, y));
        }
        let f = extract_point_features(&traj_from_meters(&pts), &norm).unwrap();
        for row in &f.rows {
            for (c, v) in row.iter().enumerate() {
                prop_assert!((0.0..=1.0).contains(v), "column {} = {} out of range", c, v);
            }
        }
    }
}
