#[path = "support/oracles.rs"]
mod oracles;

use planeid::evaluate::{
    build_confusion, detected_length_avg, display_round, evaluate_scene, length_accuracy_pct, reference_pairs,
};
use planeid::geometry::Point;
use planeid::identify::IdentifyConfig;
use planeid::maskio::{DetectionRecord, Mask, SceneManifest};
use planeid::photogrammetry::{CameraModel, FlightParams, ResizeScale};
use planeid::synth::{generate_manifest, FleetOptions, SynthScene};
use planeid::{CatalogF64, Error};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn synth_manifest(opts: &FleetOptions) -> SceneManifest<f64> {
    let scene = SynthScene::fleet(&CatalogF64::default_fleet(), opts).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = generate_manifest(&scene, dir.path()).unwrap();
    SceneManifest::load(&out.manifest_path).unwrap()
}

/// A camera with 1 m per pixel: 100 px across at 100 m with these optics.
fn meter_camera() -> (CameraModel<f64>, FlightParams<f64>) {
    (
        CameraModel::new(10.0, 10.0, 10.0, 100, 100).unwrap(),
        FlightParams::new(100.0).unwrap(),
    )
}

fn bar(id: &str, truth: Option<&str>, len_px: i64) -> DetectionRecord<f64> {
    DetectionRecord {
        image_id: id.into(),
        mask: Mask::new(128, 4, (0..=len_px).map(|x| Point::new(x + 1, 1))).unwrap(),
        ground_truth: truth.map(String::from),
        resize_scale: ResizeScale::identity(),
    }
}

#[test]
fn mean_matches_compensated_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let n = rng.random_range(1..500);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..100.0)).collect();
        let got = detected_length_avg(&xs).unwrap();
        let want = oracles::compensated_mean(&xs);
        assert!((got - want).abs() <= 1e-12 * want.max(1.0), "{got} vs {want}");
    }
}

#[test]
fn accuracy_anchor_bo787() {
    let acc = length_accuracy_pct(56.0, 57.0).unwrap();
    assert_eq!(display_round(acc), 98);
    assert_eq!(length_accuracy_pct(0.0, 57.0).unwrap(), 0.0);
    assert_eq!(length_accuracy_pct(200.0, 57.0).unwrap(), 0.0);
}

proptest! {
    #[test]
    fn accuracy_falls_with_distance(actual in 1.0f64..100.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (near, far) = if a <= b { (a, b) } else { (b, a) };
        for sign in [1.0, -1.0] {
            let pn = length_accuracy_pct(actual * (1.0 + sign * near), actual).unwrap();
            let pf = length_accuracy_pct(actual * (1.0 + sign * far), actual).unwrap();
            prop_assert!(pn >= pf - 1e-9);
            prop_assert!((0.0..=100.0).contains(&pn));
        }
    }
}

#[test]
fn exact_lengths_score_one_hundred() {
    let catalog = CatalogF64::default_fleet();
    let (camera, flight) = meter_camera();
    let records = catalog
        .entries()
        .iter()
        .map(|s| bar(&s.shortcut, Some(&s.shortcut), s.actual_length_m as i64))
        .collect();
    let manifest = SceneManifest {
        camera,
        flight,
        records,
    };
    let report = evaluate_scene(&manifest, &catalog, &IdentifyConfig::default()).unwrap();
    assert_eq!(report.rows.len(), 9);
    for row in &report.rows {
        assert_eq!(row.accuracy_pct, 100.0, "{}", row.shortcut);
    }
    assert_eq!(report.overall_avg_accuracy_pct, Some(100.0));
    assert!(report.matrix.is_diagonal());
    assert!(report.missing_types.is_empty());
}

#[test]
fn missing_ground_truth_lists_ids() {
    let catalog = CatalogF64::default_fleet();
    let (camera, flight) = meter_camera();
    let manifest = SceneManifest {
        camera,
        flight,
        records: vec![bar("a", Some("CM2"), 13), bar("b", None, 16), bar("c", None, 20)],
    };
    match evaluate_scene(&manifest, &catalog, &IdentifyConfig::default()) {
        Err(Error::MissingGroundTruth { image_ids }) => assert_eq!(image_ids, ["b", "c"]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn empty_manifest_rejected() {
    let (camera, flight) = meter_camera();
    let manifest = SceneManifest {
        camera,
        flight,
        records: Vec::new(),
    };
    assert!(matches!(
        evaluate_scene(&manifest, &CatalogF64::default_fleet(), &IdentifyConfig::default()),
        Err(Error::EmptyManifest)
    ));
}

#[test]
fn empty_mask_is_a_finding_not_a_row() {
    let catalog = CatalogF64::default_fleet();
    let (camera, flight) = meter_camera();
    let mut empty = bar("gone", Some("CJ4"), 16);
    empty.mask = Mask::empty(128, 4).unwrap();
    let manifest = SceneManifest {
        camera,
        flight,
        records: vec![bar("ok", Some("CM2"), 13), empty],
    };
    let report = evaluate_scene(&manifest, &catalog, &IdentifyConfig::default()).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert!(report.missing_types.contains(&"CJ4".to_string()));
    assert_eq!(report.findings.len(), 1);
    assert_eq!(report.findings[0].image_id, "gone");
    assert_eq!(report.matrix.total(), 1);
}

#[test]
fn record_order_does_not_change_aggregates() {
    let opts = FleetOptions {
        count: 3,
        ..FleetOptions::default()
    };
    let manifest = synth_manifest(&opts);
    let catalog = CatalogF64::default_fleet();
    let cfg = IdentifyConfig::default();
    let base = evaluate_scene(&manifest, &catalog, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let mut shuffled = manifest.clone();
        shuffled.records.shuffle(&mut rng);
        let r = evaluate_scene(&shuffled, &catalog, &cfg).unwrap();
        assert_eq!(r.rows, base.rows);
        assert_eq!(r.overall_avg_accuracy_pct, base.overall_avg_accuracy_pct);
        assert_eq!(r.matrix, base.matrix);
        // predictions follow the manifest, whatever its order
        let ids: Vec<_> = r.predictions.iter().map(|p| p.image_id.as_str()).collect();
        let want: Vec<_> = shuffled.records.iter().map(|p| p.image_id.as_str()).collect();
        assert_eq!(ids, want);
    }
}

#[test]
fn g550_stretched_one_meter_reads_as_g650() {
    let opts = FleetOptions {
        types: vec!["G-550".into()],
        length_delta_m: 1.0,
        ..FleetOptions::default()
    };
    let manifest = synth_manifest(&opts);
    let report = evaluate_scene(&manifest, &CatalogF64::default_fleet(), &IdentifyConfig::default()).unwrap();
    assert!(report.matrix.get("G-550", "G-650").unwrap() >= 1);
    assert_eq!(report.matrix.row_sum("G-550"), Some(10));
}

#[test]
fn reference_pair_counts() {
    let catalog = CatalogF64::default_fleet();
    let m = build_confusion(&reference_pairs(), &catalog).unwrap();
    assert_eq!(m.total(), 145);
    assert_eq!(m.trace(), 111);
    assert_eq!(m.get("LM100J", "LM100J"), Some(9));
    assert_eq!(m.get("LM100J", "G-650"), Some(2));
    assert_eq!(m.get("LM100J", "A-320"), Some(1));
    assert_eq!(m.row_sum("CM2"), Some(31));
}
