mod common;

use common::{coco_schema_walk, decode_rle, random_mask, rng, scan_bbox};
use proptest::prelude::*;
use rand::Rng;
use seadronesim::annotate::{
    build_coco, mask_to_bbox, mask_to_rle, read_meta_sidecar, rle_to_mask, sidecar_name,
    write_meta_sidecar, AnnotateError, CocoDataset, CocoFrame,
};
use seadronesim::mask::Mask;
use seadronesim::math::{Quat, Vec3};
use seadronesim::render::FrameMeta;

#[test]
fn bbox_matches_exhaustive_scan() {
    let mut r = rng(1);
    for _ in 0..1000 {
        let m = random_mask(&mut r, 48);
        let got = mask_to_bbox(&m).map(|b| (b.x, b.y, b.w, b.h));
        assert_eq!(got, scan_bbox(&m));
    }
}

#[test]
fn bbox_examples() {
    assert_eq!(mask_to_bbox(&Mask::new(5, 5)), None);
    let b = mask_to_bbox(&Mask::from_fn(10, 8, |c, r| c == 3 && r == 7)).unwrap();
    assert_eq!((b.x, b.y, b.w, b.h), (3, 7, 1, 1));
    let b = mask_to_bbox(&Mask::filled(4, 6, true)).unwrap();
    assert_eq!((b.x, b.y, b.w, b.h), (0, 0, 4, 6));
}

#[test]
fn rle_round_trip_and_independent_decode() {
    let mut r = rng(2);
    for _ in 0..100 {
        let m = random_mask(&mut r, 64);
        let rle = mask_to_rle(&m);
        assert_eq!(rle.size, [m.height(), m.width()]);
        assert_eq!(
            rle.counts.iter().sum::<u64>(),
            (m.width() * m.height()) as u64
        );
        assert!(
            rle.counts[1..].iter().all(|&c| c > 0),
            "only the leading run may be empty"
        );
        assert_eq!(decode_rle(m.height(), m.width(), &rle.counts), m);
        assert_eq!(rle_to_mask(&rle).unwrap(), m);
        assert_eq!(rle.area(), m.count());
    }
}

#[test]
fn rle_is_column_major() {
    // 2x3 (h x w) with only (col 1, row 0) set: column-major index 2.
    let m = Mask::from_fn(3, 2, |c, r| c == 1 && r == 0);
    assert_eq!(mask_to_rle(&m).counts, vec![2, 1, 3]);
    let m = Mask::filled(2, 2, true);
    assert_eq!(mask_to_rle(&m).counts, vec![0, 4]);
}

fn frames_from<'a>(names: &'a [String], masks: &'a [Mask]) -> Vec<CocoFrame<'a>> {
    names
        .iter()
        .zip(masks)
        .map(|(n, m)| CocoFrame {
            file_name: n,
            width: m.width(),
            height: m.height(),
            mask: m,
        })
        .collect()
}

#[test]
fn coco_dataset_shape() {
    let masks = vec![
        Mask::from_fn(8, 6, |c, r| (2..5).contains(&c) && (1..3).contains(&r)),
        Mask::new(8, 6),
        Mask::from_fn(8, 6, |c, _| c == 7),
    ];
    let names: Vec<String> = (0..3).map(|i| format!("frame_{i:06}.png")).collect();
    let ds = build_coco(&frames_from(&names, &masks)).unwrap();
    assert_eq!(ds.images.len(), 3);
    assert_eq!(
        ds.annotations.len(),
        2,
        "empty mask yields an image without annotation"
    );
    assert_eq!(ds.categories.len(), 1);
    assert_eq!(ds.categories[0].name, "bluerov");
    assert_eq!(ds.annotations[0].bbox, [2.0, 1.0, 3.0, 2.0]);
    assert_eq!(ds.annotations[0].area, 6.0);
    assert_eq!(ds.annotations[1].image_id, 3);
    assert_eq!(ds.annotations[1].bbox, [7.0, 0.0, 1.0, 6.0]);
    ds.validate().unwrap();

    let v: serde_json::Value = serde_json::from_str(&ds.to_json()).unwrap();
    coco_schema_walk(&v).unwrap();
    assert_eq!(CocoDataset::from_json_str(&ds.to_json()).unwrap(), ds);
}

#[test]
fn coco_random_datasets_pass_schema_walk() {
    let mut r = rng(3);
    for _ in 0..20 {
        let n = r.random_range(1..12);
        let masks: Vec<Mask> = (0..n).map(|_| random_mask(&mut r, 40)).collect();
        let names: Vec<String> = (0..n).map(|i| format!("{i}.png")).collect();
        let ds = build_coco(&frames_from(&names, &masks)).unwrap();
        ds.validate().unwrap();
        coco_schema_walk(&serde_json::from_str(&ds.to_json()).unwrap()).unwrap();
        for a in &ds.annotations {
            let img = ds.image(a.image_id).unwrap();
            let m = &masks[(a.image_id - 1) as usize];
            let (x, y, w, h) = scan_bbox(m).unwrap();
            assert_eq!(a.bbox, [x as f64, y as f64, w as f64, h as f64]);
            assert_eq!((img.width, img.height), (m.width(), m.height()));
        }
    }
}

#[test]
fn coco_dimension_mismatch_is_reported() {
    let m = Mask::new(4, 4);
    let frames = [CocoFrame {
        file_name: "a.png",
        width: 4,
        height: 5,
        mask: &m,
    }];
    assert!(matches!(
        build_coco(&frames),
        Err(AnnotateError::DimensionMismatch { index: 0, .. })
    ));
}

#[test]
fn validation_catches_broken_records() {
    let masks = vec![Mask::from_fn(8, 8, |c, r| c < 3 && r < 2)];
    let names = vec!["a.png".to_string()];
    let ds = build_coco(&frames_from(&names, &masks)).unwrap();
    let mut bad = ds.clone();
    bad.annotations[0].bbox[2] = 7.0;
    assert!(bad.validate().is_err());
    let mut bad = ds.clone();
    bad.annotations[0].image_id = 9;
    assert!(bad.validate().is_err());
    let mut bad = ds.clone();
    bad.annotations[0].area = 5.0;
    assert!(bad.validate().is_err());
}

#[test]
fn coco_output_is_byte_deterministic() {
    let mut r = rng(4);
    let masks: Vec<Mask> = (0..30).map(|_| random_mask(&mut r, 32)).collect();
    let names: Vec<String> = (0..30).map(|i| format!("{i}.png")).collect();
    let a = build_coco(&frames_from(&names, &masks)).unwrap().to_json();
    let b = build_coco(&frames_from(&names, &masks)).unwrap().to_json();
    assert_eq!(a, b);
}

fn random_meta(r: &mut impl Rng) -> FrameMeta {
    let mut f = || r.random_range(-1e3..1e3);
    let q = Quat::from([f(), f(), f(), f()]).normalized();
    let p = Vec3::new(f(), f(), f());
    let o = Quat::from_yaw_pitch_roll(f(), f(), f());
    FrameMeta {
        altitude_m: f().abs() + 1.0,
        camera_rotation: q,
        object_rotation: o,
        seed: r.random(),
        frame_index: r.random(),
        camera_position: p,
        orbit_angle: r.random_range(0.0..std::f64::consts::TAU),
        orbit_radius_m: r.random_range(0.0..5.0),
        vertical_fov_deg: r.random_range(1.0..120.0),
        image_width: r.random_range(1..5000),
        image_height: r.random_range(1..5000),
    }
}

#[test]
fn sidecar_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(5);
    for i in 0..100 {
        let meta = random_meta(&mut r);
        let path = dir.path().join(sidecar_name(&format!("frame_{i}.png")));
        write_meta_sidecar(&meta, &path).unwrap();
        assert_eq!(
            read_meta_sidecar(&path).unwrap(),
            meta,
            "bit-exact float round trip"
        );
    }
    assert_eq!(sidecar_name("frame_000001.png"), "frame_000001.meta.json");
}

proptest! {
    #[test]
    fn bbox_is_minimal(w in 1u32..40, h in 1u32..40, seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = r.random_range(0.01..0.5);
        let m = Mask::from_bits(w, h, (0..w * h).map(|_| r.random_bool(p)).collect());
        match mask_to_bbox(&m) {
            None => prop_assert!(m.is_empty()),
            Some(b) => {
                // Contains every set pixel; each edge row/column touches one.
                for row in 0..h {
                    for col in 0..w {
                        if m.get(col, row) {
                            prop_assert!(b.contains(col, row));
                        }
                    }
                }
                prop_assert!((b.y..b.y + b.h).any(|row| m.get(b.x, row)));
                prop_assert!((b.y..b.y + b.h).any(|row| m.get(b.x + b.w - 1, row)));
                prop_assert!((b.x..b.x + b.w).any(|col| m.get(col, b.y)));
                prop_assert!((b.x..b.x + b.w).any(|col| m.get(col, b.y + b.h - 1)));
            }
        }
    }
}
