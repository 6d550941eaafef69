//! Independent oracles shared by the integration tests. Nothing here calls
//! the code under test for the quantity being checked.
#![allow(dead_code)]

pub mod scenes;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seadronesim::mask::Mask;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- masks

/// Random mask drawn from a mix of shapes: empty, full, sparse noise,
/// rectangles, discs and single pixels.
pub fn random_mask(rng: &mut ChaCha8Rng, max_side: u32) -> Mask {
    let w = rng.random_range(1..=max_side);
    let h = rng.random_range(1..=max_side);
    match rng.random_range(0..6) {
        0 => Mask::new(w, h),
        1 => Mask::filled(w, h, true),
        2 => {
            let p: f64 = rng.random_range(0.0..0.3);
            let bits = (0..w * h).map(|_| rng.random_bool(p)).collect();
            Mask::from_bits(w, h, bits)
        }
        3 => {
            let (x0, y0) = (rng.random_range(0..w), rng.random_range(0..h));
            let (x1, y1) = (rng.random_range(x0..w), rng.random_range(y0..h));
            Mask::from_fn(w, h, |c, r| c >= x0 && c <= x1 && r >= y0 && r <= y1)
        }
        4 => {
            let (cx, cy) = (
                rng.random_range(0.0..w as f64),
                rng.random_range(0.0..h as f64),
            );
            let rad = rng.random_range(0.3..(w.max(h) as f64 / 2.0 + 1.0));
            Mask::from_fn(w, h, |c, r| {
                (c as f64 + 0.5 - cx).powi(2) + (r as f64 + 0.5 - cy).powi(2) <= rad * rad
            })
        }
        _ => {
            let (c0, r0) = (rng.random_range(0..w), rng.random_range(0..h));
            Mask::from_fn(w, h, |c, r| c == c0 && r == r0)
        }
    }
}

/// Exhaustive extreme scan over every pixel: (x, y, w, h).
pub fn scan_bbox(mask: &Mask) -> Option<(u32, u32, u32, u32)> {
    let mut ext: Option<(u32, u32, u32, u32)> = None;
    for r in 0..mask.height() {
        for c in 0..mask.width() {
            if mask.get(c, r) {
                ext = Some(match ext {
                    None => (c, r, c, r),
                    Some((a, b, x, y)) => (a.min(c), b.min(r), x.max(c), y.max(r)),
                });
            }
        }
    }
    ext.map(|(x0, y0, x1, y1)| (x0, y0, x1 - x0 + 1, y1 - y0 + 1))
}

/// Decodes COCO RLE counts by expanding runs into a flat column-major vector.
pub fn decode_rle(height: u32, width: u32, counts: &[u64]) -> Mask {
    let mut flat = Vec::new();
    for (i, &n) in counts.iter().enumerate() {
        flat.extend(std::iter::repeat_n(i % 2 == 1, n as usize));
    }
    assert_eq!(
        flat.len(),
        (height * width) as usize,
        "RLE counts do not cover the image"
    );
    Mask::from_fn(width, height, |c, r| flat[(c * height + r) as usize])
}

// ---------------------------------------------------------- COCO schema

/// Walks raw COCO JSON checking field presence, types and referential
/// integrity without using the crate's types.
pub fn coco_schema_walk(v: &serde_json::Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("top level is not an object")?;
    let arr = |k: &str| {
        obj.get(k)
            .and_then(|x| x.as_array())
            .ok_or(format!("missing array `{k}`"))
    };
    let (images, anns, cats) = (arr("images")?, arr("annotations")?, arr("categories")?);
    if cats.len() != 1 {
        return Err(format!("{} categories", cats.len()));
    }
    let cat_id = cats[0]["id"].as_u64().ok_or("category id")?;
    cats[0]["name"].as_str().ok_or("category name")?;
    let mut dims = std::collections::HashMap::new();
    for im in images {
        let id = im["id"].as_u64().ok_or("image id")?;
        im["file_name"].as_str().ok_or("file_name")?;
        let w = im["width"].as_u64().ok_or("width")?;
        let h = im["height"].as_u64().ok_or("height")?;
        if dims.insert(id, (w, h)).is_some() {
            return Err(format!("duplicate image id {id}"));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for a in anns {
        let id = a["id"].as_u64().ok_or("annotation id")?;
        if !seen.insert(id) {
            return Err(format!("duplicate annotation id {id}"));
        }
        let image = a["image_id"].as_u64().ok_or("image_id")?;
        let &(w, h) = dims
            .get(&image)
            .ok_or(format!("dangling image_id {image}"))?;
        if a["category_id"].as_u64() != Some(cat_id) {
            return Err("bad category_id".into());
        }
        if a["iscrowd"].as_u64() != Some(0) {
            return Err("iscrowd must be 0".into());
        }
        let b: Vec<f64> = a["bbox"]
            .as_array()
            .ok_or("bbox")?
            .iter()
            .filter_map(|x| x.as_f64())
            .collect();
        if b.len() != 4
            || b[2] < 1.0
            || b[3] < 1.0
            || b[0] + b[2] > w as f64
            || b[1] + b[3] > h as f64
        {
            return Err(format!("bad bbox {b:?}"));
        }
        let area = a["area"].as_f64().ok_or("area")?;
        let seg = &a["segmentation"];
        let size: Vec<u64> = seg["size"]
            .as_array()
            .ok_or("segmentation.size")?
            .iter()
            .filter_map(|x| x.as_u64())
            .collect();
        let counts: Vec<u64> = seg["counts"]
            .as_array()
            .ok_or("segmentation.counts")?
            .iter()
            .filter_map(|x| x.as_u64())
            .collect();
        if size != [h, w] {
            return Err("segmentation size".into());
        }
        let ones: u64 = counts.iter().skip(1).step_by(2).sum();
        if ones as f64 != area {
            return Err(format!("area {area} != RLE ones {ones}"));
        }
    }
    Ok(())
}

// ------------------------------------------------------ COCO evaluation

#[derive(Debug, Clone)]
pub struct OGt {
    pub image: u64,
    pub bbox: [f64; 4],
    pub area: f64,
}

#[derive(Debug, Clone)]
pub struct ODet {
    pub image: u64,
    pub bbox: [f64; 4],
    pub score: f64,
}

/// Threshold values exactly as numpy.linspace(0.5, 0.95, 10) prints them.
pub const IOU_T: [f64; 10] = [
    0.5,
    0.55,
    0.6,
    0.65,
    0.7,
    0.75,
    0.8,
    0.85,
    0.8999999999999999,
    0.95,
];

fn o_iou(a: [f64; 4], b: [f64; 4]) -> f64 {
    let w = (a[0] + a[2]).min(b[0] + b[2]) - a[0].max(b[0]);
    let h = (a[1] + a[3]).min(b[1] + b[3]) - a[1].max(b[1]);
    if w <= 0.0 || h <= 0.0 {
        return 0.0;
    }
    let i = w * h;
    i / (a[2] * a[3] + b[2] * b[3] - i)
}

#[derive(Clone, Copy, PartialEq)]
enum Outcome {
    Tp,
    Fp,
    Ignored,
}

/// Straight-line implementation of the protocol as written: per stratum and
/// threshold, match every image, rank all retained detections, and read the
/// interpolated precision at each recall point as the best precision at any
/// rank whose recall reaches it. Returns [AP, AP50, AP75, AP_s, AP_m] in
/// percent with -1 for strata without ground truth.
pub fn brute_eval(images: &[u64], gts: &[OGt], dets: &[ODet]) -> [f64; 5] {
    type Stratum = fn(f64) -> bool;
    let strata: [Stratum; 3] = [|_| true, |a| a < 1024.0, |a| (1024.0..9216.0).contains(&a)];
    let mut sorted_images = images.to_vec();
    sorted_images.sort();

    let mut curves: Vec<Vec<Option<Vec<f64>>>> = Vec::new();
    for stratum in strata {
        let mut per_t = Vec::new();
        for t in IOU_T {
            let thr = t.min(1.0 - 1e-10);
            let mut ranked: Vec<(f64, Outcome)> = Vec::new();
            let mut npos = 0usize;
            for &im in &sorted_images {
                let g: Vec<&OGt> = gts.iter().filter(|x| x.image == im).collect();
                let ign: Vec<bool> = g.iter().map(|x| !stratum(x.area)).collect();
                npos += ign.iter().filter(|i| !**i).count();
                let mut d: Vec<&ODet> = dets.iter().filter(|x| x.image == im).collect();
                // Stable: equal scores keep input order.
                d.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap());
                d.truncate(100);
                let mut taken = vec![false; g.len()];
                for det in d {
                    let pick = |want_ignored: bool, taken: &[bool]| -> Option<usize> {
                        let mut best: Option<(usize, f64)> = None;
                        for (k, gt) in g.iter().enumerate() {
                            if taken[k] || ign[k] != want_ignored {
                                continue;
                            }
                            let v = o_iou(det.bbox, gt.bbox);
                            if v >= thr && best.is_none_or(|(_, bv)| v >= bv) {
                                best = Some((k, v));
                            }
                        }
                        best.map(|b| b.0)
                    };
                    let m = pick(false, &taken).or_else(|| pick(true, &taken));
                    let outcome = match m {
                        Some(k) => {
                            taken[k] = true;
                            if ign[k] {
                                Outcome::Ignored
                            } else {
                                Outcome::Tp
                            }
                        }
                        None if !stratum(det.bbox[2] * det.bbox[3]) => Outcome::Ignored,
                        None => Outcome::Fp,
                    };
                    ranked.push((det.score, outcome));
                }
            }
            if npos == 0 {
                per_t.push(None);
                continue;
            }
            ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let (mut tp, mut fp) = (0usize, 0usize);
            let mut points = Vec::new();
            for (_, o) in &ranked {
                match o {
                    Outcome::Tp => tp += 1,
                    Outcome::Fp => fp += 1,
                    Outcome::Ignored => {}
                }
                let p = if tp + fp == 0 {
                    0.0
                } else {
                    tp as f64 / (tp + fp) as f64
                };
                points.push((tp as f64 / npos as f64, p));
            }
            let curve = (0..=100)
                .map(|i| {
                    let r = i as f64 * 0.01;
                    points
                        .iter()
                        .filter(|(rc, _)| *rc >= r)
                        .map(|(_, p)| *p)
                        .fold(0.0, f64::max)
                })
                .collect();
            per_t.push(Some(curve));
        }
        curves.push(per_t);
    }
    let mean = |cs: Vec<&Option<Vec<f64>>>| {
        let v: Vec<f64> = cs.into_iter().flatten().flatten().copied().collect();
        if v.is_empty() {
            -1.0
        } else {
            100.0 * v.iter().sum::<f64>() / v.len() as f64
        }
    };
    [
        mean(curves[0].iter().collect()),
        mean(vec![&curves[0][0]]),
        mean(vec![&curves[0][5]]),
        mean(curves[1].iter().collect()),
        mean(curves[2].iter().collect()),
    ]
}

/// Random small instance: up to `max_images` images, up to 10 gts and 20
/// detections per image, coarse scores (ties) and exact duplicates.
pub fn random_eval_instance(
    rng: &mut ChaCha8Rng,
    max_images: u64,
) -> (Vec<u64>, Vec<OGt>, Vec<ODet>) {
    let n = rng.random_range(1..=max_images);
    let images: Vec<u64> = (0..n).map(|i| 10 + 3 * i).collect();
    let (mut gts, mut dets) = (Vec::new(), Vec::new());
    for &im in &images {
        let mut mine = Vec::new();
        for _ in 0..rng.random_range(0..=10) {
            let w = match rng.random_range(0..3) {
                0 => rng.random_range(4.0..31.0),
                1 => rng.random_range(33.0..94.0),
                _ => rng.random_range(97.0..150.0),
            };
            let w: f64 = (w * 4.0_f64).round() / 4.0;
            let h = (w * rng.random_range(0.6..1.4) * 4.0_f64).round() / 4.0;
            let b = [
                rng.random_range(0.0..300.0_f64).round(),
                rng.random_range(0.0..300.0_f64).round(),
                w,
                h,
            ];
            let area = (w * h * rng.random_range(0.55..1.0) * 4.0_f64).round() / 4.0;
            mine.push(b);
            gts.push(OGt {
                image: im,
                bbox: b,
                area,
            });
        }
        for _ in 0..rng.random_range(0..=20) {
            let b = if !mine.is_empty() && rng.random_bool(0.7) {
                let g = mine[rng.random_range(0..mine.len())];
                if rng.random_bool(0.2) {
                    g
                } else {
                    let j = |s: f64, r: &mut ChaCha8Rng| {
                        (r.random_range(-s..s) * 4.0_f64).round() / 4.0
                    };
                    [
                        g[0] + j(0.2 * g[2], rng),
                        g[1] + j(0.2 * g[3], rng),
                        (g[2] + j(0.2 * g[2], rng)).max(1.0),
                        (g[3] + j(0.2 * g[3], rng)).max(1.0),
                    ]
                }
            } else {
                let w = rng.random_range(2.0..140.0_f64).round();
                [
                    rng.random_range(0.0..300.0_f64).round(),
                    rng.random_range(0.0..300.0_f64).round(),
                    w,
                    (w * rng.random_range(0.5..1.5)).round().max(1.0),
                ]
            };
            let score = (rng.random_range(0.0..1.0_f64) * 10.0).round() / 10.0;
            dets.push(ODet {
                image: im,
                bbox: b,
                score,
            });
        }
    }
    (images, gts, dets)
}

pub fn to_crate_inputs(
    images: &[u64],
    gts: &[OGt],
    dets: &[ODet],
) -> (
    seadronesim::annotate::CocoDataset,
    Vec<seadronesim::cocoeval::Detection>,
) {
    use seadronesim::annotate::{CocoAnnotation, CocoCategory, CocoDataset, CocoImage};
    let ds = CocoDataset {
        images: images
            .iter()
            .map(|&id| CocoImage {
                id,
                file_name: format!("{id}.png"),
                width: 500,
                height: 500,
            })
            .collect(),
        annotations: gts
            .iter()
            .enumerate()
            .map(|(i, g)| CocoAnnotation {
                id: i as u64 + 1,
                image_id: g.image,
                category_id: 1,
                bbox: g.bbox,
                area: g.area,
                iscrowd: 0,
                segmentation: None,
            })
            .collect(),
        categories: vec![CocoCategory {
            id: 1,
            name: "bluerov".into(),
            supercategory: String::new(),
        }],
    };
    let preds = dets
        .iter()
        .map(|d| seadronesim::cocoeval::Detection {
            image_id: d.image,
            category_id: 1,
            bbox: d.bbox,
            score: d.score,
        })
        .collect();
    (ds, preds)
}

// ------------------------------------------------------------- geometry

/// Pixel diameter of a sphere's silhouette seen head-on by a pinhole camera:
/// the tangent cone has half-angle asin(R / D), projected with focal f.
pub fn sphere_silhouette_diameter_px(radius: f64, distance: f64, focal_px: f64) -> f64 {
    let half = (radius / distance).asin();
    2.0 * focal_px * half.tan()
}

pub fn focal_px(height_px: u32, vfov_rad: f64) -> f64 {
    0.5 * height_px as f64 / (0.5 * vfov_rad).tan()
}

/// Every regular file under `dir`, keyed by relative path.
pub fn file_tree(dir: &std::path::Path) -> std::collections::BTreeMap<std::path::PathBuf, Vec<u8>> {
    walkdir::WalkDir::new(dir)
        .into_iter()
        .map(|e| e.unwrap())
        .filter(|e| e.file_type().is_file())
        .map(|e| {
            (
                e.path().strip_prefix(dir).unwrap().to_path_buf(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}
