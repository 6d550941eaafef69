use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matching::{check_box, greedy, overlap, score_order, GtFlags};
use super::{Detection, EvalError};
use crate::annotate::CocoDataset;

pub const MAX_DETS: usize = 100;
pub const RECALL_POINTS: usize = 101;
pub const SMALL_AREA: f64 = 32.0 * 32.0;
pub const MEDIUM_AREA: f64 = 96.0 * 96.0;

/// `0.50, 0.55, ..., 0.95`, bit-identical to `numpy.linspace(0.5, 0.95, 10)`
/// so IoUs landing exactly on a threshold are classified the same way.
pub fn iou_thresholds() -> [f64; 10] {
    linspace(0.5, 0.95)
}

/// `0.00, 0.01, ..., 1.00`, as `numpy.linspace(0, 1, 101)`.
pub fn recall_thresholds() -> [f64; RECALL_POINTS] {
    linspace(0.0, 1.0)
}

fn linspace<const N: usize>(start: f64, stop: f64) -> [f64; N] {
    let step = (stop - start) / (N - 1) as f64;
    std::array::from_fn(|i| {
        if i == N - 1 {
            stop
        } else {
            i as f64 * step + start
        }
    })
}

/// Ground-truth area strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaRange {
    All,
    Small,
    Medium,
    Large,
}

impl AreaRange {
    pub const ALL: [AreaRange; 4] = [
        AreaRange::All,
        AreaRange::Small,
        AreaRange::Medium,
        AreaRange::Large,
    ];

    pub fn contains(self, area: f64) -> bool {
        match self {
            AreaRange::All => true,
            AreaRange::Small => area < SMALL_AREA,
            AreaRange::Medium => (SMALL_AREA..MEDIUM_AREA).contains(&area),
            AreaRange::Large => area >= MEDIUM_AREA,
        }
    }
}

/// 101-point interpolated AP of a ranked TP/FP list, in [0, 1]; -1 when
/// `num_gt` is zero.
pub fn average_precision(tp: &[bool], num_gt: usize) -> f64 {
    if num_gt == 0 {
        return -1.0;
    }
    let ranked: Vec<Option<bool>> = tp.iter().map(|&t| Some(t)).collect();
    let curve = precision_curve(&ranked, num_gt);
    curve.iter().sum::<f64>() / RECALL_POINTS as f64
}

/// Envelope precision at each recall threshold. `None` entries are ranked but
/// ignored detections: they count as neither TP nor FP.
fn precision_curve(ranked: &[Option<bool>], num_gt: usize) -> [f64; RECALL_POINTS] {
    let n = ranked.len();
    let mut rc = Vec::with_capacity(n);
    let mut pr = Vec::with_capacity(n);
    let (mut tp, mut fp) = (0.0f64, 0.0f64);
    for r in ranked {
        match r {
            Some(true) => tp += 1.0,
            Some(false) => fp += 1.0,
            None => {}
        }
        rc.push(tp / num_gt as f64);
        pr.push(if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 });
    }
    for i in (1..n).rev() {
        if pr[i] > pr[i - 1] {
            pr[i - 1] = pr[i];
        }
    }
    let mut q = [0.0; RECALL_POINTS];
    for (slot, r) in q.iter_mut().zip(recall_thresholds()) {
        let i = rc.partition_point(|&x| x < r);
        if i < n {
            *slot = pr[i];
        }
    }
    q
}

/// Precision-recall curve at one IoU threshold over all areas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrCurve {
    pub iou_threshold: f64,
    /// Final recall reached, or -1 without ground truth.
    pub recall: f64,
    /// Envelope precision at recalls 0.00..=1.00; all -1 without ground truth.
    pub precision: Vec<f64>,
}

/// Summary in percent. Strata without ground truth report -1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApReport {
    #[serde(rename = "AP")]
    pub ap: f64,
    #[serde(rename = "AP50")]
    pub ap50: f64,
    #[serde(rename = "AP75")]
    pub ap75: f64,
    #[serde(rename = "AP_s")]
    pub ap_s: f64,
    #[serde(rename = "AP_m")]
    pub ap_m: f64,
    /// Computed but left out of the serialized report and table.
    #[serde(skip)]
    pub ap_l: f64,
    pub pr_curves: Vec<PrCurve>,
}

impl ApReport {
    /// The five reported columns in table order.
    pub fn columns(&self) -> [f64; 5] {
        [self.ap, self.ap50, self.ap75, self.ap_s, self.ap_m]
    }

    pub fn to_table(&self) -> String {
        let head = ["AP", "AP50", "AP75", "AP_s", "AP_m"]
            .map(|h| format!("{h:>7}"))
            .join("");
        let row = self
            .columns()
            .map(|v| {
                if v < 0.0 {
                    format!("{:>7}", "-")
                } else {
                    format!("{v:>7.2}")
                }
            })
            .join("");
        format!("{head}\n{row}\n")
    }
}

/// Ranked result of one detection for one (area, threshold) cell.
#[derive(Debug, Clone, Copy)]
struct Ranked {
    score: f64,
    outcome: Option<bool>,
}

/// Per-image evaluation: for every area range and threshold, the image's
/// retained detections in rank order, plus the non-ignored gt count per area.
struct ImageEval {
    cells: Vec<Vec<Vec<Ranked>>>,
    num_gt: [usize; 4],
}

fn evaluate_image(
    gts: &[([f64; 4], f64, bool)],
    dets: &[([f64; 4], f64)],
    thresholds: &[f64],
) -> ImageEval {
    let scores: Vec<f64> = dets.iter().map(|d| d.1).collect();
    let mut order = score_order(&scores);
    order.truncate(MAX_DETS);
    let mut cells = Vec::with_capacity(4);
    let mut num_gt = [0; 4];
    for (ai, area) in AreaRange::ALL.into_iter().enumerate() {
        let ignored = |g: &([f64; 4], f64, bool)| g.2 || !area.contains(g.1);
        // Non-ignored gts first, stable within each group.
        let mut gt_idx: Vec<usize> = (0..gts.len()).collect();
        gt_idx.sort_by_key(|&g| ignored(&gts[g]));
        num_gt[ai] = gt_idx.iter().filter(|&&g| !ignored(&gts[g])).count();
        let flags: Vec<GtFlags> = gt_idx
            .iter()
            .map(|&g| GtFlags {
                ignore: ignored(&gts[g]),
                crowd: gts[g].2,
            })
            .collect();
        let ious: Vec<Vec<f64>> = dets
            .iter()
            .map(|d| {
                gt_idx
                    .iter()
                    .map(|&g| overlap(d.0, gts[g].0, gts[g].2))
                    .collect()
            })
            .collect();
        let per_t = thresholds
            .iter()
            .map(|&t| {
                let (det_match, _) = greedy(&order, &ious, &flags, t);
                order
                    .iter()
                    .map(|&d| {
                        let outcome = match det_match[d] {
                            Some(g) if flags[g].ignore => None,
                            Some(_) => Some(true),
                            None if !area.contains(dets[d].0[2] * dets[d].0[3]) => None,
                            None => Some(false),
                        };
                        Ranked {
                            score: dets[d].1,
                            outcome,
                        }
                    })
                    .collect()
            })
            .collect();
        cells.push(per_t);
    }
    ImageEval { cells, num_gt }
}

/// COCO bbox evaluation of `preds` against `gt`, single category.
pub fn evaluate(gt: &CocoDataset, preds: &[Detection]) -> Result<ApReport, EvalError> {
    let category = match gt.categories.as_slice() {
        [c] => c.id,
        cats => return Err(EvalError::Categories(cats.len())),
    };
    let mut image_ids: Vec<u64> = gt.images.iter().map(|im| im.id).collect();
    image_ids.sort_unstable();
    let slot: HashMap<u64, usize> = image_ids
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i))
        .collect();

    let mut gts_by_image: Vec<Vec<([f64; 4], f64, bool)>> = vec![Vec::new(); image_ids.len()];
    for (i, a) in gt.annotations.iter().enumerate() {
        let &s = slot.get(&a.image_id).ok_or(EvalError::UnknownImage {
            index: i,
            image_id: a.image_id,
        })?;
        check_box(a.bbox).map_err(|_| EvalError::MalformedBox {
            index: i,
            bbox: a.bbox,
        })?;
        if a.category_id == category {
            gts_by_image[s].push((a.bbox, a.area, a.iscrowd != 0));
        }
    }
    let mut dets_by_image: Vec<Vec<([f64; 4], f64)>> = vec![Vec::new(); image_ids.len()];
    for (i, d) in preds.iter().enumerate() {
        let &s = slot.get(&d.image_id).ok_or(EvalError::UnknownImage {
            index: i,
            image_id: d.image_id,
        })?;
        check_box(d.bbox).map_err(|_| EvalError::MalformedBox {
            index: i,
            bbox: d.bbox,
        })?;
        if !d.score.is_finite() {
            return Err(EvalError::BadScoreAt {
                index: i,
                score: d.score,
            });
        }
        if d.category_id != category {
            return Err(EvalError::UnknownCategory {
                index: i,
                category_id: d.category_id,
            });
        }
        dets_by_image[s].push((d.bbox, d.score));
    }

    let thresholds = iou_thresholds();
    let per_image: Vec<ImageEval> = gts_by_image
        .par_iter()
        .zip(dets_by_image.par_iter())
        .map(|(g, d)| evaluate_image(g, d, &thresholds))
        .collect();

    // precision[area][threshold] = 101-point curve, or None without gt.
    let mut precision: Vec<Vec<Option<[f64; RECALL_POINTS]>>> = Vec::new();
    let mut recall_all = Vec::new();
    for ai in 0..4 {
        let num_gt: usize = per_image.iter().map(|e| e.num_gt[ai]).sum();
        let mut row = Vec::new();
        for ti in 0..thresholds.len() {
            // Image order then in-image rank, re-sorted stably by score.
            let ranked: Vec<Ranked> = per_image
                .iter()
                .flat_map(|e| e.cells[ai][ti].iter().copied())
                .collect();
            let scores: Vec<f64> = ranked.iter().map(|r| r.score).collect();
            let outcomes: Vec<Option<bool>> = score_order(&scores)
                .into_iter()
                .map(|i| ranked[i].outcome)
                .collect();
            if num_gt == 0 {
                row.push(None);
                if ai == 0 {
                    recall_all.push(-1.0);
                }
                continue;
            }
            if ai == 0 {
                let tp = outcomes.iter().filter(|o| **o == Some(true)).count();
                recall_all.push(tp as f64 / num_gt as f64);
            }
            row.push(Some(precision_curve(&outcomes, num_gt)));
        }
        precision.push(row);
    }

    let mean = |curves: &[&Option<[f64; RECALL_POINTS]>]| -> f64 {
        let vals: Vec<f64> = curves
            .iter()
            .filter_map(|c| c.as_ref())
            .flat_map(|c| c.iter().copied())
            .collect();
        if vals.is_empty() {
            -1.0
        } else {
            100.0 * vals.iter().sum::<f64>() / vals.len() as f64
        }
    };
    let over_all = |ai: usize| mean(&precision[ai].iter().collect::<Vec<_>>());
    let at = |ti: usize| mean(&[&precision[0][ti]]);

    let pr_curves = thresholds
        .iter()
        .enumerate()
        .map(|(ti, &t)| PrCurve {
            iou_threshold: t,
            recall: recall_all[ti],
            precision: precision[0][ti].map_or(vec![-1.0; RECALL_POINTS], |c| c.to_vec()),
        })
        .collect();

    Ok(ApReport {
        ap: over_all(0),
        ap50: at(0),
        ap75: at(5),
        ap_s: over_all(1),
        ap_m: over_all(2),
        ap_l: over_all(3),
        pr_curves,
    })
}
