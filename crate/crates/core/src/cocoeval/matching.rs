use super::EvalError;

/// Intersection over union of two `xywh` boxes.
pub fn iou(a: [f64; 4], b: [f64; 4]) -> Result<f64, EvalError> {
    check_box(a)?;
    check_box(b)?;
    Ok(overlap(a, b, false))
}

pub(crate) fn check_box(b: [f64; 4]) -> Result<(), EvalError> {
    if b.iter().all(|v| v.is_finite()) && b[2] > 0.0 && b[3] > 0.0 {
        Ok(())
    } else {
        Err(EvalError::DegenerateBox(b))
    }
}

/// IoU, or intersection over the detection area when the gt is a crowd region.
pub(crate) fn overlap(det: [f64; 4], gt: [f64; 4], crowd: bool) -> f64 {
    let iw = (det[0] + det[2]).min(gt[0] + gt[2]) - det[0].max(gt[0]);
    let ih = (det[1] + det[3]).min(gt[1] + gt[3]) - det[1].max(gt[1]);
    if iw <= 0.0 || ih <= 0.0 {
        return 0.0;
    }
    let inter = iw * ih;
    let union = if crowd {
        det[2] * det[3]
    } else {
        det[2] * det[3] + gt[2] * gt[3] - inter
    };
    inter / union
}

/// Outcome of greedy matching for one image at one IoU threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Detection indices in processing order (score descending, stable).
    pub order: Vec<usize>,
    /// Per detection (input order): matched gt index, if any.
    pub det_match: Vec<Option<usize>>,
    /// Per gt (input order): matching detection index, if any.
    pub gt_match: Vec<Option<usize>>,
}

impl Matching {
    pub fn is_tp(&self, det: usize) -> bool {
        self.det_match[det].is_some()
    }
}

/// Indices sorted by descending score; equal scores keep input order.
pub(crate) fn score_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

/// Score-ordered greedy matching of `(bbox, score)` detections to gt boxes.
/// Each detection takes the still-unmatched gt with the highest IoU at or
/// above `threshold`; on equal IoU the later gt wins.
pub fn match_detections(
    dets: &[([f64; 4], f64)],
    gts: &[[f64; 4]],
    threshold: f64,
) -> Result<Matching, EvalError> {
    for &(b, s) in dets {
        check_box(b)?;
        if !s.is_finite() {
            return Err(EvalError::BadScore(s));
        }
    }
    for &g in gts {
        check_box(g)?;
    }
    let scores: Vec<f64> = dets.iter().map(|d| d.1).collect();
    let order = score_order(&scores);
    let ious: Vec<Vec<f64>> = dets
        .iter()
        .map(|d| gts.iter().map(|&g| overlap(d.0, g, false)).collect())
        .collect();
    let flags = vec![GtFlags::default(); gts.len()];
    let (det_match, gt_match) = greedy(&order, &ious, &flags, threshold);
    Ok(Matching {
        order,
        det_match,
        gt_match,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct GtFlags {
    pub ignore: bool,
    pub crowd: bool,
}

/// The core protocol. `flags` must list non-ignored gts before ignored ones,
/// which is how the caller orders them.
pub(crate) fn greedy(
    order: &[usize],
    ious: &[Vec<f64>],
    flags: &[GtFlags],
    threshold: f64,
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut det_match = vec![None; ious.len()];
    let mut gt_match: Vec<Option<usize>> = vec![None; flags.len()];
    for &d in order {
        let mut best_iou = threshold.min(1.0 - 1e-10);
        let mut m: Option<usize> = None;
        for (g, f) in flags.iter().enumerate() {
            if gt_match[g].is_some() && !f.crowd {
                continue;
            }
            if let Some(mi) = m {
                if !flags[mi].ignore && f.ignore {
                    break;
                }
            }
            if ious[d][g] < best_iou {
                continue;
            }
            best_iou = ious[d][g];
            m = Some(g);
        }
        if let Some(g) = m {
            det_match[d] = Some(g);
            gt_match[g] = Some(d);
        }
    }
    (det_match, gt_match)
}
