//! COCO-style box detection metrics: IoU, greedy matching, 101-point
//! interpolated AP over IoU 0.50:0.05:0.95 and area-stratified AP.

mod evaluate;
mod matching;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use evaluate::{
    average_precision, evaluate, iou_thresholds, recall_thresholds, ApReport, AreaRange, PrCurve,
    MAX_DETS, MEDIUM_AREA, RECALL_POINTS, SMALL_AREA,
};
pub use matching::{iou, match_detections, Matching};

/// One record of a COCO results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub image_id: u64,
    pub category_id: u64,
    /// `[x, y, w, h]` in pixels.
    pub bbox: [f64; 4],
    pub score: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("degenerate box {0:?}")]
    DegenerateBox([f64; 4]),
    #[error("non-finite score {0}")]
    BadScore(f64),
    #[error("record {index}: non-finite score {score}")]
    BadScoreAt { index: usize, score: f64 },
    #[error("record {index}: unknown image_id {image_id}")]
    UnknownImage { index: usize, image_id: u64 },
    #[error("record {index}: unknown category_id {category_id}")]
    UnknownCategory { index: usize, category_id: u64 },
    #[error("record {index}: malformed bbox {bbox:?}")]
    MalformedBox { index: usize, bbox: [f64; 4] },
    #[error("record {index}: {message}")]
    Schema { index: usize, message: String },
    #[error("ground truth must have exactly one category, found {0}")]
    Categories(usize),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
}

impl EvalError {
    /// Index of the offending input record, when there is one.
    pub fn record_index(&self) -> Option<usize> {
        match self {
            EvalError::BadScoreAt { index, .. }
            | EvalError::UnknownImage { index, .. }
            | EvalError::UnknownCategory { index, .. }
            | EvalError::MalformedBox { index, .. }
            | EvalError::Schema { index, .. } => Some(*index),
            _ => None,
        }
    }
}

pub fn read_detections(path: &Path) -> Result<Vec<Detection>, EvalError> {
    let text = std::fs::read_to_string(path).map_err(|e| EvalError::Io(path.to_path_buf(), e))?;
    parse_detections(&text)
}

/// Parses a results array; a schema error names the offending record.
pub fn parse_detections(text: &str) -> Result<Vec<Detection>, EvalError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| {
            serde_json::from_value(v).map_err(|e| EvalError::Schema {
                index: i,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn write_detections(dets: &[Detection], path: &Path) -> Result<(), EvalError> {
    std::fs::write(path, serde_json::to_string(dets)?)
        .map_err(|e| EvalError::Io(path.to_path_buf(), e))
}

pub fn write_report(report: &ApReport, path: &Path) -> Result<(), EvalError> {
    std::fs::write(path, serde_json::to_string_pretty(report)? + "\n")
        .map_err(|e| EvalError::Io(path.to_path_buf(), e))
}
