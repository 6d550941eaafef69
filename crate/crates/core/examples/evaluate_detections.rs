//! Scores COCO-format detections against a ground-truth dataset and prints
//! the AP table. Defaults to the bundled randomized fixture.
//!
//! cargo run --example evaluate_detections -- [gt.json] [predictions.json]

use std::path::PathBuf;

use seadronesim::annotate::CocoDataset;
use seadronesim::cocoeval::{evaluate, read_detections};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut args = std::env::args().skip(1);
    let gt = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| fixtures.join("eval_random_gt.json"));
    let preds = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| fixtures.join("eval_random_predictions.json"));

    let report = evaluate(
        &CocoDataset::from_json_file(&gt)?,
        &read_detections(&preds)?,
    )?;
    print!("{}", report.to_table());
    for curve in report.pr_curves.iter().step_by(3) {
        println!(
            "IoU {:.2}: final recall {:.3}, precision at recall 0.25 {:.3}",
            curve.iou_threshold, curve.recall, curve.precision[25]
        );
    }
    Ok(())
}
