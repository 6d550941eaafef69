//! Dataset campaigns: sweep altitude, water color, turbidity and size,
//! render every planned frame, resize, split and write COCO dataset trees.

mod plan;
mod resize;
mod run;
mod spec;
mod split;

use std::path::PathBuf;

pub use plan::{plan_campaign, CampaignPlan, DatasetPlan, Job, JobSource};
pub use resize::{resize_area, resize_mask_nearest, resize_with_annotations};
pub use run::{
    run_campaign, DatasetManifest, DatasetSummary, FrameProvenance, Progress, RunOptions,
    INCOMPLETE_MARKER,
};
pub use spec::{
    CampaignSpec, Cell, ExtraPool, MixSpec, OrbitRule, DEFAULT_FRAMES_PER_CELL,
    DEFAULT_NATIVE_SIZE, DEFAULT_OUTPUT_SIZE, DEFAULT_SPLIT_RATIO, MIN_OUTPUT_SIZE, TILT_RANGE_DEG,
};
pub use split::{name_hash, split_dataset, train_count};

use crate::annotate::AnnotateError;
use crate::pipeline::FrameError;
use crate::scene::SceneError;

#[derive(Debug, thiserror::Error)]
pub enum CampaignError {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("scene template: {0}")]
    Scene(#[from] SceneError),
    #[error("cannot split {0} item(s); need at least 2")]
    TooFewToSplit(usize),
    #[error("job {job_id} failed: {source}")]
    Job {
        job_id: u64,
        source: Box<FrameError>,
    },
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
}
