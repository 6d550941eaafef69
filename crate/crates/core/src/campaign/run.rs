//! Campaign execution and the on-disk dataset tree.
//!
//! ```text
//! <out>/<dataset>/images/frame_000000.png
//!                /masks/frame_000000.png
//!                /meta/frame_000000.meta.json
//!                /annotations/train.json
//!                /annotations/val.json
//!                /manifest.json
//! ```
//!
//! A dataset directory holding a `.incomplete` file was not finished.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::{CampaignPlan, Job};
use super::resize::resize_with_annotations;
use super::split::{name_hash, split_dataset};
use super::CampaignError;
use crate::annotate::{
    annotate_mask, assemble_coco, write_meta_sidecar, AnnotatedImage, FrameAnnotation,
};
use crate::pipeline::{render_spec_in_current_pool, FrameError};
use crate::render::{io, FrameMeta};
use crate::scene::{Turbidity, WaterColor};

pub const INCOMPLETE_MARKER: &str = ".incomplete";

/// Provenance of one image in a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameProvenance {
    pub file_name: String,
    pub job_id: u64,
    /// Grid dataset or extra pool the job was planned for.
    pub source: String,
    pub altitude_m: f64,
    pub color: WaterColor,
    pub turbidity: Turbidity,
    pub orbit_angle: f64,
    pub object_yaw: f64,
    pub object_pitch: f64,
    pub object_roll: f64,
    pub annotated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub dataset: String,
    pub campaign_seed: u64,
    pub split_ratio: f64,
    pub split_seed: u64,
    pub output_size: u32,
    pub native_size: u32,
    pub train: Vec<String>,
    pub val: Vec<String>,
    pub frames: Vec<FrameProvenance>,
}

/// Progress notification after each finished job.
#[derive(Debug, Clone)]
pub struct Progress<'a> {
    pub job: &'a Job,
    /// Jobs finished so far for the job's source (grid dataset or pool).
    pub done_in_source: usize,
    pub source_total: usize,
    pub done: usize,
    pub total: usize,
}

pub struct RunOptions<'a> {
    pub workers: usize,
    pub progress: Option<&'a (dyn Fn(&Progress<'_>) + Sync)>,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        RunOptions {
            workers: crate::pipeline::default_workers(),
            progress: None,
        }
    }
}

/// Finished dataset summary.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSummary {
    pub name: String,
    pub dir: PathBuf,
    pub train: usize,
    pub val: usize,
    pub annotations: usize,
}

struct JobResult {
    annotation: Option<FrameAnnotation>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CampaignError + '_ {
    move |e| CampaignError::Io(path.to_path_buf(), e)
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CampaignError> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n").map_err(io_err(path))
}

/// Renders every job, writes each dataset tree under `out` and returns the
/// per-dataset counts. Output is identical for any worker count.
pub fn run_campaign(
    plan: &CampaignPlan,
    out: &Path,
    opts: &RunOptions<'_>,
) -> Result<Vec<DatasetSummary>, CampaignError> {
    let spec = &plan.spec;
    let dirs: Vec<PathBuf> = plan.datasets.iter().map(|d| out.join(&d.name)).collect();
    for dir in &dirs {
        for sub in ["images", "masks", "meta", "annotations"] {
            let p = dir.join(sub);
            std::fs::create_dir_all(&p).map_err(io_err(&p))?;
        }
        let marker = dir.join(INCOMPLETE_MARKER);
        std::fs::write(&marker, "").map_err(io_err(&marker))?;
    }

    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); plan.jobs.len()];
    for (di, d) in plan.datasets.iter().enumerate() {
        for &j in &d.jobs {
            member_of[j as usize].push(di);
        }
    }
    let mut source_totals = std::collections::HashMap::new();
    for job in &plan.jobs {
        *source_totals
            .entry(job.source.name().to_string())
            .or_insert(0usize) += 1;
    }
    let source_done: std::collections::HashMap<String, AtomicUsize> = source_totals
        .keys()
        .map(|k| (k.clone(), AtomicUsize::new(0)))
        .collect();
    let done = AtomicUsize::new(0);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| CampaignError::Pool(e.to_string()))?;
    let results: Vec<JobResult> = pool.install(|| {
        plan.jobs
            .par_iter()
            .map(|job| {
                let result = run_job(plan, job, &member_of[job.id as usize], &dirs)?;
                let name = job.source.name();
                let in_source = source_done[name].fetch_add(1, Ordering::Relaxed) + 1;
                let all = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(cb) = opts.progress {
                    cb(&Progress {
                        job,
                        done_in_source: in_source,
                        source_total: source_totals[name],
                        done: all,
                        total: plan.jobs.len(),
                    });
                }
                Ok(result)
            })
            .collect::<Result<_, CampaignError>>()
    })?;

    let mut summaries = Vec::with_capacity(plan.datasets.len());
    for (d, dir) in plan.datasets.iter().zip(&dirs) {
        let split_seed = spec.seed ^ name_hash(&d.name);
        let (train, val) = split_dataset(&d.jobs, spec.split_ratio, split_seed)?;
        let size = spec.output_size;
        let file = |id: u64| format!("{}.png", plan.job(id).file_stem());
        let write_split = |ids: &[u64], name: &str| -> Result<usize, CampaignError> {
            let names: Vec<String> = ids.iter().map(|&id| file(id)).collect();
            let records: Vec<AnnotatedImage<'_>> = ids
                .iter()
                .zip(&names)
                .map(|(&id, n)| AnnotatedImage {
                    file_name: n,
                    width: size,
                    height: size,
                    annotation: results[id as usize].annotation.as_ref(),
                })
                .collect();
            let coco = assemble_coco(&records, &spec.category);
            coco.validate()?;
            let path = dir.join("annotations").join(name);
            coco.write_json(&path)?;
            Ok(coco.annotations.len())
        };
        let annotations = write_split(&train, "train.json")? + write_split(&val, "val.json")?;

        let frames = d
            .jobs
            .iter()
            .map(|&id| {
                let job = plan.job(id);
                FrameProvenance {
                    file_name: file(id),
                    job_id: id,
                    source: job.source.name().to_string(),
                    altitude_m: job.cell.altitude_m,
                    color: job.cell.color,
                    turbidity: job.cell.turbidity,
                    orbit_angle: job.orbit_angle,
                    object_yaw: job.object_yaw,
                    object_pitch: job.object_pitch,
                    object_roll: job.object_roll,
                    annotated: results[id as usize].annotation.is_some(),
                }
            })
            .collect();
        let manifest = DatasetManifest {
            dataset: d.name.clone(),
            campaign_seed: spec.seed,
            split_ratio: spec.split_ratio,
            split_seed,
            output_size: spec.output_size,
            native_size: spec.native_size,
            train: train.iter().map(|&id| file(id)).collect(),
            val: val.iter().map(|&id| file(id)).collect(),
            frames,
        };
        write_json(&manifest, &dir.join("manifest.json"))?;
        let marker = dir.join(INCOMPLETE_MARKER);
        std::fs::remove_file(&marker).map_err(io_err(&marker))?;
        log::info!(
            "{}: {} train, {} val, {} annotated",
            d.name,
            train.len(),
            val.len(),
            annotations
        );
        summaries.push(DatasetSummary {
            name: d.name.clone(),
            dir: dir.clone(),
            train: train.len(),
            val: val.len(),
            annotations,
        });
    }
    Ok(summaries)
}

fn run_job(
    plan: &CampaignPlan,
    job: &Job,
    datasets: &[usize],
    dirs: &[PathBuf],
) -> Result<JobResult, CampaignError> {
    let fail = |e: FrameError| CampaignError::Job {
        job_id: job.id,
        source: Box::new(e),
    };
    let scene = plan.scene_for(job);
    // Runs inside the campaign pool, so tiles share its workers.
    let frame = render_spec_in_current_pool(&scene, job.id).map_err(fail)?;
    let size = plan.spec.output_size;
    let (image, mask, _) = if size == frame.mask.width() && size == frame.mask.height() {
        (frame.rgb8.clone(), frame.mask.clone(), None)
    } else {
        resize_with_annotations(&frame.rgb8, &frame.mask, size)?
    };
    let meta = FrameMeta {
        image_width: size,
        image_height: size,
        ..frame.meta
    };
    let stem = job.file_stem();
    for &di in datasets {
        let dir = &dirs[di];
        io::write_rgb_png(&image, &dir.join("images").join(format!("{stem}.png")))
            .map_err(|e| fail(e.into()))?;
        io::write_mask_png(&mask, &dir.join("masks").join(format!("{stem}.png")))
            .map_err(|e| fail(e.into()))?;
        write_meta_sidecar(&meta, &dir.join("meta").join(format!("{stem}.meta.json")))
            .map_err(|e| fail(e.into()))?;
    }
    Ok(JobResult {
        annotation: annotate_mask(&mask),
    })
}
