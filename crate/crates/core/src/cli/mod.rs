//! Command-line front end: `render`, `campaign`, `evaluate` and
//! `validate-config`.
//!
//! Exit codes: 0 success, 2 invalid configuration or input, 3 render or
//! output failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::annotate::CocoDataset;
use crate::campaign::{
    plan_campaign, run_campaign, CampaignError, CampaignSpec, Progress, RunOptions,
};
use crate::cocoeval::{evaluate, read_detections, write_report};
use crate::pipeline::{default_workers, render_spec, write_frame, FrameError};
use crate::render::io::write_radiance;
use crate::scene::SceneSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;
pub const LOG_ENV: &str = "SEADRONESIM_LOG";

#[derive(Debug, Parser)]
#[command(
    name = "seadronesim",
    version,
    about = "Synthetic aerial water imagery, COCO datasets and detection metrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one frame: image, mask and metadata sidecar.
    Render(RenderArgs),
    /// Plan and render a dataset campaign.
    Campaign(CampaignArgs),
    /// Score COCO detection results against ground truth.
    Evaluate(EvaluateArgs),
    /// Check a scene or campaign file without rendering.
    ValidateConfig(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct Overrides {
    /// Override the seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Override samples per pixel.
    #[arg(long)]
    pub spp: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Scene JSON file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Frame index keying the random streams.
    #[arg(long, default_value_t = 0)]
    pub frame_index: u64,
    /// Also write the linear radiance dump `frame.radiance`.
    #[arg(long)]
    pub radiance: bool,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Campaign JSON file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; one subdirectory per dataset.
    #[arg(long, required_unless_present = "dry_run")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Print the job plan and exit without writing anything.
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Ground-truth COCO dataset JSON.
    #[arg(long)]
    pub gt: PathBuf,
    /// COCO results JSON (list of {image_id, category_id, bbox, score}).
    #[arg(long)]
    pub predictions: PathBuf,
    /// Directory for `report.json`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub config: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match cli.command {
        Command::Render(a) => cmd_render(&a),
        Command::Campaign(a) => cmd_campaign(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::ValidateConfig(a) => cmd_validate(&a),
    }
}

pub fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

fn fail(code: i32, msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn load_scene(a: &RenderArgs) -> Result<SceneSpec, crate::scene::SceneError> {
    let mut spec = SceneSpec::from_json_file(&a.config)?;
    if let Some(seed) = a.overrides.seed {
        spec.seed = seed;
    }
    if let Some(spp) = a.overrides.spp {
        spec.render.samples_per_pixel = spp;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_render(a: &RenderArgs) -> i32 {
    let spec = match load_scene(a) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", a.config.display())),
    };
    log::info!(
        "rendering {}x{} at {} spp, seed {}, frame {}",
        spec.camera.width,
        spec.camera.height,
        spec.render.samples_per_pixel,
        spec.seed,
        a.frame_index
    );
    let started = std::time::Instant::now();
    let frame = match render_spec(&spec, a.frame_index, a.overrides.workers) {
        Ok(f) => f,
        Err(FrameError::Scene(e)) => {
            return fail(EXIT_INVALID, format!("{}: {e}", a.config.display()))
        }
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    log::info!("rendered in {:.2?}", started.elapsed());
    let files = match write_frame(&frame, &a.out, "frame") {
        Ok(f) => f,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    if a.radiance {
        if let Err(e) = write_radiance(&frame.radiance, &a.out.join("frame.radiance")) {
            return fail(EXIT_FAILURE, e);
        }
    }
    println!("image {}", files.image.display());
    println!(
        "mask  {} ({} object pixels)",
        files.mask.display(),
        frame.mask.count()
    );
    println!("meta  {}", files.meta.display());
    EXIT_OK
}

fn load_campaign(a: &CampaignArgs) -> Result<CampaignSpec, CampaignError> {
    let mut spec = CampaignSpec::from_json_file(&a.config)?;
    if let Some(seed) = a.overrides.seed {
        spec.seed = seed;
    }
    if let Some(spp) = a.overrides.spp {
        spec.scene.render.samples_per_pixel = spp;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_campaign(a: &CampaignArgs) -> i32 {
    let plan = match load_campaign(a).and_then(|s| plan_campaign(&s)) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", a.config.display())),
    };
    print!("{}", plan.summary());
    if a.dry_run {
        return EXIT_OK;
    }
    let out = a
        .out
        .as_deref()
        .expect("clap requires --out without --dry-run");
    let report = |p: &Progress<'_>| {
        log::debug!("{} finished ({}/{})", p.job.file_stem(), p.done, p.total);
        let step = (p.source_total / 10).max(1);
        if p.done_in_source % step == 0 || p.done_in_source == p.source_total {
            println!(
                "{:<28} {:>6}/{:<6} (total {}/{})",
                p.job.source.name(),
                p.done_in_source,
                p.source_total,
                p.done,
                p.total
            );
            let _ = std::io::stdout().flush();
        }
    };
    let opts = RunOptions {
        workers: a.overrides.workers.unwrap_or_else(default_workers),
        progress: Some(&report),
    };
    match run_campaign(&plan, out, &opts) {
        Ok(summaries) => {
            for s in summaries {
                println!(
                    "{:<28} train {:>5}  val {:>5}  annotations {:>5}  {}",
                    s.name,
                    s.train,
                    s.val,
                    s.annotations,
                    s.dir.display()
                );
            }
            EXIT_OK
        }
        Err(
            e @ (CampaignError::Invalid { .. }
            | CampaignError::Scene(_)
            | CampaignError::TooFewToSplit(_)),
        ) => fail(EXIT_INVALID, e),
        Err(e) => fail(EXIT_FAILURE, e),
    }
}

pub fn cmd_evaluate(a: &EvaluateArgs) -> i32 {
    let gt = match CocoDataset::from_json_file(&a.gt) {
        Ok(g) => g,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", a.gt.display())),
    };
    let preds = match read_detections(&a.predictions) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", a.predictions.display())),
    };
    let report = match evaluate(&gt, &preds) {
        Ok(r) => r,
        Err(e) => {
            let source = if matches!(e, crate::cocoeval::EvalError::Categories(_)) {
                &a.gt
            } else {
                &a.predictions
            };
            return fail(EXIT_INVALID, format!("{}: {e}", source.display()));
        }
    };
    print!("{}", report.to_table());
    let path = a.out.join("report.json");
    if let Err(e) = std::fs::create_dir_all(&a.out)
        .map_err(|e| e.to_string())
        .and_then(|_| write_report(&report, &path).map_err(|e| e.to_string()))
    {
        return fail(EXIT_FAILURE, e);
    }
    EXIT_OK
}

/// A file with a top-level `camera` object is a scene; anything else is
/// treated as a campaign.
pub fn cmd_validate(a: &ValidateArgs) -> i32 {
    let text = match std::fs::read_to_string(&a.config) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", a.config.display())),
    };
    let is_scene = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("camera").is_some())
        .unwrap_or(false);
    let result = if is_scene {
        SceneSpec::from_json_file(&a.config)
            .map(|_| "scene".to_string())
            .map_err(|e| e.to_string())
    } else {
        CampaignSpec::from_json_file(&a.config)
            .and_then(|s| plan_campaign(&s))
            .map(|p| {
                format!(
                    "campaign ({} jobs, {} datasets)",
                    p.jobs.len(),
                    p.datasets.len()
                )
            })
            .map_err(|e| e.to_string())
    };
    match result {
        Ok(kind) => {
            println!("ok: {} is a valid {kind}", display(&a.config));
            EXIT_OK
        }
        Err(e) => fail(EXIT_INVALID, format!("{}: {e}", display(&a.config))),
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
