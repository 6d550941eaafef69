//! One-call path from a scene description to a rendered frame bundle.

use std::path::{Path, PathBuf};

use crate::annotate::{write_meta_sidecar, AnnotateError};
use crate::render::{
    io, render_frame, render_frame_with_workers, RenderError, RenderOutput, RenderSettings,
};
use crate::scene::{assemble_scene, SceneError, SceneSpec};

#[derive(Debug, thiserror::Error)]
pub enum FrameError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
}

/// Assembles and renders `spec` as frame `frame_index`, using `workers` threads
/// (`None` = available parallelism).
pub fn render_spec(
    spec: &SceneSpec,
    frame_index: u64,
    workers: Option<usize>,
) -> Result<RenderOutput, FrameError> {
    let scene = assemble_scene(spec)?;
    let camera = spec.camera_rig()?;
    let settings = RenderSettings {
        seed: spec.seed,
        frame_index,
        ..spec.render
    };
    let workers = workers.unwrap_or_else(default_workers);
    Ok(render_frame_with_workers(
        &scene, &camera, &settings, workers,
    )?)
}

/// Like [`render_spec`] but on whatever rayon pool the caller is running in.
pub fn render_spec_in_current_pool(
    spec: &SceneSpec,
    frame_index: u64,
) -> Result<RenderOutput, FrameError> {
    let scene = assemble_scene(spec)?;
    let camera = spec.camera_rig()?;
    let settings = RenderSettings {
        seed: spec.seed,
        frame_index,
        ..spec.render
    };
    Ok(render_frame(&scene, &camera, &settings)?)
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Paths of one written frame bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameFiles {
    pub image: PathBuf,
    pub mask: PathBuf,
    pub meta: PathBuf,
}

/// Writes `<stem>.png`, `<stem>_mask.png` and `<stem>.meta.json` into `dir`.
pub fn write_frame(out: &RenderOutput, dir: &Path, stem: &str) -> Result<FrameFiles, FrameError> {
    std::fs::create_dir_all(dir).map_err(|e| RenderError::Io(dir.to_path_buf(), e))?;
    let files = FrameFiles {
        image: dir.join(format!("{stem}.png")),
        mask: dir.join(format!("{stem}_mask.png")),
        meta: dir.join(format!("{stem}.meta.json")),
    };
    io::write_rgb_png(&out.rgb8, &files.image)?;
    io::write_mask_png(&out.mask, &files.mask)?;
    write_meta_sidecar(&out.meta, &files.meta)?;
    Ok(files)
}
