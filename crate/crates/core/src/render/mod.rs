//! Deterministic Monte Carlo path tracing of the water scene, plus the
//! object-ID pass that yields ground-truth masks.

mod frame;
mod integrator;
pub mod io;
mod medium;
pub mod sampling;
mod settings;
mod tonemap;

use std::path::PathBuf;

pub use frame::{
    id_pass, render_frame, render_frame_with_workers, render_radiance, FrameMeta, RadianceImage,
    RenderOutput, TILE_SIZE,
};
pub use medium::{sample_free_flight, transmittance, FreeFlight, HenyeyGreenstein};
pub use settings::{RenderSettings, SettingsError, DEFAULT_MAX_BOUNCES, DEFAULT_SPP};
pub use tonemap::{tone_map, tone_map_value};

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("negative distance {0}")]
    NegativeDistance(f64),
    #[error(transparent)]
    Settings(#[from] SettingsError),
    #[error("pixel ({col}, {row}) sample {sample} produced invalid radiance {value:?}")]
    BadSample {
        col: u32,
        row: u32,
        sample: u32,
        value: [f64; 3],
    },
    #[error("non-finite or negative radiance at pixel ({col}, {row})")]
    NonFiniteInput { col: u32, row: u32 },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("{0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
    #[error("{0}: {1}")]
    Image(PathBuf, #[source] image::ImageError),
    #[error("bad radiance dump: {0}")]
    RadianceFormat(String),
}
