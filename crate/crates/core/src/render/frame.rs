use image::RgbImage;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integrator::trace;
use super::sampling::sample_stream;
use super::tonemap::tone_map;
use super::{RenderError, RenderSettings};
use crate::mask::Mask;
use crate::math::{Quat, Vec3};
use crate::scene::{CameraRig, Scene, SurfaceKind};

/// Side length of the square pixel tiles handed to workers.
pub const TILE_SIZE: u32 = 16;

/// Linear radiance image, row-major RGB.
#[derive(Debug, Clone, PartialEq)]
pub struct RadianceImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<[f32; 3]>,
}

impl RadianceImage {
    pub fn get(&self, col: u32, row: u32) -> [f32; 3] {
        self.pixels[(row * self.width + col) as usize]
    }

    pub fn luminance(&self, col: u32, row: u32) -> f64 {
        let [r, g, b] = self.get(col, row);
        0.2126 * r as f64 + 0.7152 * g as f64 + 0.0722 * b as f64
    }
}

/// Ground-truth pose metadata for one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameMeta {
    pub altitude_m: f64,
    /// Camera-to-world rotation (w, x, y, z); the camera looks down local -z.
    pub camera_rotation: Quat,
    /// Object-of-interest rotation (w, x, y, z).
    pub object_rotation: Quat,
    pub seed: u64,
    pub frame_index: u64,
    pub camera_position: Vec3,
    pub orbit_angle: f64,
    pub orbit_radius_m: f64,
    pub vertical_fov_deg: f64,
    pub image_width: u32,
    pub image_height: u32,
}

impl FrameMeta {
    pub fn new(scene: &Scene, camera: &CameraRig, settings: &RenderSettings) -> Self {
        FrameMeta {
            altitude_m: camera.altitude,
            camera_rotation: camera.rotation(),
            object_rotation: scene.target_rotation(),
            seed: settings.seed,
            frame_index: settings.frame_index,
            camera_position: camera.position(),
            orbit_angle: camera.orbit_angle,
            orbit_radius_m: camera.orbit_radius,
            vertical_fov_deg: camera.vertical_fov.to_degrees(),
            image_width: camera.image_width,
            image_height: camera.image_height,
        }
    }
}

/// Everything produced for one frame.
#[derive(Debug, Clone)]
pub struct RenderOutput {
    pub radiance: RadianceImage,
    pub rgb8: RgbImage,
    pub mask: Mask,
    pub meta: FrameMeta,
}

/// Renders radiance, tone-mapped RGB, the object mask and metadata using the
/// global rayon pool.
pub fn render_frame(
    scene: &Scene,
    camera: &CameraRig,
    settings: &RenderSettings,
) -> Result<RenderOutput, RenderError> {
    let radiance = render_radiance(scene, camera, settings)?;
    finish(scene, camera, settings, radiance)
}

/// Like [`render_frame`] but on a dedicated pool of `workers` threads.
/// Output is bit-identical for any worker count.
pub fn render_frame_with_workers(
    scene: &Scene,
    camera: &CameraRig,
    settings: &RenderSettings,
    workers: usize,
) -> Result<RenderOutput, RenderError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| RenderError::Pool(e.to_string()))?;
    pool.install(|| render_frame(scene, camera, settings))
}

fn finish(
    scene: &Scene,
    camera: &CameraRig,
    settings: &RenderSettings,
    radiance: RadianceImage,
) -> Result<RenderOutput, RenderError> {
    let rgb8 = tone_map(&radiance, settings.exposure)?;
    let mask = id_pass(scene, camera);
    Ok(RenderOutput {
        radiance,
        rgb8,
        mask,
        meta: FrameMeta::new(scene, camera, settings),
    })
}

/// Monte Carlo radiance estimate for every pixel.
pub fn render_radiance(
    scene: &Scene,
    camera: &CameraRig,
    settings: &RenderSettings,
) -> Result<RadianceImage, RenderError> {
    settings.validate()?;
    let (w, h) = (camera.image_width, camera.image_height);
    let tiles: Vec<(u32, u32)> = (0..h.div_ceil(TILE_SIZE))
        .flat_map(|ty| (0..w.div_ceil(TILE_SIZE)).map(move |tx| (tx * TILE_SIZE, ty * TILE_SIZE)))
        .collect();

    let rendered: Vec<Vec<(u32, [f32; 3])>> = tiles
        .par_iter()
        .map(|&(x0, y0)| {
            let mut out = Vec::with_capacity((TILE_SIZE * TILE_SIZE) as usize);
            for row in y0..(y0 + TILE_SIZE).min(h) {
                for col in x0..(x0 + TILE_SIZE).min(w) {
                    out.push((
                        row * w + col,
                        render_pixel(scene, camera, settings, col, row)?,
                    ));
                }
            }
            Ok(out)
        })
        .collect::<Result<_, RenderError>>()?;

    let mut pixels = vec![[0f32; 3]; (w * h) as usize];
    for (idx, value) in rendered.into_iter().flatten() {
        pixels[idx as usize] = value;
    }
    Ok(RadianceImage {
        width: w,
        height: h,
        pixels,
    })
}

fn render_pixel(
    scene: &Scene,
    camera: &CameraRig,
    settings: &RenderSettings,
    col: u32,
    row: u32,
) -> Result<[f32; 3], RenderError> {
    let pixel = row as u64 * camera.image_width as u64 + col as u64;
    let mut sum = [0f64; 3];
    for s in 0..settings.samples_per_pixel {
        let mut rng = sample_stream(settings.seed, settings.frame_index, pixel, s as u64);
        let (jx, jy): (f64, f64) = (rng.random(), rng.random());
        let ray = camera.ray(col as f64 + jx, row as f64 + jy);
        let l = trace(scene, ray, settings.max_bounces, &mut rng);
        if !l.is_finite() || l.min_component() < 0.0 {
            return Err(RenderError::BadSample {
                col,
                row,
                sample: s,
                value: l.0,
            });
        }
        for c in 0..3 {
            sum[c] += l[c];
        }
    }
    let n = settings.samples_per_pixel as f64;
    Ok(sum.map(|v| (v / n) as f32))
}

/// Ground-truth mask: one ray per pixel center, water surface ignored; a pixel
/// is set when the first hit belongs to the object of interest.
pub fn id_pass(scene: &Scene, camera: &CameraRig) -> Mask {
    let (w, h) = (camera.image_width, camera.image_height);
    let rows: Vec<Vec<bool>> = (0..h)
        .into_par_iter()
        .map(|row| {
            (0..w)
                .map(|col| {
                    let ray = camera.ray(col as f64 + 0.5, row as f64 + 0.5);
                    matches!(
                        scene.intersect(&ray, 0.0, f64::INFINITY, false),
                        Some(hit) if matches!(hit.kind, SurfaceKind::Triangle { index } if scene.is_target_triangle(index))
                    )
                })
                .collect()
        })
        .collect();
    Mask::from_bits(w, h, rows.concat())
}
