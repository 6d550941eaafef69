//! Small hand-built scenes with closed-form answers.

use seadronesim::math::{Rgb, Vec3};
use seadronesim::render::RenderSettings;
use seadronesim::scene::{
    place_camera, CameraRig, Scene, Seafloor, Sun, TriangleMesh, WaterMedium, WaterVolume,
    WaveParams, WATER_IOR,
};

/// Column of pure absorber `sigma_a` over a white floor `depth` meters down,
/// zenith sun of unit irradiance, black sky, flat surface. Narrow nadir camera.
pub fn absorbing_column(sigma_a: f64, depth: f64, side: u32) -> (Scene, CameraRig) {
    let medium = WaterMedium {
        sigma_a: Rgb::splat(sigma_a),
        sigma_s: Rgb::BLACK,
        phase_g: 0.0,
        depth,
    };
    let scene = Scene::builder()
        .water(WaterVolume::new(medium, WaveParams::flat()))
        .seafloor(Seafloor::uniform(Rgb::WHITE))
        .sun(Sun {
            direction: Vec3::Z,
            irradiance: Rgb::WHITE,
        })
        .sky(Rgb::BLACK)
        .build();
    let camera = place_camera(
        1.0,
        0.0,
        0.0,
        Vec3::new(0.0, 0.0, -depth),
        1f64.to_radians(),
        side,
        side,
    )
    .unwrap();
    (scene, camera)
}

/// Expected pixel value of [`absorbing_column`]: the camera path refracts in
/// with probability `1 - F`, and the sun crosses the surface with `1 - F`.
pub fn absorbing_column_radiance(sigma_a: f64, depth: f64) -> f64 {
    let f = ((WATER_IOR - 1.0) / (WATER_IOR + 1.0)).powi(2);
    (1.0 - f).powi(2) * (-2.0 * sigma_a * depth).exp() / std::f64::consts::PI
}

pub fn single_bounce(spp: u32, seed: u64) -> RenderSettings {
    RenderSettings {
        samples_per_pixel: spp,
        max_bounces: 1,
        seed,
        frame_index: 0,
        exposure: 1.0,
    }
}

/// Dry world: a colored box on the ground plane under a zenith sun.
pub fn dry_box(object: Rgb, floor: Rgb, side: u32) -> (Scene, CameraRig) {
    let mesh = TriangleMesh::cuboid(Vec3::new(-1.0, -1.0, 0.0), Vec3::new(1.0, 1.0, 1.0));
    let scene = Scene::builder()
        .seafloor(Seafloor::uniform(floor))
        .sun(Sun {
            direction: Vec3::Z,
            irradiance: Rgb::WHITE,
        })
        .add_mesh(&mesh, &[object], true)
        .build();
    let camera = place_camera(10.0, 0.0, 0.0, Vec3::ZERO, 30f64.to_radians(), side, side).unwrap();
    (scene, camera)
}
