//! Unidirectional path tracer with next-event estimation toward the sun.
//!
//! Vertices are Lambertian surfaces (meshes, seafloor), medium scattering
//! events in the water column, and the specular water surface (Fresnel-weighted
//! stochastic choice between reflection and refraction). Sun shadow rays that
//! start under water follow the sun direction refracted through the flat
//! (unperturbed) surface.

use std::f64::consts::FRAC_1_PI;

use rand::Rng;

use super::medium::{beer_lambert, sample_free_flight, FreeFlight, HenyeyGreenstein};
use super::sampling::{cosine_hemisphere, fresnel_dielectric, reflect, refract};
use crate::math::{Rgb, Vec3};
use crate::scene::{Ray, Scene, SurfaceKind, WaterVolume};

/// Bound on water-surface events per path; they do not count as bounces.
const MAX_SPECULAR_EVENTS: u32 = 16;

fn offset_scale(p: Vec3) -> f64 {
    1e-7 * (1.0 + p.max_abs_component())
}

/// New ray leaving `p`, nudged off the surface with normal `n` toward `dir`.
fn spawn(p: Vec3, n: Vec3, dir: Vec3) -> Ray {
    let side = if dir.dot(n) >= 0.0 { n } else { -n };
    Ray {
        origin: p + side * offset_scale(p),
        dir,
    }
}

/// Sun arriving at `p`: direction toward the light and irradiance on a plane
/// perpendicular to that direction. `None` when shadowed or the sun is off.
pub(crate) fn sun_at(scene: &Scene, p: Vec3, in_water: bool) -> Option<(Vec3, Rgb)> {
    let sun = scene.sun();
    if sun.irradiance.is_black() {
        return None;
    }
    let water = match (in_water, scene.water()) {
        (true, Some(w)) => w,
        _ => {
            let ray = Ray {
                origin: p,
                dir: sun.direction,
            };
            return (!scene.occluded(&ray, 0.0, f64::INFINITY))
                .then_some((sun.direction, sun.irradiance));
        }
    };
    let cos_i = sun.direction.z;
    let to_sun = -refract(-sun.direction, Vec3::Z, 1.0 / water.ior)?;
    let cos_t = to_sun.z;
    let dist = -p.z / cos_t;
    let under = Ray {
        origin: p,
        dir: to_sun,
    };
    if scene.occluded(&under, 0.0, dist) {
        return None;
    }
    let surface = under.at(dist);
    let above = Ray {
        origin: Vec3::new(surface.x, surface.y, 0.0),
        dir: sun.direction,
    };
    if scene.occluded(&above, 0.0, f64::INFINITY) {
        return None;
    }
    let fresnel = fresnel_dielectric(cos_i, 1.0, water.ior);
    let scale = (1.0 - fresnel) * cos_i / cos_t;
    Some((
        to_sun,
        sun.irradiance * beer_lambert(water.medium.sigma_t(), dist) * scale,
    ))
}

/// One radiance sample along `ray`.
pub(crate) fn trace(scene: &Scene, mut ray: Ray, max_bounces: u32, rng: &mut impl Rng) -> Rgb {
    let water: Option<&WaterVolume> = scene.water();
    let mut radiance = Rgb::BLACK;
    let mut beta = Rgb::WHITE;
    let mut in_water = water.is_some() && ray.origin.z < 0.0;
    let mut bounces = 0u32;
    let mut specular = 0u32;

    loop {
        let hit = scene.intersect(&ray, 0.0, f64::INFINITY, true);

        if let (true, Some(w)) = (in_water, water) {
            let t_max = hit.map_or(f64::INFINITY, |h| h.t);
            match sample_free_flight(&w.medium, t_max, rng.random()) {
                FreeFlight::Scatter { t, weight } => {
                    beta *= weight;
                    bounces += 1;
                    let p = ray.at(t);
                    let phase = HenyeyGreenstein::new(w.medium.phase_g);
                    if let Some((wi, e)) = sun_at(scene, p, true) {
                        radiance += beta * e * phase.eval(wi.dot(ray.dir));
                    }
                    if bounces >= max_bounces {
                        break;
                    }
                    ray = Ray {
                        origin: p,
                        dir: phase.sample(ray.dir, rng.random(), rng.random()),
                    };
                    continue;
                }
                FreeFlight::Pass { weight } => {
                    beta *= weight;
                    if beta.is_black() {
                        break;
                    }
                }
            }
        }

        let Some(hit) = hit else {
            if !in_water && ray.dir.z > 0.0 {
                radiance += beta * scene.sky();
            }
            break;
        };
        let p = hit.point;

        match hit.kind {
            SurfaceKind::WaterSurface => {
                specular += 1;
                if specular > MAX_SPECULAR_EVENTS {
                    break;
                }
                let w = water.expect("water surface implies water volume");
                let from_above = ray.dir.z < 0.0;
                let mut n = w.waves.normal(p.x, p.y);
                if !from_above {
                    n = -n;
                }
                if ray.dir.dot(n) >= 0.0 {
                    // Perturbed normal faces away from the ray; fall back to the plane.
                    n = if from_above { Vec3::Z } else { -Vec3::Z };
                }
                let (eta_i, eta_t) = if from_above {
                    (1.0, w.ior)
                } else {
                    (w.ior, 1.0)
                };
                let cos_i = -ray.dir.dot(n);
                let fresnel = fresnel_dielectric(cos_i, eta_i, eta_t);
                let mut dir = if rng.random::<f64>() < fresnel {
                    reflect(ray.dir, n)
                } else {
                    refract(ray.dir, n, eta_i / eta_t).unwrap_or_else(|| reflect(ray.dir, n))
                };
                // Keep the chosen branch on the geometrically consistent side of z = 0.
                let reflected = dir.dot(n) > 0.0;
                let want_up = from_above == reflected;
                if (dir.z > 0.0) != want_up {
                    dir = Vec3::new(dir.x, dir.y, -dir.z);
                }
                in_water = dir.z < 0.0;
                ray = spawn(Vec3::new(p.x, p.y, 0.0), Vec3::Z, dir);
            }
            SurfaceKind::Seafloor | SurfaceKind::Triangle { .. } => {
                bounces += 1;
                let (geo_n, albedo) = match hit.kind {
                    SurfaceKind::Triangle { index } => {
                        (scene.triangles()[index].normal(), scene.albedo_of(index))
                    }
                    _ => (Vec3::Z, scene.seafloor().albedo_at(p.x, p.y)),
                };
                let n = if geo_n.dot(ray.dir) > 0.0 {
                    -geo_n
                } else {
                    geo_n
                };
                let here_in_water = water.is_some() && p.z < 0.0;
                let origin = p + n * offset_scale(p);
                if let Some((wi, e)) = sun_at(scene, origin, here_in_water) {
                    let cos = n.dot(wi);
                    if cos > 0.0 {
                        radiance += beta * albedo * e * (cos * FRAC_1_PI);
                    }
                }
                if bounces >= max_bounces {
                    break;
                }
                beta *= albedo;
                if beta.is_black() {
                    break;
                }
                let dir = cosine_hemisphere(n, rng.random(), rng.random());
                in_water = here_in_water;
                ray = spawn(p, n, dir);
            }
        }
    }
    radiance
}
