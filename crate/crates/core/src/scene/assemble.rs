use std::ops::Range;

use super::bvh::{Bvh, Triangle};
use super::camera::Ray;
use super::mesh::{Aabb, TriangleMesh};
use super::spec::{Anchor, SceneSpec};
use super::water::{WaterMedium, WaveParams, WATER_IOR};
use super::SceneError;
use crate::math::{Quat, Rgb, Vec3};

/// Water column between the surface (z = 0) and the seafloor (z = -depth).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterVolume {
    pub medium: WaterMedium,
    pub waves: WaveParams,
    pub ior: f64,
}

impl WaterVolume {
    pub fn new(medium: WaterMedium, waves: WaveParams) -> Self {
        WaterVolume {
            medium,
            waves,
            ior: WATER_IOR,
        }
    }
}

/// Checkerboard seafloor albedo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seafloor {
    pub checker_size: f64,
    pub albedo_light: Rgb,
    pub albedo_dark: Rgb,
}

impl Seafloor {
    pub fn uniform(albedo: Rgb) -> Self {
        Seafloor {
            checker_size: 1.0,
            albedo_light: albedo,
            albedo_dark: albedo,
        }
    }

    pub fn is_light(&self, x: f64, y: f64) -> bool {
        let i = (x / self.checker_size).floor() as i64;
        let j = (y / self.checker_size).floor() as i64;
        (i + j).rem_euclid(2) == 0
    }

    pub fn albedo_at(&self, x: f64, y: f64) -> Rgb {
        if self.is_light(x, y) {
            self.albedo_light
        } else {
            self.albedo_dark
        }
    }
}

/// Directional sun. `direction` points from the scene toward the sun.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sun {
    pub direction: Vec3,
    pub irradiance: Rgb,
}

/// One mesh placed in the world.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub triangles: Range<usize>,
    pub is_target: bool,
    pub bounds: Aabb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Triangle { index: usize },
    WaterSurface,
    Seafloor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceHit {
    pub t: f64,
    pub point: Vec3,
    pub kind: SurfaceKind,
}

/// Immutable renderable world. Shareable across render workers.
#[derive(Debug, Clone)]
pub struct Scene {
    triangles: Vec<Triangle>,
    tri_instance: Vec<u32>,
    tri_albedo: Vec<Rgb>,
    bvh: Bvh,
    instances: Vec<Instance>,
    water: Option<WaterVolume>,
    seafloor: Seafloor,
    sun: Sun,
    sky: Rgb,
    target_rotation: Quat,
}

#[derive(Debug, Clone)]
pub struct SceneBuilder {
    triangles: Vec<Triangle>,
    tri_instance: Vec<u32>,
    tri_albedo: Vec<Rgb>,
    instances: Vec<Instance>,
    water: Option<WaterVolume>,
    seafloor: Seafloor,
    sun: Sun,
    sky: Rgb,
    target_rotation: Quat,
}

impl Default for SceneBuilder {
    fn default() -> Self {
        SceneBuilder {
            triangles: Vec::new(),
            tri_instance: Vec::new(),
            tri_albedo: Vec::new(),
            instances: Vec::new(),
            water: None,
            seafloor: Seafloor::uniform(Rgb::splat(0.5)),
            sun: Sun {
                direction: Vec3::Z,
                irradiance: Rgb::BLACK,
            },
            sky: Rgb::BLACK,
            target_rotation: Quat::IDENTITY,
        }
    }
}

impl SceneBuilder {
    pub fn water(mut self, water: WaterVolume) -> Self {
        self.water = Some(water);
        self
    }

    pub fn seafloor(mut self, floor: Seafloor) -> Self {
        self.seafloor = floor;
        self
    }

    pub fn sun(mut self, sun: Sun) -> Self {
        self.sun = sun;
        self
    }

    pub fn sky(mut self, radiance: Rgb) -> Self {
        self.sky = radiance;
        self
    }

    pub fn target_rotation(mut self, q: Quat) -> Self {
        self.target_rotation = q;
        self
    }

    /// Adds a world-space mesh. `palette` is indexed by material id, clamped
    /// to its last entry.
    pub fn add_mesh(mut self, mesh: &TriangleMesh, palette: &[Rgb], is_target: bool) -> Self {
        assert!(!palette.is_empty(), "palette must not be empty");
        let id = self.instances.len() as u32;
        let start = self.triangles.len();
        for i in 0..mesh.triangle_count() {
            let [a, b, c] = mesh.triangle(i);
            self.triangles.push(Triangle::new(a, b, c));
            self.tri_instance.push(id);
            let mat = (mesh.material_ids[i] as usize).min(palette.len() - 1);
            self.tri_albedo.push(palette[mat]);
        }
        self.instances.push(Instance {
            triangles: start..self.triangles.len(),
            is_target,
            bounds: mesh.bounds(),
        });
        self
    }

    pub fn build(self) -> Scene {
        let bvh = Bvh::build(&self.triangles);
        Scene {
            triangles: self.triangles,
            tri_instance: self.tri_instance,
            tri_albedo: self.tri_albedo,
            bvh,
            instances: self.instances,
            water: self.water,
            seafloor: self.seafloor,
            sun: self.sun,
            sky: self.sky,
            target_rotation: self.target_rotation,
        }
    }
}

impl Scene {
    pub fn builder() -> SceneBuilder {
        SceneBuilder::default()
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn bvh(&self) -> &Bvh {
        &self.bvh
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn instance_of(&self, triangle: usize) -> u32 {
        self.tri_instance[triangle]
    }

    pub fn is_target_triangle(&self, triangle: usize) -> bool {
        self.instances[self.tri_instance[triangle] as usize].is_target
    }

    pub fn albedo_of(&self, triangle: usize) -> Rgb {
        self.tri_albedo[triangle]
    }

    /// Union of the bounds of every object-of-interest instance.
    pub fn target_bounds(&self) -> Option<Aabb> {
        self.instances
            .iter()
            .filter(|i| i.is_target)
            .map(|i| i.bounds)
            .reduce(Aabb::union)
    }

    pub fn target_rotation(&self) -> Quat {
        self.target_rotation
    }

    pub fn water(&self) -> Option<&WaterVolume> {
        self.water.as_ref()
    }

    pub fn seafloor(&self) -> &Seafloor {
        &self.seafloor
    }

    /// Seafloor height, when there is a water column.
    pub fn floor_z(&self) -> Option<f64> {
        self.water.map(|w| -w.medium.depth)
    }

    pub fn sun(&self) -> &Sun {
        &self.sun
    }

    pub fn sky(&self) -> Rgb {
        self.sky
    }

    /// Nearest surface along the ray. With `include_water` false the water
    /// surface is skipped (treated as fully transparent).
    pub fn intersect(
        &self,
        ray: &Ray,
        t_min: f64,
        t_max: f64,
        include_water: bool,
    ) -> Option<SurfaceHit> {
        let mut best: Option<(f64, SurfaceKind)> = self
            .bvh
            .intersect(&self.triangles, ray, t_min, t_max)
            .map(|h| (h.t, SurfaceKind::Triangle { index: h.index }));
        let mut consider = |t: f64, kind: SurfaceKind| {
            if t > t_min && t < t_max && best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, kind));
            }
        };
        if ray.dir.z != 0.0 {
            if let Some(floor) = self.floor_z() {
                consider((floor - ray.origin.z) / ray.dir.z, SurfaceKind::Seafloor);
            }
            if include_water && self.water.is_some() {
                consider(-ray.origin.z / ray.dir.z, SurfaceKind::WaterSurface);
            }
        }
        best.map(|(t, kind)| SurfaceHit {
            t,
            point: ray.at(t),
            kind,
        })
    }

    /// Whether any mesh blocks the ray within `(t_min, t_max)`.
    pub fn occluded(&self, ray: &Ray, t_min: f64, t_max: f64) -> bool {
        self.bvh.occluded(&self.triangles, ray, t_min, t_max)
    }
}

/// Resolves a [`SceneSpec`] into a renderable [`Scene`].
///
/// Fails when the spec is invalid, a mesh cannot be loaded, the object of
/// interest falls outside the camera frustum, or a distractor's bounds
/// intersect the object's bounds.
pub fn assemble_scene(spec: &SceneSpec) -> Result<Scene, SceneError> {
    spec.validate()?;
    let (medium, tint) = spec.water.resolve()?;

    let object = spec.object.world_mesh(spec.object.mesh.load()?);
    let object_bounds = object.bounds();
    if !object_bounds.is_finite() {
        return Err(SceneError::invalid(
            "object.mesh",
            "bounding box is not finite",
        ));
    }
    let camera = spec.camera.rig(object_bounds.center())?;
    let visible = std::iter::once(object_bounds.center())
        .chain(object_bounds.corners())
        .any(|p| camera.sees(p));
    if !visible {
        return Err(SceneError::NotVisible);
    }

    let mut builder = Scene::builder()
        .water(WaterVolume::new(medium, spec.waves))
        .seafloor(spec.seafloor.resolve(tint))
        .sun(spec.sun.resolve())
        .sky(spec.sky_radiance)
        .target_rotation(spec.object.pose.rotation)
        .add_mesh(&object, &spec.object.albedo, true);

    for (index, d) in spec.distractors.iter().enumerate() {
        let mut mesh = d.mesh.load()?.transformed(&d.pose);
        if d.anchor == Anchor::Seafloor {
            let lift = -medium.depth - mesh.bounds().min.z;
            mesh = mesh.transformed(&crate::math::Pose::from_translation(Vec3::new(
                0.0, 0.0, lift,
            )));
        }
        if mesh.bounds().overlaps(&object_bounds) {
            return Err(SceneError::DistractorOverlap { index });
        }
        builder = builder.add_mesh(&mesh, &[d.albedo], false);
    }
    Ok(builder.build())
}
