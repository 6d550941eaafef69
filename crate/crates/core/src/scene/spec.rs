//! Declarative, JSON-serializable description of one renderable world.
//!
//! The file format is documented in `docs/scene_spec.md`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::assemble::{Seafloor, Sun};
use super::camera::{place_camera, CameraRig, DEFAULT_VERTICAL_FOV_DEG};
use super::mesh::TriangleMesh;
use super::obj::load_mesh;
use super::water::{water_preset, Turbidity, WaterColor, WaterMedium, WaveParams, DEFAULT_DEPTH};
use super::SceneError;
use crate::math::{Pose, Quat, Rgb, Vec3};
use crate::render::RenderSettings;

/// Default object of interest: a box roughly the size of a small ROV (m).
pub const DEFAULT_OBJECT_SIZE: Vec3 = Vec3::new(0.46, 0.34, 0.25);
pub const DEFAULT_OBJECT_ALBEDO: Rgb = Rgb::new(0.08, 0.18, 0.55);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default)]
    pub object: ObjectSpec,
    #[serde(default)]
    pub water: WaterSpec,
    #[serde(default)]
    pub waves: WaveParams,
    #[serde(default)]
    pub seafloor: SeafloorSpec,
    #[serde(default)]
    pub distractors: Vec<DistractorSpec>,
    #[serde(default)]
    pub sun: SunSpec,
    #[serde(default = "default_sky")]
    pub sky_radiance: Rgb,
    pub camera: CameraSpec,
    #[serde(default)]
    pub render: RenderSettings,
    #[serde(default)]
    pub seed: u64,
}

fn default_sky() -> Rgb {
    Rgb::new(0.30, 0.40, 0.55)
}

impl SceneSpec {
    /// Minimal spec: default object and water, nadir camera at `altitude_m`.
    pub fn new(altitude_m: f64) -> Self {
        SceneSpec {
            object: ObjectSpec::default(),
            water: WaterSpec::default(),
            waves: WaveParams::default(),
            seafloor: SeafloorSpec::default(),
            distractors: Vec::new(),
            sun: SunSpec::default(),
            sky_radiance: default_sky(),
            camera: CameraSpec::nadir(altitude_m),
            render: RenderSettings::default(),
            seed: 0,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, SceneError> {
        let spec: SceneSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Loads a spec; relative OBJ paths are resolved against the file's directory.
    pub fn from_json_file(path: &Path) -> Result<Self, SceneError> {
        let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut spec: SceneSpec = serde_json::from_str(&text)?;
        if let Some(base) = path.parent() {
            spec.resolve_paths(base);
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        self.object.mesh.resolve_path(base);
        for d in &mut self.distractors {
            d.mesh.resolve_path(base);
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene spec serializes")
    }

    /// Checks every field that can be checked without loading meshes.
    pub fn validate(&self) -> Result<(), SceneError> {
        self.camera.validate()?;
        self.object.validate()?;
        self.water.resolve()?.0.validate()?;
        self.sun.validate()?;
        check_radiance("sky_radiance", self.sky_radiance)?;
        self.seafloor.validate()?;
        for (i, d) in self.distractors.iter().enumerate() {
            d.mesh.validate(&format!("distractors[{i}].mesh"))?;
            check_albedo(&format!("distractors[{i}].albedo"), d.albedo)?;
        }
        self.render
            .validate()
            .map_err(|e| SceneError::invalid(e.field, e.reason))?;
        Ok(())
    }

    /// Camera rig aimed at the object of interest (or the explicit target).
    pub fn camera_rig(&self) -> Result<CameraRig, SceneError> {
        let object = self.object.world_mesh(self.object.mesh.load()?);
        self.camera.rig(object.bounds().center())
    }
}

fn check_albedo(field: &str, c: Rgb) -> Result<(), SceneError> {
    if !c.is_finite() || c.min_component() < 0.0 || c.max_component() > 1.0 {
        return Err(SceneError::invalid(
            field,
            "albedo components must lie in [0, 1]",
        ));
    }
    Ok(())
}

fn check_radiance(field: &str, c: Rgb) -> Result<(), SceneError> {
    if !c.is_finite() || c.min_component() < 0.0 {
        return Err(SceneError::invalid(
            field,
            "components must be finite and >= 0",
        ));
    }
    Ok(())
}

/// Where a mesh comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeshSource {
    /// Wavefront OBJ file, vertices multiplied by `scale`.
    Obj {
        path: PathBuf,
        #[serde(default = "one")]
        scale: f64,
    },
    /// Box centered at the origin.
    Box { size: Vec3 },
    Sphere {
        radius: f64,
        #[serde(default = "default_segments")]
        segments: u32,
    },
    /// Cone with its base at z = 0.
    Cone {
        radius: f64,
        height: f64,
        #[serde(default = "default_segments")]
        segments: u32,
    },
}

fn one() -> f64 {
    1.0
}

fn default_segments() -> u32 {
    48
}

impl MeshSource {
    pub fn load(&self) -> Result<TriangleMesh, SceneError> {
        Ok(match self {
            MeshSource::Obj { path, scale } => {
                let mut mesh = load_mesh(path)?.mesh;
                if *scale != 1.0 {
                    for v in &mut mesh.vertices {
                        *v = *v * *scale;
                    }
                }
                mesh
            }
            MeshSource::Box { size } => TriangleMesh::centered_box(*size),
            MeshSource::Sphere { radius, segments } => {
                TriangleMesh::uv_sphere(*radius, *segments, segments / 2)
            }
            MeshSource::Cone {
                radius,
                height,
                segments,
            } => TriangleMesh::cone(*radius, *height, *segments),
        })
    }

    fn validate(&self, field: &str) -> Result<(), SceneError> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        let ok = match self {
            MeshSource::Obj { scale, .. } => positive(*scale),
            MeshSource::Box { size } => positive(size.x) && positive(size.y) && positive(size.z),
            MeshSource::Sphere { radius, .. } => positive(*radius),
            MeshSource::Cone { radius, height, .. } => positive(*radius) && positive(*height),
        };
        if ok {
            Ok(())
        } else {
            Err(SceneError::invalid(
                field,
                "dimensions and scale must be > 0",
            ))
        }
    }

    fn resolve_path(&mut self, base: &Path) {
        if let MeshSource::Obj { path, .. } = self {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
    }
}

/// The object of interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub mesh: MeshSource,
    #[serde(default)]
    pub pose: Pose,
    /// When set, the vertical translation is replaced so the waterline
    /// (z = 0) passes through the object's vertical midpoint.
    #[serde(default = "yes")]
    pub float_at_waterline: bool,
    /// Albedo per material id; the last entry covers higher ids.
    #[serde(default = "default_object_palette")]
    pub albedo: Vec<Rgb>,
}

fn yes() -> bool {
    true
}

fn default_object_palette() -> Vec<Rgb> {
    vec![DEFAULT_OBJECT_ALBEDO]
}

impl Default for ObjectSpec {
    fn default() -> Self {
        ObjectSpec {
            mesh: MeshSource::Box {
                size: DEFAULT_OBJECT_SIZE,
            },
            pose: Pose::default(),
            float_at_waterline: true,
            albedo: default_object_palette(),
        }
    }
}

impl ObjectSpec {
    /// Applies the pose (and waterline floating) to a model-space mesh.
    pub fn world_mesh(&self, mesh: TriangleMesh) -> TriangleMesh {
        if !self.float_at_waterline {
            return mesh.transformed(&self.pose);
        }
        let rotated = mesh.transformed(&Pose::new(self.pose.rotation, Vec3::ZERO));
        let b = rotated.bounds();
        let t = self.pose.translation;
        rotated.transformed(&Pose::from_translation(Vec3::new(
            t.x,
            t.y,
            -0.5 * (b.min.z + b.max.z),
        )))
    }

    fn validate(&self) -> Result<(), SceneError> {
        self.mesh.validate("object.mesh")?;
        if self.albedo.is_empty() {
            return Err(SceneError::invalid(
                "object.albedo",
                "needs at least one entry",
            ));
        }
        for (i, &a) in self.albedo.iter().enumerate() {
            check_albedo(&format!("object.albedo[{i}]"), a)?;
        }
        let q = self.pose.rotation;
        if !((q.norm() - 1.0).abs() < 1e-6) {
            return Err(SceneError::invalid(
                "object.pose.rotation",
                "quaternion must have unit norm",
            ));
        }
        if !self.pose.translation.is_finite() {
            return Err(SceneError::invalid(
                "object.pose.translation",
                "must be finite",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// Pose is used as given.
    #[default]
    Free,
    /// After posing, the mesh is lifted or lowered so its lowest point rests
    /// on the seafloor.
    Seafloor,
}

/// Object of non-interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistractorSpec {
    pub mesh: MeshSource,
    #[serde(default)]
    pub pose: Pose,
    #[serde(default = "default_distractor_albedo")]
    pub albedo: Rgb,
    #[serde(default)]
    pub anchor: Anchor,
}

fn default_distractor_albedo() -> Rgb {
    Rgb::new(0.45, 0.42, 0.38)
}

impl DistractorSpec {
    /// Box resting on the seafloor at `(x, y)`.
    pub fn rock(x: f64, y: f64, size: Vec3, yaw: f64) -> Self {
        DistractorSpec {
            mesh: MeshSource::Box { size },
            pose: Pose::new(Quat::from_axis_angle(Vec3::Z, yaw), Vec3::new(x, y, 0.0)),
            albedo: default_distractor_albedo(),
            anchor: Anchor::Seafloor,
        }
    }

    /// Cone rising from the seafloor; breaks the surface when `height` exceeds the depth.
    pub fn hill(x: f64, y: f64, radius: f64, height: f64) -> Self {
        DistractorSpec {
            mesh: MeshSource::Cone {
                radius,
                height,
                segments: default_segments(),
            },
            pose: Pose::from_translation(Vec3::new(x, y, 0.0)),
            albedo: Rgb::new(0.30, 0.36, 0.20),
            anchor: Anchor::Seafloor,
        }
    }
}

/// Water medium: a named preset or explicit coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WaterSpec {
    Preset {
        color: WaterColor,
        turbidity: Turbidity,
        #[serde(default = "default_depth")]
        depth_m: f64,
    },
    Custom {
        sigma_a: Rgb,
        sigma_s: Rgb,
        phase_g: f64,
        depth_m: f64,
        tint: Rgb,
    },
}

fn default_depth() -> f64 {
    DEFAULT_DEPTH
}

impl Default for WaterSpec {
    fn default() -> Self {
        WaterSpec::Preset {
            color: WaterColor::Brown,
            turbidity: Turbidity::Low,
            depth_m: DEFAULT_DEPTH,
        }
    }
}

impl WaterSpec {
    pub fn preset(color: WaterColor, turbidity: Turbidity) -> Self {
        WaterSpec::Preset {
            color,
            turbidity,
            depth_m: DEFAULT_DEPTH,
        }
    }

    /// Medium and base tint.
    pub fn resolve(&self) -> Result<(WaterMedium, Rgb), SceneError> {
        let (medium, tint) = match *self {
            WaterSpec::Preset {
                color,
                turbidity,
                depth_m,
            } => {
                let (mut m, tint) = water_preset(color, turbidity);
                m.depth = depth_m;
                (m, tint)
            }
            WaterSpec::Custom {
                sigma_a,
                sigma_s,
                phase_g,
                depth_m,
                tint,
            } => (
                WaterMedium {
                    sigma_a,
                    sigma_s,
                    phase_g,
                    depth: depth_m,
                },
                tint,
            ),
        };
        medium.validate()?;
        check_albedo("water.tint", tint)?;
        Ok((medium, tint))
    }
}

/// Seafloor checkerboard. Albedos default to shades of the water tint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeafloorSpec {
    #[serde(default = "one")]
    pub checker_size_m: f64,
    #[serde(default)]
    pub albedo_light: Option<Rgb>,
    #[serde(default)]
    pub albedo_dark: Option<Rgb>,
}

impl Default for SeafloorSpec {
    fn default() -> Self {
        SeafloorSpec {
            checker_size_m: 1.0,
            albedo_light: None,
            albedo_dark: None,
        }
    }
}

impl SeafloorSpec {
    pub fn resolve(&self, tint: Rgb) -> Seafloor {
        Seafloor {
            checker_size: self.checker_size_m,
            albedo_light: self
                .albedo_light
                .unwrap_or_else(|| tint.lerp(Rgb::splat(0.8), 0.5)),
            albedo_dark: self.albedo_dark.unwrap_or(tint * 0.25),
        }
    }

    fn validate(&self) -> Result<(), SceneError> {
        if !(self.checker_size_m > 0.0 && self.checker_size_m.is_finite()) {
            return Err(SceneError::invalid(
                "seafloor.checker_size_m",
                "must be > 0",
            ));
        }
        if let Some(a) = self.albedo_light {
            check_albedo("seafloor.albedo_light", a)?;
        }
        if let Some(a) = self.albedo_dark {
            check_albedo("seafloor.albedo_dark", a)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SunSpec {
    /// Direction toward the sun; normalized on use. Must point upward.
    pub direction: Vec3,
    /// Irradiance on a surface facing the sun, per channel.
    pub irradiance: Rgb,
}

impl Default for SunSpec {
    fn default() -> Self {
        let (elevation, azimuth) = (60f64.to_radians(), 30f64.to_radians());
        SunSpec {
            direction: Vec3::new(
                elevation.cos() * azimuth.cos(),
                elevation.cos() * azimuth.sin(),
                elevation.sin(),
            ),
            irradiance: Rgb::new(2.6, 2.5, 2.3),
        }
    }
}

impl SunSpec {
    pub fn resolve(&self) -> Sun {
        Sun {
            direction: self.direction.normalized(),
            irradiance: self.irradiance,
        }
    }

    fn validate(&self) -> Result<(), SceneError> {
        let d = self.direction;
        if !d.is_finite() || d.length() == 0.0 || d.z <= 0.0 {
            return Err(SceneError::invalid(
                "sun.direction",
                "must be a nonzero vector with positive z (daylight)",
            ));
        }
        check_radiance("sun.irradiance", self.irradiance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraSpec {
    pub altitude_m: f64,
    /// Azimuth around the target (radians).
    #[serde(default)]
    pub orbit_angle: f64,
    #[serde(default)]
    pub orbit_radius_m: f64,
    #[serde(default = "default_fov")]
    pub vertical_fov_deg: f64,
    #[serde(default = "default_side")]
    pub width: u32,
    #[serde(default = "default_side")]
    pub height: u32,
    /// Defaults to the center of the object's bounding box.
    #[serde(default)]
    pub target: Option<Vec3>,
}

fn default_fov() -> f64 {
    DEFAULT_VERTICAL_FOV_DEG
}

fn default_side() -> u32 {
    416
}

impl CameraSpec {
    pub fn nadir(altitude_m: f64) -> Self {
        CameraSpec {
            altitude_m,
            orbit_angle: 0.0,
            orbit_radius_m: 0.0,
            vertical_fov_deg: default_fov(),
            width: default_side(),
            height: default_side(),
            target: None,
        }
    }

    pub fn rig(&self, default_target: Vec3) -> Result<CameraRig, SceneError> {
        place_camera(
            self.altitude_m,
            self.orbit_radius_m,
            self.orbit_angle,
            self.target.unwrap_or(default_target),
            self.vertical_fov_deg.to_radians(),
            self.width,
            self.height,
        )
        .map_err(|e| match e {
            SceneError::Invalid { field, reason } if field == "camera.vertical_fov" => {
                SceneError::Invalid {
                    field: "camera.vertical_fov_deg".into(),
                    reason,
                }
            }
            other => other,
        })
    }

    fn validate(&self) -> Result<(), SceneError> {
        // Placement checks are target-independent except for target height.
        let probe = self.target.unwrap_or(Vec3::ZERO);
        let probe = Vec3::new(probe.x, probe.y, probe.z.min(self.altitude_m - 1.0));
        self.rig(probe).map(|_| ())?;
        if let Some(t) = self.target {
            if t.z >= self.altitude_m {
                return Err(SceneError::invalid(
                    "camera.target",
                    "target must lie below the camera altitude",
                ));
            }
        }
        Ok(())
    }
}
