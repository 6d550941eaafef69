//! World description: meshes, water volume, seafloor, distractors, sun and camera.

mod assemble;
pub mod bvh;
mod camera;
mod mesh;
mod obj;
mod spec;
mod water;

use std::path::PathBuf;

pub use assemble::{
    assemble_scene, Instance, Scene, SceneBuilder, Seafloor, Sun, SurfaceHit, SurfaceKind,
    WaterVolume,
};
pub use camera::{place_camera, CameraRig, Ray, DEFAULT_VERTICAL_FOV_DEG, MAX_RESOLUTION};
pub use mesh::{Aabb, TriangleMesh, DEGENERATE_AREA};
pub use obj::{load_mesh, parse_obj, LoadedMesh};
pub use spec::{
    Anchor, CameraSpec, DistractorSpec, MeshSource, ObjectSpec, SceneSpec, SeafloorSpec, SunSpec,
    WaterSpec, DEFAULT_OBJECT_ALBEDO, DEFAULT_OBJECT_SIZE,
};
pub use water::{
    water_preset, water_preset_named, Turbidity, WaterColor, WaterMedium, WaveParams,
    DEFAULT_DEPTH, WATER_IOR,
};

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("OBJ line {line}: {message}")]
    ObjParse { line: usize, message: String },
    #[error("mesh has no non-degenerate triangles")]
    NoTriangles,
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("unknown {0}")]
    UnknownPreset(String),
    #[error("object of interest is outside the camera frustum")]
    NotVisible,
    #[error("distractor {index} overlaps the object-of-interest bounds")]
    DistractorOverlap { index: usize },
    #[error("malformed scene JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl SceneError {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        SceneError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
