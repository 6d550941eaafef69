use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CampaignError;
use crate::annotate::DEFAULT_CATEGORY;
use crate::scene::{SceneSpec, Turbidity, WaterColor, DEFAULT_DEPTH};

pub const DEFAULT_FRAMES_PER_CELL: u32 = 626;
pub const DEFAULT_OUTPUT_SIZE: u32 = 416;
pub const DEFAULT_NATIVE_SIZE: u32 = 832;
pub const DEFAULT_SPLIT_RATIO: f64 = 0.8;
pub const MIN_OUTPUT_SIZE: u32 = 32;
/// Half-range of the random object roll and pitch, degrees.
pub const TILT_RANGE_DEG: f64 = 10.0;

/// How the camera azimuth is chosen per frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum OrbitRule {
    /// Uniform in [0, 2pi), drawn from the job's random stream.
    Uniform,
    /// `count` evenly spaced azimuths, cycled in frame order.
    Evenly { count: u32 },
    /// Explicit azimuths in radians, cycled in frame order.
    List { angles: Vec<f64> },
}

/// Water condition of one grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub altitude_m: f64,
    pub color: WaterColor,
    pub turbidity: Turbidity,
}

impl Cell {
    /// `alt10m_brown_low`.
    pub fn label(&self) -> String {
        format!(
            "alt{}m_{}_{}",
            self.altitude_m,
            self.color.name(),
            self.turbidity.name()
        )
    }
}

/// A pool of frames rendered once and shared by the mixes that use it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraPool {
    pub name: String,
    #[serde(flatten)]
    pub cell: Cell,
    pub count: u32,
}

/// A composite dataset: every frame of `base` plus the listed pools,
/// concatenated before splitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixSpec {
    pub label: String,
    /// Name of a grid dataset.
    pub base: String,
    pub extras: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignSpec {
    #[serde(default = "default_altitudes")]
    pub altitudes_m: Vec<f64>,
    #[serde(default = "default_colors")]
    pub colors: Vec<WaterColor>,
    #[serde(default = "default_turbidities")]
    pub turbidities: Vec<Turbidity>,
    #[serde(default = "default_frames")]
    pub frames_per_cell: u32,
    /// When present, each cell yields one dataset per size instead of one
    /// dataset of `frames_per_cell` frames.
    #[serde(default)]
    pub dataset_sizes: Option<Vec<u32>>,
    #[serde(default = "default_orbit")]
    pub orbit: OrbitRule,
    #[serde(default)]
    pub orbit_radius_m: f64,
    #[serde(default = "default_depth")]
    pub water_depth_m: f64,
    #[serde(default = "default_output")]
    pub output_size: u32,
    #[serde(default = "default_native")]
    pub native_size: u32,
    #[serde(default = "default_split")]
    pub split_ratio: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub extras: Vec<ExtraPool>,
    #[serde(default)]
    pub mixes: Vec<MixSpec>,
    #[serde(default = "default_category")]
    pub category: String,
    /// Everything not swept: object, seafloor, sun, sky, waves, render settings.
    /// Water, camera placement and image size are overwritten per job.
    #[serde(default = "default_scene")]
    pub scene: SceneSpec,
}

fn default_altitudes() -> Vec<f64> {
    vec![10.0, 20.0, 30.0, 40.0, 50.0]
}

fn default_colors() -> Vec<WaterColor> {
    vec![WaterColor::Brown, WaterColor::Blue, WaterColor::Green]
}

fn default_turbidities() -> Vec<Turbidity> {
    vec![Turbidity::Low]
}

fn default_frames() -> u32 {
    DEFAULT_FRAMES_PER_CELL
}

fn default_orbit() -> OrbitRule {
    OrbitRule::Uniform
}

fn default_depth() -> f64 {
    DEFAULT_DEPTH
}

fn default_output() -> u32 {
    DEFAULT_OUTPUT_SIZE
}

fn default_native() -> u32 {
    DEFAULT_NATIVE_SIZE
}

fn default_split() -> f64 {
    DEFAULT_SPLIT_RATIO
}

fn default_category() -> String {
    DEFAULT_CATEGORY.to_string()
}

fn default_scene() -> SceneSpec {
    SceneSpec::new(10.0)
}

impl Default for CampaignSpec {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "_+-.".contains(c))
        && !s.starts_with('.')
}

impl CampaignSpec {
    pub fn from_json_str(s: &str) -> Result<Self, CampaignError> {
        let spec: CampaignSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Relative mesh paths in the scene template resolve against the file's directory.
    pub fn from_json_file(path: &Path) -> Result<Self, CampaignError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CampaignError::Io(path.to_path_buf(), e))?;
        let mut spec: CampaignSpec = serde_json::from_str(&text)?;
        if let Some(base) = path.parent() {
            spec.scene.resolve_paths(base);
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        let bad = |field: &str, reason: String| {
            Err(CampaignError::Invalid {
                field: field.into(),
                reason,
            })
        };
        for (field, empty) in [
            ("altitudes_m", self.altitudes_m.is_empty()),
            ("colors", self.colors.is_empty()),
            ("turbidities", self.turbidities.is_empty()),
        ] {
            if empty {
                return bad(field, "sweep list is empty".into());
            }
        }
        if let Some(a) = self
            .altitudes_m
            .iter()
            .find(|a| !(a.is_finite() && **a > 0.0))
        {
            return bad("altitudes_m", format!("altitude {a} must be > 0"));
        }
        if self.frames_per_cell < 1 {
            return bad("frames_per_cell", "must be >= 1".into());
        }
        match &self.dataset_sizes {
            Some(s) if s.is_empty() => return bad("dataset_sizes", "list is empty".into()),
            Some(s) if s.contains(&0) => return bad("dataset_sizes", "sizes must be >= 1".into()),
            _ => {}
        }
        match &self.orbit {
            OrbitRule::Evenly { count: 0 } => return bad("orbit.count", "must be >= 1".into()),
            OrbitRule::List { angles }
                if angles.is_empty() || angles.iter().any(|a| !a.is_finite()) =>
            {
                return bad("orbit.angles", "needs at least one finite angle".into())
            }
            _ => {}
        }
        if !(self.orbit_radius_m.is_finite() && self.orbit_radius_m >= 0.0) {
            return bad("orbit_radius_m", "must be >= 0".into());
        }
        if !(self.water_depth_m.is_finite() && self.water_depth_m > 0.0) {
            return bad("water_depth_m", "must be > 0".into());
        }
        if self.output_size < MIN_OUTPUT_SIZE {
            return bad("output_size", format!("must be >= {MIN_OUTPUT_SIZE}"));
        }
        if self.native_size < 1 || self.native_size > crate::scene::MAX_RESOLUTION {
            return bad(
                "native_size",
                format!("must be in 1..={}", crate::scene::MAX_RESOLUTION),
            );
        }
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return bad("split_ratio", "must lie strictly between 0 and 1".into());
        }
        if self.category.is_empty() {
            return bad("category", "must not be empty".into());
        }
        for (i, p) in self.extras.iter().enumerate() {
            if !valid_name(&p.name) {
                return bad(
                    &format!("extras[{i}].name"),
                    format!("`{}` is not a valid name", p.name),
                );
            }
            if p.count < 1 {
                return bad(&format!("extras[{i}].count"), "must be >= 1".into());
            }
            if !(p.cell.altitude_m.is_finite() && p.cell.altitude_m > 0.0) {
                return bad(&format!("extras[{i}].altitude_m"), "must be > 0".into());
            }
        }
        for (i, m) in self.mixes.iter().enumerate() {
            if !valid_name(&m.label) {
                return bad(
                    &format!("mixes[{i}].label"),
                    format!("`{}` is not a valid name", m.label),
                );
            }
            if let Some(e) = m
                .extras
                .iter()
                .find(|e| !self.extras.iter().any(|p| &p.name == *e))
            {
                return bad(&format!("mixes[{i}].extras"), format!("unknown pool `{e}`"));
            }
        }
        self.scene.validate().map_err(|e| CampaignError::Scene(e))?;
        Ok(())
    }
}
