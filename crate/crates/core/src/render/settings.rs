use serde::{Deserialize, Serialize};

pub const DEFAULT_SPP: u32 = 64;
pub const DEFAULT_MAX_BOUNCES: u32 = 6;

/// Per-frame render parameters.
///
/// `seed` and `frame_index` key the per-pixel random streams; they are not
/// part of the JSON form (a scene file carries its seed at the top level).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSettings {
    #[serde(default = "default_spp")]
    pub samples_per_pixel: u32,
    /// Maximum number of scattering vertices (diffuse surface hits and medium
    /// scattering events) per path. Specular water-surface events are not counted.
    #[serde(default = "default_bounces")]
    pub max_bounces: u32,
    #[serde(skip)]
    pub seed: u64,
    #[serde(skip)]
    pub frame_index: u64,
    #[serde(default = "default_exposure")]
    pub exposure: f64,
}

fn default_spp() -> u32 {
    DEFAULT_SPP
}

fn default_bounces() -> u32 {
    DEFAULT_MAX_BOUNCES
}

fn default_exposure() -> f64 {
    1.0
}

impl Default for RenderSettings {
    fn default() -> Self {
        RenderSettings {
            samples_per_pixel: DEFAULT_SPP,
            max_bounces: DEFAULT_MAX_BOUNCES,
            seed: 0,
            frame_index: 0,
            exposure: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid `{field}`: {reason}")]
pub struct SettingsError {
    pub field: String,
    pub reason: String,
}

impl RenderSettings {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_spp(mut self, spp: u32) -> Self {
        self.samples_per_pixel = spp;
        self
    }

    pub fn validate(&self) -> Result<(), SettingsError> {
        let err = |field: &str, reason: &str| {
            Err(SettingsError {
                field: field.into(),
                reason: reason.into(),
            })
        };
        if self.samples_per_pixel < 1 {
            return err("render.samples_per_pixel", "must be >= 1");
        }
        if self.max_bounces < 1 {
            return err("render.max_bounces", "must be >= 1");
        }
        if !(self.exposure > 0.0 && self.exposure.is_finite()) {
            return err("render.exposure", "must be > 0");
        }
        Ok(())
    }
}
