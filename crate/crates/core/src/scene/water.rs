//! Water volume optics and named color/turbidity presets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SceneError;
use crate::math::{Rgb, Vec3};

/// Index of refraction of the water surface.
pub const WATER_IOR: f64 = 1.33;
/// Water column depth used by presets unless overridden (m).
pub const DEFAULT_DEPTH: f64 = 3.0;

const ABSORPTION_SCALE: f64 = 0.3;
const LOW_TURBIDITY_SCATTERING: f64 = 0.05;
const HIGH_TURBIDITY_SCATTERING: f64 = 0.6;
const PRESET_PHASE_G: f64 = 0.8;

/// Homogeneous participating medium filling the water column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaterMedium {
    /// Absorption coefficient per channel (1/m).
    pub sigma_a: Rgb,
    /// Scattering coefficient per channel (1/m).
    pub sigma_s: Rgb,
    /// Henyey-Greenstein asymmetry in (-1, 1).
    pub phase_g: f64,
    /// Depth of the column below the surface (m).
    pub depth: f64,
}

impl WaterMedium {
    /// Medium with no absorption and no scattering.
    pub fn clear(depth: f64) -> Self {
        WaterMedium {
            sigma_a: Rgb::BLACK,
            sigma_s: Rgb::BLACK,
            phase_g: 0.0,
            depth,
        }
    }

    pub fn sigma_t(&self) -> Rgb {
        self.sigma_a + self.sigma_s
    }

    /// Single-scattering albedo; zero where the medium is empty.
    pub fn albedo(&self) -> Rgb {
        self.sigma_s
            .zip(self.sigma_t(), |s, t| if t > 0.0 { s / t } else { 0.0 })
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        let bad = |field: &str, reason: &str| Err(SceneError::invalid(field, reason));
        if !self.sigma_a.is_finite() || self.sigma_a.min_component() < 0.0 {
            return bad("water.sigma_a", "must be finite and >= 0 in every channel");
        }
        if !self.sigma_s.is_finite() || self.sigma_s.min_component() < 0.0 {
            return bad("water.sigma_s", "must be finite and >= 0 in every channel");
        }
        if !(self.phase_g > -1.0 && self.phase_g < 1.0) {
            return bad("water.phase_g", "must lie in (-1, 1)");
        }
        if !(self.depth > 0.0 && self.depth.is_finite()) {
            return bad("water.depth", "must be > 0");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaterColor {
    Brown,
    Blue,
    Green,
}

impl WaterColor {
    pub const ALL: [WaterColor; 3] = [WaterColor::Brown, WaterColor::Blue, WaterColor::Green];

    pub fn tint(self) -> Rgb {
        match self {
            WaterColor::Brown => Rgb::new(0.35, 0.25, 0.12),
            WaterColor::Blue => Rgb::new(0.05, 0.20, 0.40),
            WaterColor::Green => Rgb::new(0.10, 0.35, 0.18),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WaterColor::Brown => "brown",
            WaterColor::Blue => "blue",
            WaterColor::Green => "green",
        }
    }
}

impl fmt::Display for WaterColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaterColor {
    type Err = SceneError;
    fn from_str(s: &str) -> Result<Self, SceneError> {
        match s.to_ascii_lowercase().as_str() {
            "brown" => Ok(WaterColor::Brown),
            "blue" => Ok(WaterColor::Blue),
            "green" => Ok(WaterColor::Green),
            _ => Err(SceneError::UnknownPreset(format!(
                "water color `{s}` (expected brown, blue or green)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turbidity {
    Low,
    High,
}

impl Turbidity {
    pub const ALL: [Turbidity; 2] = [Turbidity::Low, Turbidity::High];

    pub fn scattering(self) -> Rgb {
        match self {
            Turbidity::Low => Rgb::splat(LOW_TURBIDITY_SCATTERING),
            Turbidity::High => Rgb::splat(HIGH_TURBIDITY_SCATTERING),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Turbidity::Low => "low",
            Turbidity::High => "high",
        }
    }
}

impl fmt::Display for Turbidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Turbidity {
    type Err = SceneError;
    fn from_str(s: &str) -> Result<Self, SceneError> {
        match s.to_ascii_lowercase().as_str() {
            "low" => Ok(Turbidity::Low),
            "high" => Ok(Turbidity::High),
            _ => Err(SceneError::UnknownPreset(format!(
                "turbidity level `{s}` (expected low or high)"
            ))),
        }
    }
}

/// Preset medium and base tint for a named water color and turbidity.
///
/// Absorption follows the tint: channels the water reflects strongly are
/// absorbed weakly, `sigma_a = 0.3/m * (1 - tint)`. Turbidity sets a gray
/// scattering coefficient.
pub fn water_preset(color: WaterColor, turbidity: Turbidity) -> (WaterMedium, Rgb) {
    let tint = color.tint();
    let medium = WaterMedium {
        sigma_a: tint.map(|t| ABSORPTION_SCALE * (1.0 - t)),
        sigma_s: turbidity.scattering(),
        phase_g: PRESET_PHASE_G,
        depth: DEFAULT_DEPTH,
    };
    (medium, tint)
}

/// String-keyed variant of [`water_preset`].
pub fn water_preset_named(color: &str, turbidity: &str) -> Result<(WaterMedium, Rgb), SceneError> {
    Ok(water_preset(color.parse()?, turbidity.parse()?))
}

/// Procedural ripple field: two sinusoidal octaves perturbing the normal of
/// the flat z = 0 surface. Geometry stays planar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WaveParams {
    /// Height amplitude of the first octave (m). The second has half of it.
    pub amplitude: f64,
    /// Wavelength of the first octave (m). The second is 0.37 of it.
    pub wavelength: f64,
    /// Direction of the first octave in the xy-plane (radians).
    pub direction: f64,
}

impl Default for WaveParams {
    fn default() -> Self {
        WaveParams {
            amplitude: 0.02,
            wavelength: 2.0,
            direction: 0.6,
        }
    }
}

impl WaveParams {
    pub fn flat() -> Self {
        WaveParams {
            amplitude: 0.0,
            ..WaveParams::default()
        }
    }

    /// Upward-facing unit normal at `(x, y)`.
    pub fn normal(&self, x: f64, y: f64) -> Vec3 {
        if self.amplitude == 0.0 {
            return Vec3::Z;
        }
        let octaves = [
            (self.amplitude, self.wavelength, self.direction),
            (
                0.5 * self.amplitude,
                0.37 * self.wavelength,
                self.direction + 1.9,
            ),
        ];
        let (mut hx, mut hy) = (0.0, 0.0);
        for (amp, wavelength, dir) in octaves {
            let k = 2.0 * std::f64::consts::PI / wavelength;
            let (kx, ky) = (k * dir.cos(), k * dir.sin());
            let slope = amp * (kx * x + ky * y).cos();
            hx += slope * kx;
            hy += slope * ky;
        }
        Vec3::new(-hx, -hy, 1.0).normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_monotone_in_turbidity() {
        for color in WaterColor::ALL {
            let (low, tint_low) = water_preset(color, Turbidity::Low);
            let (high, tint_high) = water_preset(color, Turbidity::High);
            assert_eq!(tint_low, tint_high);
            for c in 0..3 {
                assert!(high.sigma_s[c] > low.sigma_s[c]);
            }
            low.validate().unwrap();
            high.validate().unwrap();
        }
    }

    #[test]
    fn preset_values() {
        let (m, tint) = water_preset(WaterColor::Brown, Turbidity::Low);
        assert_eq!(tint, Rgb::new(0.35, 0.25, 0.12));
        assert!((m.sigma_a[0] - 0.3 * 0.65).abs() < 1e-15);
        assert_eq!(m.sigma_s, Rgb::splat(0.05));
        assert_eq!(m.phase_g, 0.8);
        let (m, _) = water_preset(WaterColor::Green, Turbidity::High);
        assert_eq!(m.sigma_s, Rgb::splat(0.6));
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(matches!(
            water_preset_named("purple", "low"),
            Err(SceneError::UnknownPreset(_))
        ));
        assert!(matches!(
            water_preset_named("blue", "medium"),
            Err(SceneError::UnknownPreset(_))
        ));
        assert!(water_preset_named("Blue", "HIGH").is_ok());
    }

    #[test]
    fn albedo_bounded() {
        for color in WaterColor::ALL {
            for t in Turbidity::ALL {
                let (m, _) = water_preset(color, t);
                assert!(m.albedo().max_component() <= 1.0);
            }
        }
        assert_eq!(WaterMedium::clear(1.0).albedo(), Rgb::BLACK);
    }

    #[test]
    fn flat_waves_give_vertical_normal() {
        assert_eq!(WaveParams::flat().normal(3.0, -2.0), Vec3::Z);
        let n = WaveParams::default().normal(0.3, 0.7);
        assert!((n.length() - 1.0).abs() < 1e-12 && n.z > 0.99);
    }
}
