//! Homogeneous-medium transport: Beer-Lambert attenuation, free-flight
//! distance sampling and the Henyey-Greenstein phase function.

use std::f64::consts::PI;

use super::RenderError;
use crate::math::{Rgb, Vec3};
use crate::scene::WaterMedium;

/// Fraction of light surviving `distance` meters, per channel.
pub fn transmittance(medium: &WaterMedium, distance: f64) -> Result<Rgb, RenderError> {
    if !(distance >= 0.0) {
        return Err(RenderError::NegativeDistance(distance));
    }
    Ok(beer_lambert(medium.sigma_t(), distance))
}

pub(crate) fn beer_lambert(sigma_t: Rgb, distance: f64) -> Rgb {
    sigma_t.map(|s| if s == 0.0 { 1.0 } else { (-s * distance).exp() })
}

/// Outcome of sampling a free-flight distance along a segment of length `t_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FreeFlight {
    /// A scattering event at distance `t`. `weight` already includes `sigma_s`
    /// and divides out the sampling density.
    Scatter { t: f64, weight: Rgb },
    /// The segment was crossed without scattering.
    Pass { weight: Rgb },
}

/// Samples a collision distance against the largest channel of `sigma_t`
/// and reweights each channel by its own transmittance. Unbiased per channel.
///
/// A medium with no scattering in any channel is never sampled: the segment
/// is crossed with its exact transmittance.
pub fn sample_free_flight(medium: &WaterMedium, t_max: f64, u: f64) -> FreeFlight {
    let sigma_t = medium.sigma_t();
    if medium.sigma_s.is_black() {
        return FreeFlight::Pass {
            weight: beer_lambert(sigma_t, t_max),
        };
    }
    let majorant = sigma_t.max_component();
    let t = -(1.0 - u).ln() / majorant;
    if t < t_max {
        let weight = medium
            .sigma_s
            .zip(sigma_t, |s, st| s * ((majorant - st) * t).exp() / majorant);
        FreeFlight::Scatter { t, weight }
    } else {
        let weight = sigma_t.map(|st| {
            if st == majorant {
                1.0
            } else {
                ((majorant - st) * t_max).exp()
            }
        });
        FreeFlight::Pass { weight }
    }
}

/// Henyey-Greenstein phase function. Angles are measured between the
/// propagation directions before and after scattering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HenyeyGreenstein {
    pub g: f64,
}

impl HenyeyGreenstein {
    pub fn new(g: f64) -> Self {
        HenyeyGreenstein { g }
    }

    /// Density per steradian.
    pub fn eval(&self, cos_theta: f64) -> f64 {
        let g = self.g;
        let denom = 1.0 + g * g - 2.0 * g * cos_theta;
        (1.0 - g * g) / (4.0 * PI * denom * denom.sqrt())
    }

    /// Cosine of the scattering angle for a uniform sample `u`.
    pub fn sample_cos(&self, u: f64) -> f64 {
        let g = self.g;
        if g.abs() < 1e-3 {
            return 1.0 - 2.0 * u;
        }
        let s = (1.0 - g * g) / (1.0 - g + 2.0 * g * u);
        ((1.0 + g * g - s * s) / (2.0 * g)).clamp(-1.0, 1.0)
    }

    /// New propagation direction given the current one; the density equals
    /// [`eval`](Self::eval), so the throughput weight is one.
    pub fn sample(&self, dir: Vec3, u1: f64, u2: f64) -> Vec3 {
        let cos_t = self.sample_cos(u1);
        let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
        let phi = 2.0 * PI * u2;
        let (a, b) = dir.orthonormal_basis();
        (dir * cos_t + a * (sin_t * phi.cos()) + b * (sin_t * phi.sin())).normalized()
    }
}
