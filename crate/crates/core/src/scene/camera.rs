//! Pinhole camera carried by a point-like drone that stays fixated on a target.

use std::f64::consts::PI;

use super::SceneError;
use crate::math::{Quat, Vec3};

/// Largest accepted image side in pixels.
pub const MAX_RESOLUTION: u32 = 30_000;
pub const DEFAULT_VERTICAL_FOV_DEG: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Vec3,
    /// Unit direction.
    pub dir: Vec3,
}

impl Ray {
    pub fn at(&self, t: f64) -> Vec3 {
        self.origin + self.dir * t
    }
}

/// Camera pose and intrinsics. Always looks exactly at `target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraRig {
    pub altitude: f64,
    pub orbit_angle: f64,
    pub orbit_radius: f64,
    pub target: Vec3,
    pub vertical_fov: f64,
    pub image_width: u32,
    pub image_height: u32,
    position: Vec3,
    forward: Vec3,
    right: Vec3,
    up: Vec3,
}

/// Places the camera `altitude` meters above the water plane, on the circle of
/// radius `orbit_radius` around `target` at azimuth `orbit_angle`, looking at
/// `target`.
///
/// The image "up" direction points away from the camera's horizontal offset,
/// so a zero-radius (nadir) camera still has a well-defined roll set by
/// `orbit_angle`.
pub fn place_camera(
    altitude: f64,
    orbit_radius: f64,
    orbit_angle: f64,
    target: Vec3,
    vertical_fov: f64,
    width: u32,
    height: u32,
) -> Result<CameraRig, SceneError> {
    if !(altitude > 0.0 && altitude.is_finite()) {
        return Err(SceneError::invalid(
            "camera.altitude_m",
            format!("must be > 0, got {altitude}"),
        ));
    }
    if !(orbit_radius >= 0.0 && orbit_radius.is_finite()) {
        return Err(SceneError::invalid(
            "camera.orbit_radius_m",
            format!("must be >= 0, got {orbit_radius}"),
        ));
    }
    if !orbit_angle.is_finite() {
        return Err(SceneError::invalid("camera.orbit_angle", "must be finite"));
    }
    if !target.is_finite() {
        return Err(SceneError::invalid("camera.target", "must be finite"));
    }
    if target.z >= altitude {
        return Err(SceneError::invalid(
            "camera.target",
            "target must lie below the camera altitude",
        ));
    }
    if !(vertical_fov > 0.0 && vertical_fov < PI) {
        return Err(SceneError::invalid(
            "camera.vertical_fov",
            format!("must lie in (0, pi), got {vertical_fov}"),
        ));
    }
    for (field, v) in [("camera.width", width), ("camera.height", height)] {
        if !(1..=MAX_RESOLUTION).contains(&v) {
            return Err(SceneError::invalid(
                field,
                format!("must lie in 1..={MAX_RESOLUTION}, got {v}"),
            ));
        }
    }

    let horizontal = Vec3::new(orbit_angle.cos(), orbit_angle.sin(), 0.0);
    let position = Vec3::new(target.x, target.y, altitude) + horizontal * orbit_radius;
    let forward = (target - position).normalized();
    let right = forward.cross(-horizontal).normalized();
    let up = right.cross(forward);
    Ok(CameraRig {
        altitude,
        orbit_angle,
        orbit_radius,
        target,
        vertical_fov,
        image_width: width,
        image_height: height,
        position,
        forward,
        right,
        up,
    })
}

impl CameraRig {
    pub fn position(&self) -> Vec3 {
        self.position
    }

    pub fn forward(&self) -> Vec3 {
        self.forward
    }

    pub fn right(&self) -> Vec3 {
        self.right
    }

    pub fn up(&self) -> Vec3 {
        self.up
    }

    /// Focal length in pixels.
    pub fn focal_px(&self) -> f64 {
        0.5 * self.image_height as f64 / (0.5 * self.vertical_fov).tan()
    }

    /// Camera-to-world rotation using the convention that the camera looks down
    /// its local -z axis with local +y up.
    pub fn rotation(&self) -> Quat {
        Quat::from_basis(self.right, self.up, -self.forward)
    }

    /// Primary ray through continuous pixel coordinates; `(0, 0)` is the top-left
    /// corner of the image and `(col + 0.5, row + 0.5)` a pixel center.
    pub fn ray(&self, px: f64, py: f64) -> Ray {
        let f = self.focal_px();
        let x = (px - 0.5 * self.image_width as f64) / f;
        let y = (0.5 * self.image_height as f64 - py) / f;
        Ray {
            origin: self.position,
            dir: (self.forward + self.right * x + self.up * y).normalized(),
        }
    }

    /// Continuous pixel coordinates of a world point, or `None` behind the camera.
    pub fn project(&self, p: Vec3) -> Option<(f64, f64)> {
        let d = p - self.position;
        let depth = d.dot(self.forward);
        if depth <= 0.0 {
            return None;
        }
        let f = self.focal_px();
        let px = 0.5 * self.image_width as f64 + f * d.dot(self.right) / depth;
        let py = 0.5 * self.image_height as f64 - f * d.dot(self.up) / depth;
        Some((px, py))
    }

    /// Whether a point projects inside the image bounds.
    pub fn sees(&self, p: Vec3) -> bool {
        match self.project(p) {
            Some((x, y)) => {
                x >= 0.0
                    && y >= 0.0
                    && x <= self.image_width as f64
                    && y <= self.image_height as f64
            }
            None => false,
        }
    }
}
