use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::math::Vec3;

/// Independent random stream for one (seed, frame, pixel, sample) tuple.
///
/// The four words form the ChaCha key directly, so streams never depend on
/// how pixels are scheduled across workers.
pub fn sample_stream(seed: u64, frame: u64, pixel: u64, sample: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (chunk, word) in key.chunks_exact_mut(8).zip([seed, frame, pixel, sample]) {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Cosine-weighted direction in the hemisphere around unit `n`.
pub fn cosine_hemisphere(n: Vec3, u1: f64, u2: f64) -> Vec3 {
    let r = u1.sqrt();
    let phi = 2.0 * PI * u2;
    let (a, b) = n.orthonormal_basis();
    let z = (1.0 - u1).max(0.0).sqrt();
    (a * (r * phi.cos()) + b * (r * phi.sin()) + n * z).normalized()
}

/// Unpolarized Fresnel reflectance for light arriving at `cos_i` (> 0) from a
/// medium with index `eta_i` onto one with index `eta_t`. Returns 1 under
/// total internal reflection.
pub fn fresnel_dielectric(cos_i: f64, eta_i: f64, eta_t: f64) -> f64 {
    let cos_i = cos_i.clamp(0.0, 1.0);
    let sin_t = eta_i / eta_t * (1.0 - cos_i * cos_i).max(0.0).sqrt();
    if sin_t >= 1.0 {
        return 1.0;
    }
    let cos_t = (1.0 - sin_t * sin_t).max(0.0).sqrt();
    let r_par = (eta_t * cos_i - eta_i * cos_t) / (eta_t * cos_i + eta_i * cos_t);
    let r_perp = (eta_i * cos_i - eta_t * cos_t) / (eta_i * cos_i + eta_t * cos_t);
    0.5 * (r_par * r_par + r_perp * r_perp)
}

/// Mirror `dir` about the plane with unit normal `n`.
pub fn reflect(dir: Vec3, n: Vec3) -> Vec3 {
    dir - n * (2.0 * dir.dot(n))
}

/// Refracts `dir` through a surface whose unit normal `n` faces against
/// `dir`, with `eta = eta_i / eta_t`. `None` on total internal reflection.
pub fn refract(dir: Vec3, n: Vec3, eta: f64) -> Option<Vec3> {
    let cos_i = -dir.dot(n);
    let sin2_t = eta * eta * (1.0 - cos_i * cos_i).max(0.0);
    if sin2_t >= 1.0 {
        return None;
    }
    let cos_t = (1.0 - sin2_t).sqrt();
    Some((dir * eta + n * (eta * cos_i - cos_t)).normalized())
}
