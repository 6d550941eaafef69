use image::RgbImage;

use super::frame::RadianceImage;
use super::RenderError;

const GAMMA: f64 = 2.2;

/// `round(255 * clamp(1 - exp(-exposure * v), 0, 1)^(1/2.2))`.
pub fn tone_map_value(v: f64, exposure: f64) -> u8 {
    let x = (1.0 - (-exposure * v).exp()).clamp(0.0, 1.0);
    (255.0 * x.powf(1.0 / GAMMA)).round() as u8
}

/// Exponential tone curve followed by display gamma, per channel.
pub fn tone_map(radiance: &RadianceImage, exposure: f64) -> Result<RgbImage, RenderError> {
    let mut img = RgbImage::new(radiance.width, radiance.height);
    for (i, px) in radiance.pixels.iter().enumerate() {
        if px.iter().any(|c| !c.is_finite() || *c < 0.0) {
            let i = i as u32;
            return Err(RenderError::NonFiniteInput {
                col: i % radiance.width,
                row: i / radiance.width,
            });
        }
        let i = i as u32;
        img.put_pixel(
            i % radiance.width,
            i / radiance.width,
            image::Rgb(px.map(|c| tone_map_value(c as f64, exposure))),
        );
    }
    Ok(img)
}
