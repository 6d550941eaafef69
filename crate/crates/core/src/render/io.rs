//! Frame outputs on disk: PNG images and masks, raw radiance dumps.
//!
//! Radiance dump layout: `u32` width, `u32` height (little-endian), then
//! `width * height * 3` little-endian `f32` values, row-major RGB.

use std::io::{Read, Write};
use std::path::Path;

use super::frame::RadianceImage;
use super::RenderError;

pub fn write_rgb_png(img: &image::RgbImage, path: &Path) -> Result<(), RenderError> {
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| RenderError::Image(path.to_path_buf(), e))
}

pub fn write_mask_png(mask: &crate::mask::Mask, path: &Path) -> Result<(), RenderError> {
    mask.save_png(path)
        .map_err(|e| RenderError::Image(path.to_path_buf(), e))
}

pub fn encode_radiance(img: &RadianceImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + img.pixels.len() * 12);
    out.extend_from_slice(&img.width.to_le_bytes());
    out.extend_from_slice(&img.height.to_le_bytes());
    for px in &img.pixels {
        for c in px {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    out
}

pub fn decode_radiance(bytes: &[u8]) -> Result<RadianceImage, RenderError> {
    let bad = |msg: &str| RenderError::RadianceFormat(msg.to_string());
    if bytes.len() < 8 {
        return Err(bad("missing 8-byte header"));
    }
    let width = u32::from_le_bytes(bytes[0..4].try_into().unwrap());
    let height = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let expected = 8 + width as usize * height as usize * 12;
    if bytes.len() != expected {
        return Err(bad(&format!(
            "expected {expected} bytes for {width}x{height}, found {}",
            bytes.len()
        )));
    }
    let pixels = bytes[8..]
        .chunks_exact(12)
        .map(|px| {
            let f = |i: usize| f32::from_le_bytes(px[4 * i..4 * i + 4].try_into().unwrap());
            [f(0), f(1), f(2)]
        })
        .collect();
    Ok(RadianceImage {
        width,
        height,
        pixels,
    })
}

pub fn write_radiance(img: &RadianceImage, path: &Path) -> Result<(), RenderError> {
    let io = |e| RenderError::Io(path.to_path_buf(), e);
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(&encode_radiance(img)))
        .map_err(io)
}

pub fn read_radiance(path: &Path) -> Result<RadianceImage, RenderError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| RenderError::Io(path.to_path_buf(), e))?;
    decode_radiance(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radiance_dump_layout() {
        let img = RadianceImage {
            width: 2,
            height: 1,
            pixels: vec![[1.0, 2.0, 3.0], [0.5, 0.25, 0.0]],
        };
        let bytes = encode_radiance(&img);
        assert_eq!(bytes.len(), 8 + 24);
        assert_eq!(&bytes[0..8], &[2, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(&bytes[8..12], &1.0f32.to_le_bytes());
        assert_eq!(decode_radiance(&bytes).unwrap(), img);
        assert!(decode_radiance(&bytes[..20]).is_err());
    }
}
