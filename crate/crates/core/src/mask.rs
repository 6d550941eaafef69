//! Binary per-pixel masks, stored row-major.

use std::path::Path;

use image::GrayImage;

/// A `width x height` binary image. Pixel `(col, row)` lives at `row * width + col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl Mask {
    pub fn new(width: u32, height: u32) -> Self {
        Mask {
            width,
            height,
            bits: vec![false; width as usize * height as usize],
        }
    }

    pub fn filled(width: u32, height: u32, value: bool) -> Self {
        Mask {
            width,
            height,
            bits: vec![value; width as usize * height as usize],
        }
    }

    /// Wraps row-major bits. Panics if the length does not match.
    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Self {
        assert_eq!(
            bits.len(),
            width as usize * height as usize,
            "mask size mismatch"
        );
        Mask {
            width,
            height,
            bits,
        }
    }

    pub fn from_fn(width: u32, height: u32, f: impl Fn(u32, u32) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width as usize * height as usize);
        for row in 0..height {
            for col in 0..width {
                bits.push(f(col, row));
            }
        }
        Mask {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, col: u32, row: u32) -> bool {
        self.bits[row as usize * self.width as usize + col as usize]
    }

    pub fn set(&mut self, col: u32, row: u32, value: bool) {
        let w = self.width as usize;
        self.bits[row as usize * w + col as usize] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// 8-bit grayscale rendition: 255 for set pixels, 0 otherwise.
    pub fn to_gray_image(&self) -> GrayImage {
        GrayImage::from_fn(self.width, self.height, |c, r| {
            image::Luma([if self.get(c, r) { 255 } else { 0 }])
        })
    }

    /// Any nonzero pixel is treated as set.
    pub fn from_gray_image(img: &GrayImage) -> Self {
        Mask::from_fn(img.width(), img.height(), |c, r| {
            img.get_pixel(c, r).0[0] != 0
        })
    }

    pub fn save_png(&self, path: &Path) -> image::ImageResult<()> {
        self.to_gray_image()
            .save_with_format(path, image::ImageFormat::Png)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_roundtrip() {
        let m = Mask::from_fn(5, 3, |c, r| (c + r) % 2 == 0);
        assert_eq!(Mask::from_gray_image(&m.to_gray_image()), m);
        assert_eq!(m.count(), 8);
    }
}
