use image::RgbImage;

use super::CampaignError;
use crate::annotate::{mask_to_bbox, BBox};
use crate::mask::Mask;

/// Source pixels overlapping each destination pixel, with overlap weights
/// normalized to sum to one.
fn area_weights(src: u32, dst: u32) -> Vec<Vec<(u32, f64)>> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|o| {
            let (a, b) = (o as f64 * scale, (o + 1) as f64 * scale);
            let first = a.floor() as u32;
            let last = (b.ceil() as u32).min(src);
            (first..last)
                .filter_map(|s| {
                    let w = (b.min(s as f64 + 1.0) - a.max(s as f64)) / scale;
                    (w > 0.0).then_some((s, w))
                })
                .collect()
        })
        .collect()
}

/// Box-filter (area-averaging) resample to `width` x `height`.
pub fn resize_area(img: &RgbImage, width: u32, height: u32) -> RgbImage {
    let wx = area_weights(img.width(), width);
    let wy = area_weights(img.height(), height);
    let mut out = RgbImage::new(width, height);
    for (oy, ry) in wy.iter().enumerate() {
        for (ox, rx) in wx.iter().enumerate() {
            let mut acc = [0.0f64; 3];
            for &(sy, fy) in ry {
                for &(sx, fx) in rx {
                    let p = img.get_pixel(sx, sy).0;
                    for c in 0..3 {
                        acc[c] += fy * fx * p[c] as f64;
                    }
                }
            }
            out.put_pixel(
                ox as u32,
                oy as u32,
                image::Rgb(acc.map(|v| v.round().clamp(0.0, 255.0) as u8)),
            );
        }
    }
    out
}

/// Nearest-neighbor resample: destination pixel centers sample the source.
pub fn resize_mask_nearest(mask: &Mask, width: u32, height: u32) -> Mask {
    let pick = |o: u32, src: u32, dst: u32| {
        (((o as f64 + 0.5) * src as f64 / dst as f64).floor() as u32).min(src - 1)
    };
    Mask::from_fn(width, height, |col, row| {
        mask.get(
            pick(col, mask.width(), width),
            pick(row, mask.height(), height),
        )
    })
}

/// Resizes image and mask to `target` x `target`; the box is recomputed from
/// the resized mask rather than scaled.
pub fn resize_with_annotations(
    img: &RgbImage,
    mask: &Mask,
    target: u32,
) -> Result<(RgbImage, Mask, Option<BBox>), CampaignError> {
    if target < 1 {
        return Err(CampaignError::Invalid {
            field: "target".into(),
            reason: "must be >= 1".into(),
        });
    }
    if img.dimensions() != (mask.width(), mask.height()) || mask.width() == 0 || mask.height() == 0
    {
        return Err(CampaignError::Invalid {
            field: "mask".into(),
            reason: format!(
                "mask {}x{} does not match image {:?}",
                mask.width(),
                mask.height(),
                img.dimensions()
            ),
        });
    }
    let resized_mask = resize_mask_nearest(mask, target, target);
    let bbox = mask_to_bbox(&resized_mask);
    Ok((resize_area(img, target, target), resized_mask, bbox))
}
