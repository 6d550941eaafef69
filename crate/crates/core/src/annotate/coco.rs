//! COCO detection datasets.
//!
//! Field order is fixed by the struct declarations below, so serializing the
//! same dataset always produces the same bytes.

use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bbox::{mask_to_bbox, BBox};
use super::rle::{mask_to_rle, rle_to_mask, Rle};
use super::AnnotateError;
use crate::mask::Mask;

pub const DEFAULT_CATEGORY: &str = "bluerov";
pub const CATEGORY_ID: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocoImage {
    pub id: u64,
    pub file_name: String,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocoAnnotation {
    pub id: u64,
    pub image_id: u64,
    pub category_id: u64,
    /// `[x, y, w, h]` in pixels.
    pub bbox: [f64; 4],
    pub area: f64,
    #[serde(default)]
    pub iscrowd: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segmentation: Option<Rle>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocoCategory {
    pub id: u64,
    pub name: String,
    #[serde(default)]
    pub supercategory: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocoDataset {
    pub images: Vec<CocoImage>,
    pub annotations: Vec<CocoAnnotation>,
    pub categories: Vec<CocoCategory>,
}

/// One rendered frame as seen by the annotator.
#[derive(Debug, Clone, Copy)]
pub struct CocoFrame<'a> {
    pub file_name: &'a str,
    pub width: u32,
    pub height: u32,
    pub mask: &'a Mask,
}

/// Annotation content derived from one mask, before ids are assigned.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameAnnotation {
    pub bbox: BBox,
    pub area: u64,
    pub rle: Rle,
}

/// Per-frame annotation; `None` for an empty mask (kept as a negative image).
pub fn annotate_mask(mask: &Mask) -> Option<FrameAnnotation> {
    let bbox = mask_to_bbox(mask)?;
    Some(FrameAnnotation {
        bbox,
        area: mask.count(),
        rle: mask_to_rle(mask),
    })
}

pub fn build_coco(frames: &[CocoFrame<'_>]) -> Result<CocoDataset, AnnotateError> {
    build_coco_named(frames, DEFAULT_CATEGORY)
}

/// Image ids are 1-based in input order; annotation ids are 1-based in the
/// order of frames with a nonempty mask.
pub fn build_coco_named(
    frames: &[CocoFrame<'_>],
    category: &str,
) -> Result<CocoDataset, AnnotateError> {
    for (i, f) in frames.iter().enumerate() {
        if (f.mask.width(), f.mask.height()) != (f.width, f.height) {
            return Err(AnnotateError::DimensionMismatch {
                index: i,
                image: (f.width, f.height),
                mask: (f.mask.width(), f.mask.height()),
            });
        }
    }
    let per_frame: Vec<Option<FrameAnnotation>> =
        frames.par_iter().map(|f| annotate_mask(f.mask)).collect();
    let records: Vec<AnnotatedImage<'_>> = frames
        .iter()
        .zip(per_frame.iter())
        .map(|(f, a)| AnnotatedImage {
            file_name: f.file_name,
            width: f.width,
            height: f.height,
            annotation: a.as_ref(),
        })
        .collect();
    Ok(assemble_coco(&records, category))
}

/// An image with its precomputed annotation.
#[derive(Debug, Clone, Copy)]
pub struct AnnotatedImage<'a> {
    pub file_name: &'a str,
    pub width: u32,
    pub height: u32,
    pub annotation: Option<&'a FrameAnnotation>,
}

/// Ordered reduce of per-frame annotations into a dataset, with the same id
/// rules as [`build_coco_named`].
pub fn assemble_coco(records: &[AnnotatedImage<'_>], category: &str) -> CocoDataset {
    let mut ds = CocoDataset {
        images: Vec::with_capacity(records.len()),
        annotations: Vec::new(),
        categories: vec![CocoCategory {
            id: CATEGORY_ID,
            name: category.to_string(),
            supercategory: String::new(),
        }],
    };
    for (i, rec) in records.iter().enumerate() {
        let image_id = i as u64 + 1;
        ds.images.push(CocoImage {
            id: image_id,
            file_name: rec.file_name.to_string(),
            width: rec.width,
            height: rec.height,
        });
        if let Some(a) = rec.annotation {
            ds.annotations.push(CocoAnnotation {
                id: ds.annotations.len() as u64 + 1,
                image_id,
                category_id: CATEGORY_ID,
                bbox: a.bbox.to_f64(),
                area: a.area as f64,
                iscrowd: 0,
                segmentation: Some(a.rle.clone()),
            });
        }
    }
    ds
}

impl CocoDataset {
    pub fn from_json_str(s: &str) -> Result<Self, AnnotateError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, AnnotateError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| AnnotateError::Io(path.to_path_buf(), e))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dataset serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<(), AnnotateError> {
        std::fs::write(path, self.to_json()).map_err(|e| AnnotateError::Io(path.to_path_buf(), e))
    }

    pub fn image(&self, id: u64) -> Option<&CocoImage> {
        self.images.iter().find(|im| im.id == id)
    }

    /// Referential integrity and field sanity. Errors name the offending record.
    pub fn validate(&self) -> Result<(), AnnotateError> {
        let bad = |record: String, reason: String| Err(AnnotateError::Schema { record, reason });
        if self.categories.len() != 1 {
            return bad(
                "categories".into(),
                format!(
                    "expected exactly one category, found {}",
                    self.categories.len()
                ),
            );
        }
        let category = self.categories[0].id;
        let mut image_ids = HashSet::new();
        for (i, im) in self.images.iter().enumerate() {
            if !image_ids.insert(im.id) {
                return bad(format!("images[{i}]"), format!("duplicate id {}", im.id));
            }
            if im.width == 0 || im.height == 0 {
                return bad(format!("images[{i}]"), "zero width or height".into());
            }
            if im.file_name.is_empty() {
                return bad(format!("images[{i}]"), "empty file_name".into());
            }
        }
        let mut ann_ids = HashSet::new();
        for (i, a) in self.annotations.iter().enumerate() {
            let rec = || format!("annotations[{i}]");
            if !ann_ids.insert(a.id) {
                return bad(rec(), format!("duplicate id {}", a.id));
            }
            let Some(im) = self.image(a.image_id) else {
                return bad(rec(), format!("unknown image_id {}", a.image_id));
            };
            if a.category_id != category {
                return bad(rec(), format!("unknown category_id {}", a.category_id));
            }
            let [x, y, w, h] = a.bbox;
            if !a.bbox.iter().all(|v| v.is_finite()) || w <= 0.0 || h <= 0.0 || x < 0.0 || y < 0.0 {
                return bad(rec(), format!("malformed bbox {:?}", a.bbox));
            }
            if x + w > im.width as f64 || y + h > im.height as f64 {
                return bad(
                    rec(),
                    format!("bbox {:?} exceeds image {}x{}", a.bbox, im.width, im.height),
                );
            }
            if !(a.area.is_finite() && a.area > 0.0) {
                return bad(rec(), format!("area {} must be positive", a.area));
            }
            if let Some(rle) = &a.segmentation {
                if rle.size != [im.height, im.width] {
                    return bad(
                        rec(),
                        format!("segmentation size {:?} does not match image", rle.size),
                    );
                }
                let decoded = rle_to_mask(rle)?;
                if decoded.count() as f64 != a.area {
                    return bad(
                        rec(),
                        format!(
                            "area {} != segmentation pixel count {}",
                            a.area,
                            decoded.count()
                        ),
                    );
                }
                if mask_to_bbox(&decoded).map(BBox::to_f64) != Some(a.bbox) {
                    return bad(
                        rec(),
                        "bbox is not the tight box of the segmentation".into(),
                    );
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_mask_is_negative_image() {
        let full = Mask::filled(4, 4, true);
        let empty = Mask::new(4, 4);
        let frames = [
            CocoFrame {
                file_name: "a.png",
                width: 4,
                height: 4,
                mask: &full,
            },
            CocoFrame {
                file_name: "b.png",
                width: 4,
                height: 4,
                mask: &empty,
            },
            CocoFrame {
                file_name: "c.png",
                width: 4,
                height: 4,
                mask: &full,
            },
        ];
        let ds = build_coco(&frames).unwrap();
        assert_eq!(ds.images.len(), 3);
        assert_eq!(ds.annotations.len(), 2);
        assert_eq!(ds.annotations[1].image_id, 3);
        assert_eq!(ds.annotations[1].id, 2);
        ds.validate().unwrap();
    }

    #[test]
    fn dimension_mismatch() {
        let m = Mask::new(4, 4);
        let frames = [CocoFrame {
            file_name: "a.png",
            width: 5,
            height: 4,
            mask: &m,
        }];
        assert!(matches!(
            build_coco(&frames),
            Err(AnnotateError::DimensionMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn field_order_is_fixed() {
        let m = Mask::filled(1, 1, true);
        let ds = build_coco(&[CocoFrame {
            file_name: "a.png",
            width: 1,
            height: 1,
            mask: &m,
        }])
        .unwrap();
        assert_eq!(
            ds.to_json(),
            r#"{"images":[{"id":1,"file_name":"a.png","width":1,"height":1}],"annotations":[{"id":1,"image_id":1,"category_id":1,"bbox":[0.0,0.0,1.0,1.0],"area":1.0,"iscrowd":0,"segmentation":{"size":[1,1],"counts":[0,1]}}],"categories":[{"id":1,"name":"bluerov","supercategory":""}]}"#
        );
    }
}
