//! Masks to COCO annotations: tight boxes, RLE segmentations, areas and
//! per-image metadata sidecars.

mod bbox;
mod coco;
mod rle;
mod sidecar;

use std::path::PathBuf;

pub use bbox::{mask_to_bbox, BBox};
pub use coco::{
    annotate_mask, assemble_coco, build_coco, build_coco_named, AnnotatedImage, CocoAnnotation,
    CocoCategory, CocoDataset, CocoFrame, CocoImage, FrameAnnotation, CATEGORY_ID,
    DEFAULT_CATEGORY,
};
pub use rle::{mask_to_rle, rle_to_mask, Rle};
pub use sidecar::{read_meta_sidecar, sidecar_name, write_meta_sidecar};

#[derive(Debug, thiserror::Error)]
pub enum AnnotateError {
    #[error("frame {index}: image is {image:?} but mask is {mask:?}")]
    DimensionMismatch {
        index: usize,
        image: (u32, u32),
        mask: (u32, u32),
    },
    #[error("bad RLE: {0}")]
    Rle(String),
    #[error("{record}: {reason}")]
    Schema { record: String, reason: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
}
