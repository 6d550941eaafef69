//! COCO uncompressed run-length encoding.
//!
//! Pixels are scanned column by column (Fortran order) and `counts` alternates
//! run lengths starting with a run of zeros, which may be empty.

use serde::{Deserialize, Serialize};

use super::AnnotateError;
use crate::mask::Mask;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rle {
    /// `[height, width]`.
    pub size: [u32; 2],
    pub counts: Vec<u64>,
}

impl Rle {
    pub fn height(&self) -> u32 {
        self.size[0]
    }

    pub fn width(&self) -> u32 {
        self.size[1]
    }

    /// Number of set pixels without decoding.
    pub fn area(&self) -> u64 {
        self.counts.iter().skip(1).step_by(2).sum()
    }
}

pub fn mask_to_rle(mask: &Mask) -> Rle {
    let (w, h) = (mask.width(), mask.height());
    let mut counts = Vec::new();
    let mut current = false;
    let mut run = 0u64;
    for col in 0..w {
        for row in 0..h {
            let v = mask.get(col, row);
            if v != current {
                counts.push(run);
                run = 0;
                current = v;
            }
            run += 1;
        }
    }
    counts.push(run);
    Rle {
        size: [h, w],
        counts,
    }
}

pub fn rle_to_mask(rle: &Rle) -> Result<Mask, AnnotateError> {
    let (h, w) = (rle.height(), rle.width());
    let total: u64 = rle.counts.iter().sum();
    if total != h as u64 * w as u64 {
        return Err(AnnotateError::Rle(format!(
            "counts sum to {total}, expected {h}x{w} = {}",
            h as u64 * w as u64
        )));
    }
    let mut mask = Mask::new(w, h);
    let mut k = 0u64;
    for (i, &run) in rle.counts.iter().enumerate() {
        if i % 2 == 1 {
            for j in k..k + run {
                mask.set((j / h as u64) as u32, (j % h as u64) as u32, true);
            }
        }
        k += run;
    }
    Ok(mask)
}
