use serde::{Deserialize, Serialize};

use crate::mask::Mask;

/// Pixel box in COCO `xywh` order: top-left corner plus extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 4]", from = "[u32; 4]")]
pub struct BBox {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl BBox {
    pub const fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        BBox { x, y, w, h }
    }

    pub fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }

    pub fn contains(&self, col: u32, row: u32) -> bool {
        col >= self.x && row >= self.y && col < self.x + self.w && row < self.y + self.h
    }

    pub fn to_f64(self) -> [f64; 4] {
        [self.x as f64, self.y as f64, self.w as f64, self.h as f64]
    }
}

impl From<BBox> for [u32; 4] {
    fn from(b: BBox) -> Self {
        [b.x, b.y, b.w, b.h]
    }
}

impl From<[u32; 4]> for BBox {
    fn from([x, y, w, h]: [u32; 4]) -> Self {
        BBox { x, y, w, h }
    }
}

/// Tightest box around the set pixels, `None` for an empty mask.
pub fn mask_to_bbox(mask: &Mask) -> Option<BBox> {
    let (w, h) = (mask.width(), mask.height());
    let bits = mask.bits();
    let row_set = |r: u32| {
        bits[(r * w) as usize..((r + 1) * w) as usize]
            .iter()
            .any(|&b| b)
    };
    let y0 = (0..h).find(|&r| row_set(r))?;
    let y1 = (0..h).rev().find(|&r| row_set(r))?;
    let (mut x0, mut x1) = (u32::MAX, 0);
    for r in y0..=y1 {
        let row = &bits[(r * w) as usize..((r + 1) * w) as usize];
        if let Some(c) = row.iter().position(|&b| b) {
            x0 = x0.min(c as u32);
            x1 = x1.max(row.iter().rposition(|&b| b).unwrap() as u32);
        }
    }
    Some(BBox::new(x0, y0, x1 - x0 + 1, y1 - y0 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pixel() {
        let mut m = Mask::new(10, 10);
        m.set(5, 7, true);
        assert_eq!(mask_to_bbox(&m), Some(BBox::new(5, 7, 1, 1)));
    }

    #[test]
    fn empty_and_full() {
        assert_eq!(mask_to_bbox(&Mask::new(4, 3)), None);
        assert_eq!(
            mask_to_bbox(&Mask::filled(4, 3, true)),
            Some(BBox::new(0, 0, 4, 3))
        );
    }

    #[test]
    fn serializes_as_array() {
        assert_eq!(
            serde_json::to_string(&BBox::new(1, 2, 3, 4)).unwrap(),
            "[1,2,3,4]"
        );
    }
}
