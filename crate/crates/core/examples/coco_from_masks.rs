//! Builds a COCO dataset from hand-made masks: boxes, areas and
//! column-major RLE segmentations, then validates and prints it.

use seadronesim::annotate::{build_coco, rle_to_mask, CocoFrame};
use seadronesim::mask::Mask;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let disc = Mask::from_fn(24, 16, |c, r| {
        (c as f64 - 11.5).powi(2) + (r as f64 - 7.5).powi(2) < 20.0
    });
    let strip = Mask::from_fn(24, 16, |c, _| (3..6).contains(&c));
    let empty = Mask::new(24, 16);

    let frames = [
        CocoFrame {
            file_name: "frame_000000.png",
            width: 24,
            height: 16,
            mask: &disc,
        },
        CocoFrame {
            file_name: "frame_000001.png",
            width: 24,
            height: 16,
            mask: &strip,
        },
        CocoFrame {
            file_name: "frame_000002.png",
            width: 24,
            height: 16,
            mask: &empty,
        },
    ];
    let ds = build_coco(&frames)?;
    ds.validate()?;

    for a in &ds.annotations {
        let rle = a
            .segmentation
            .as_ref()
            .expect("segmentation is always written");
        assert_eq!(rle_to_mask(rle)?.count() as f64, a.area);
        println!(
            "image {} bbox {:?} area {} rle {:?}",
            a.image_id, a.bbox, a.area, rle.counts
        );
    }
    println!("{}", ds.to_json());
    Ok(())
}
