//! Deterministic train/val split and the native-to-output resize that
//! recomputes boxes from the resized mask.

use seadronesim::campaign::{name_hash, resize_with_annotations, split_dataset, train_count};
use seadronesim::mask::Mask;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [10, 137, 308, 626, 2500] {
        println!(
            "N = {n:>4}: train {:>4}, val {:>3}",
            train_count(n, 0.8),
            n - train_count(n, 0.8)
        );
    }

    let frames: Vec<String> = (0..10).map(|i| format!("frame_{i:06}.png")).collect();
    let seed = 42 ^ name_hash("alt10m_brown_low");
    let (train, val) = split_dataset(&frames, 0.8, seed)?;
    println!("train {train:?}\nval   {val:?}");

    // A 9x5 object near the corner of an 832x832 frame, downsampled to 416.
    let mask = Mask::from_fn(832, 832, |c, r| {
        (101..110).contains(&c) && (40..45).contains(&r)
    });
    let img = image::RgbImage::from_fn(832, 832, |c, r| {
        image::Rgb([(c % 256) as u8, (r % 256) as u8, 128])
    });
    let (small, small_mask, bbox) = resize_with_annotations(&img, &mask, 416)?;
    println!(
        "resized to {}x{}, {} mask px, bbox {:?}",
        small.width(),
        small.height(),
        small_mask.count(),
        bbox
    );
    Ok(())
}
