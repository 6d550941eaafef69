//! Renders one frame of the default scene and writes the image, mask and
//! metadata sidecar.
//!
//! cargo run --release --example render_frame -- [out_dir] [altitude_m]

use std::path::PathBuf;

use seadronesim::pipeline::{render_spec, write_frame};
use seadronesim::scene::SceneSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/render_frame".into()));
    let altitude: f64 = args.next().map_or(Ok(10.0), |a| a.parse())?;

    let mut spec = SceneSpec::new(altitude);
    spec.camera.width = 256;
    spec.camera.height = 256;
    spec.render.samples_per_pixel = 32;
    spec.seed = 7;

    let frame = render_spec(&spec, 0, None)?;
    let files = write_frame(&frame, &out, "frame_000000")?;
    println!("mask pixels: {}", frame.mask.count());
    println!(
        "wrote {}, {}, {}",
        files.image.display(),
        files.mask.display(),
        files.meta.display()
    );
    Ok(())
}
