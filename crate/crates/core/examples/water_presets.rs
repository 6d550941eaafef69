//! Prints the medium of every water preset and renders a small swatch of
//! each so the color and turbidity differences can be compared side by side.
//!
//! cargo run --release --example water_presets -- [out_dir]

use std::path::PathBuf;

use seadronesim::pipeline::render_spec;
use seadronesim::scene::{water_preset, SceneSpec, Turbidity, WaterColor, WaterSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "out/water_presets".into()),
    );
    std::fs::create_dir_all(&out)?;

    for color in WaterColor::ALL {
        for turbidity in Turbidity::ALL {
            let (m, tint) = water_preset(color, turbidity);
            println!(
                "{color:>5}/{turbidity:<4} sigma_a {:?} sigma_s {:?} g {} tint {:?}",
                m.sigma_a.0, m.sigma_s.0, m.phase_g, tint.0
            );

            let mut spec = SceneSpec::new(10.0);
            spec.water = WaterSpec::preset(color, turbidity);
            spec.camera.width = 128;
            spec.camera.height = 128;
            spec.render.samples_per_pixel = 32;
            let frame = render_spec(&spec, 0, None)?;
            frame
                .rgb8
                .save(out.join(format!("{color}_{turbidity}.png")))?;
        }
    }
    println!("swatches in {}", out.display());
    Ok(())
}
