//! Loads a Wavefront OBJ as the object of interest and renders it.
//!
//! cargo run --release --example obj_mesh -- path/to/model.obj [scale] [out_dir]
//!
//! Without arguments the bundled unit cube is used.

use std::path::PathBuf;

use seadronesim::pipeline::{render_spec, write_frame};
use seadronesim::scene::{load_mesh, MeshSource, SceneSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/unit_cube.obj")
    });
    let scale: f64 = args.next().map_or(Ok(0.5), |s| s.parse())?;
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/obj_mesh".into()));

    let loaded = load_mesh(&path)?;
    println!(
        "{}: {} triangles, {} degenerate dropped, area {:.3} m^2 (unscaled)",
        path.display(),
        loaded.mesh.triangle_count(),
        loaded.degenerate_dropped,
        loaded.mesh.surface_area()
    );

    let mut spec = SceneSpec::new(8.0);
    spec.object.mesh = MeshSource::Obj { path, scale };
    spec.camera.width = 192;
    spec.camera.height = 192;
    spec.render.samples_per_pixel = 32;
    let frame = render_spec(&spec, 0, None)?;
    write_frame(&frame, &out, "frame")?;
    println!(
        "mask pixels {}; wrote {}",
        frame.mask.count(),
        out.display()
    );
    Ok(())
}
