//! Places the drone camera around the object at several orbit angles and
//! reports where the object lands in the image and how large its mask is.
//! Only the ID pass runs, so this is fast.

use seadronesim::annotate::mask_to_bbox;
use seadronesim::render::id_pass;
use seadronesim::scene::{assemble_scene, SceneSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for altitude in [10.0, 30.0] {
        for step in 0..4 {
            let mut spec = SceneSpec::new(altitude);
            spec.camera.orbit_radius_m = 5.0;
            spec.camera.orbit_angle = step as f64 * std::f64::consts::FRAC_PI_2;
            let scene = assemble_scene(&spec)?;
            let camera = spec.camera_rig()?;
            let mask = id_pass(&scene, &camera);
            let p = camera.position();
            println!(
                "alt {altitude:>4} m  orbit {:>5.2} rad  camera ({:>6.2}, {:>6.2}, {:>5.1})  mask {:>5} px  bbox {:?}",
                spec.camera.orbit_angle,
                p.x,
                p.y,
                p.z,
                mask.count(),
                mask_to_bbox(&mask)
            );
        }
    }
    Ok(())
}
