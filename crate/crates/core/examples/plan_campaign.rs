//! Plans a campaign from a JSON file without rendering and prints the job
//! and dataset counts plus the first few jobs.
//!
//! cargo run --example plan_campaign -- configs/size_sweep.json

use std::path::PathBuf;

use seadronesim::campaign::{plan_campaign, CampaignSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/altitude_sweep.json")
        });
    let plan = plan_campaign(&CampaignSpec::from_json_file(&path)?)?;
    print!("{}", plan.summary());
    for job in plan.jobs.iter().take(3) {
        println!(
            "{} {:<24} alt {:>4} m {:>5}/{:<4} orbit {:.3} yaw {:.3} pitch {:+.3} roll {:+.3}",
            job.file_stem(),
            job.source.name(),
            job.cell.altitude_m,
            job.cell.color,
            job.cell.turbidity,
            job.orbit_angle,
            job.object_yaw,
            job.object_pitch,
            job.object_roll
        );
    }
    Ok(())
}
