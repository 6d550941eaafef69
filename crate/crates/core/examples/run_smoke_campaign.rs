//! Renders the small smoke campaign into dataset trees with progress output.
//!
//! cargo run --release --example run_smoke_campaign -- [out_dir]

use std::path::PathBuf;

use seadronesim::campaign::{plan_campaign, run_campaign, CampaignSpec, Progress, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "out/smoke".into()),
    );
    let spec = CampaignSpec::from_json_file(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/campaign_smoke.json"),
    )?;
    let plan = plan_campaign(&spec)?;
    print!("{}", plan.summary());

    let report = |p: &Progress<'_>| {
        println!(
            "[{:>2}/{}] {} ({}/{} in {})",
            p.done,
            p.total,
            p.job.file_stem(),
            p.done_in_source,
            p.source_total,
            p.job.source.name()
        );
    };
    let summaries = run_campaign(
        &plan,
        &out,
        &RunOptions {
            progress: Some(&report),
            ..RunOptions::default()
        },
    )?;
    for s in summaries {
        println!(
            "{}: train {} val {} annotations {} -> {}",
            s.name,
            s.train,
            s.val,
            s.annotations,
            s.dir.display()
        );
    }
    Ok(())
}
