use std::collections::HashSet;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spec::{Cell, OrbitRule, TILT_RANGE_DEG};
use super::{CampaignError, CampaignSpec};
use crate::math::Quat;
use crate::scene::{CameraSpec, SceneSpec, WaterSpec};

/// Where a job's frame primarily belongs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JobSource {
    Grid { dataset: String },
    Extra { pool: String },
}

impl JobSource {
    pub fn name(&self) -> &str {
        match self {
            JobSource::Grid { dataset } => dataset,
            JobSource::Extra { pool } => pool,
        }
    }
}

/// One frame to render, fully determined by the campaign spec and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub id: u64,
    pub source: JobSource,
    pub cell: Cell,
    pub orbit_angle: f64,
    pub object_yaw: f64,
    pub object_pitch: f64,
    pub object_roll: f64,
}

impl Job {
    pub fn file_stem(&self) -> String {
        format!("frame_{:06}", self.id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetPlan {
    pub name: String,
    /// Job ids in dataset order.
    pub jobs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignPlan {
    pub spec: CampaignSpec,
    pub jobs: Vec<Job>,
    pub datasets: Vec<DatasetPlan>,
}

impl CampaignPlan {
    pub fn job(&self, id: u64) -> &Job {
        &self.jobs[id as usize]
    }

    /// The scene a job renders at native resolution.
    pub fn scene_for(&self, job: &Job) -> SceneSpec {
        let spec = &self.spec;
        let mut scene = spec.scene.clone();
        scene.water = WaterSpec::Preset {
            color: job.cell.color,
            turbidity: job.cell.turbidity,
            depth_m: spec.water_depth_m,
        };
        scene.camera = CameraSpec {
            altitude_m: job.cell.altitude_m,
            orbit_angle: job.orbit_angle,
            orbit_radius_m: spec.orbit_radius_m,
            width: spec.native_size,
            height: spec.native_size,
            target: None,
            ..spec.scene.camera
        };
        let tilt = Quat::from_yaw_pitch_roll(job.object_yaw, job.object_pitch, job.object_roll);
        scene.object.pose.rotation = (tilt * spec.scene.object.pose.rotation).normalized();
        scene.seed = spec.seed;
        scene
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} jobs, {} datasets\n",
            self.jobs.len(),
            self.datasets.len()
        );
        for d in &self.datasets {
            s += &format!("  {:<28} {:>6} frames\n", d.name, d.jobs.len());
        }
        s
    }
}

/// Per-frame variation drawn from stream `job_id` of the campaign seed.
fn draw_job(
    spec: &CampaignSpec,
    id: u64,
    index_in_source: u64,
    source: JobSource,
    cell: Cell,
) -> Job {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(id);
    let orbit_u: f64 = rng.random();
    let object_yaw = TAU * rng.random::<f64>();
    let tilt = TILT_RANGE_DEG.to_radians();
    let object_pitch = rng.random_range(-tilt..=tilt);
    let object_roll = rng.random_range(-tilt..=tilt);
    let orbit_angle = match &spec.orbit {
        OrbitRule::Uniform => TAU * orbit_u,
        OrbitRule::Evenly { count } => {
            TAU * (index_in_source % *count as u64) as f64 / *count as f64
        }
        OrbitRule::List { angles } => angles[(index_in_source % angles.len() as u64) as usize],
    };
    Job {
        id,
        source,
        cell,
        orbit_angle,
        object_yaw,
        object_pitch,
        object_roll,
    }
}

/// Expands the sweep into jobs and datasets. Grid cells come first (altitude,
/// then color, then turbidity, then size), followed by the extra pools.
pub fn plan_campaign(spec: &CampaignSpec) -> Result<CampaignPlan, CampaignError> {
    spec.validate()?;
    let mut jobs = Vec::new();
    let mut datasets = Vec::new();
    let sizes: Vec<Option<u32>> = match &spec.dataset_sizes {
        Some(s) => s.iter().map(|&n| Some(n)).collect(),
        None => vec![None],
    };

    for &altitude_m in &spec.altitudes_m {
        for &color in &spec.colors {
            for &turbidity in &spec.turbidities {
                let cell = Cell {
                    altitude_m,
                    color,
                    turbidity,
                };
                for &size in &sizes {
                    let name = match size {
                        Some(n) => format!("{}_n{n}", cell.label()),
                        None => cell.label(),
                    };
                    let count = size.unwrap_or(spec.frames_per_cell);
                    let mut ids = Vec::with_capacity(count as usize);
                    for k in 0..count as u64 {
                        let id = jobs.len() as u64;
                        jobs.push(draw_job(
                            spec,
                            id,
                            k,
                            JobSource::Grid {
                                dataset: name.clone(),
                            },
                            cell,
                        ));
                        ids.push(id);
                    }
                    datasets.push(DatasetPlan { name, jobs: ids });
                }
            }
        }
    }

    let mut pools = Vec::new();
    for pool in &spec.extras {
        let mut ids = Vec::with_capacity(pool.count as usize);
        for k in 0..pool.count as u64 {
            let id = jobs.len() as u64;
            jobs.push(draw_job(
                spec,
                id,
                k,
                JobSource::Extra {
                    pool: pool.name.clone(),
                },
                pool.cell,
            ));
            ids.push(id);
        }
        pools.push((pool.name.clone(), ids));
    }

    for (i, mix) in spec.mixes.iter().enumerate() {
        let base = datasets
            .iter()
            .find(|d: &&DatasetPlan| d.name == mix.base)
            .ok_or_else(|| CampaignError::Invalid {
                field: format!("mixes[{i}].base"),
                reason: format!("unknown dataset `{}`", mix.base),
            })?;
        let mut ids = base.jobs.clone();
        for e in &mix.extras {
            ids.extend(
                &pools
                    .iter()
                    .find(|(n, _)| n == e)
                    .expect("validated pool name")
                    .1,
            );
        }
        datasets.push(DatasetPlan {
            name: mix.label.clone(),
            jobs: ids,
        });
    }

    let mut seen = HashSet::new();
    if let Some(d) = datasets.iter().find(|d| !seen.insert(d.name.as_str())) {
        return Err(CampaignError::Invalid {
            field: "mixes".into(),
            reason: format!("duplicate dataset name `{}`", d.name),
        });
    }
    Ok(CampaignPlan {
        spec: spec.clone(),
        jobs,
        datasets,
    })
}
