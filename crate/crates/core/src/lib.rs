//! Synthetic aerial imagery of objects floating in open water.
//!
//! A scene (object, water body, seafloor, distractors, sun, camera) is path
//! traced into an RGB frame together with a pixel-exact object mask and pose
//! metadata. Campaigns sweep altitude, water color and turbidity to produce
//! COCO-format datasets, and [`cocoeval`] scores detector output on them.

pub mod annotate;
pub mod campaign;
pub mod cli;
pub mod cocoeval;
pub mod mask;
pub mod math;
pub mod pipeline;
pub mod render;
pub mod scene;
