use std::path::Path;

use super::AnnotateError;
use crate::render::FrameMeta;

/// Sidecar file name for an image: `frame_0001.png` -> `frame_0001.meta.json`.
pub fn sidecar_name(image_file: &str) -> String {
    let stem = Path::new(image_file)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(image_file);
    format!("{stem}.meta.json")
}

pub fn write_meta_sidecar(meta: &FrameMeta, path: &Path) -> Result<(), AnnotateError> {
    let text = serde_json::to_string_pretty(meta)?;
    std::fs::write(path, text + "\n").map_err(|e| AnnotateError::Io(path.to_path_buf(), e))
}

/// Every field is required; unknown fields are rejected.
pub fn read_meta_sidecar(path: &Path) -> Result<FrameMeta, AnnotateError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| AnnotateError::Io(path.to_path_buf(), e))?;
    Ok(serde_json::from_str(&text)?)
}
