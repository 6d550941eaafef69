//! Wavefront OBJ ingestion (positions and faces only).
//!
//! Normals and texture coordinates are ignored; shading normals are recomputed
//! from geometry. Polygons with more than three corners are fan-triangulated.
//! `usemtl` switches the per-face material id, assigned in order of first use.

use std::collections::HashMap;
use std::path::Path;

use log::warn;

use super::mesh::TriangleMesh;
use super::SceneError;
use crate::math::Vec3;

/// Result of loading an OBJ file.
#[derive(Debug, Clone)]
pub struct LoadedMesh {
    pub mesh: TriangleMesh,
    /// Faces dropped because their area was below the degeneracy tolerance.
    pub degenerate_dropped: usize,
    /// Material names in id order.
    pub materials: Vec<String>,
}

pub fn load_mesh(path: &Path) -> Result<LoadedMesh, SceneError> {
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let loaded = parse_obj(&text)?;
    if loaded.degenerate_dropped > 0 {
        warn!(
            "{}: dropped {} degenerate face(s)",
            path.display(),
            loaded.degenerate_dropped
        );
    }
    Ok(loaded)
}

pub fn parse_obj(text: &str) -> Result<LoadedMesh, SceneError> {
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    let mut material_ids = Vec::new();
    let mut materials: Vec<String> = Vec::new();
    let mut material_lookup: HashMap<String, u32> = HashMap::new();
    let mut current_material = 0u32;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| SceneError::ObjParse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        match keyword {
            "v" => {
                let coords: Vec<f64> = tokens
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| err(format!("bad vertex coordinate `{t}`")))
                    })
                    .collect::<Result<_, _>>()?;
                if !(3..=4).contains(&coords.len()) {
                    return Err(err(format!(
                        "vertex needs 3 coordinates, got {}",
                        coords.len()
                    )));
                }
                let v = Vec3::new(coords[0], coords[1], coords[2]);
                if !v.is_finite() {
                    return Err(err("non-finite vertex coordinate".into()));
                }
                vertices.push(v);
            }
            "f" => {
                let corners: Vec<u32> = tokens
                    .map(|t| resolve_index(t, vertices.len()).map_err(&err))
                    .collect::<Result<_, _>>()?;
                if corners.len() < 3 {
                    return Err(err(format!(
                        "face needs at least 3 vertices, got {}",
                        corners.len()
                    )));
                }
                for k in 1..corners.len() - 1 {
                    triangles.push([corners[0], corners[k], corners[k + 1]]);
                    material_ids.push(current_material);
                }
            }
            "usemtl" => {
                let name = tokens.collect::<Vec<_>>().join(" ");
                current_material = *material_lookup.entry(name.clone()).or_insert_with(|| {
                    materials.push(name);
                    materials.len() as u32 - 1
                });
            }
            "vn" | "vt" | "vp" | "o" | "g" | "s" | "mtllib" | "l" | "p" => {}
            other => return Err(err(format!("unsupported statement `{other}`"))),
        }
    }

    let (mesh, degenerate_dropped) = TriangleMesh::from_parts(vertices, triangles, material_ids);
    if mesh.triangle_count() == 0 {
        return Err(SceneError::NoTriangles);
    }
    Ok(LoadedMesh {
        mesh,
        degenerate_dropped,
        materials,
    })
}

/// Resolves one face corner (`v`, `v/vt`, `v//vn`, `v/vt/vn`; negative = relative).
fn resolve_index(token: &str, vertex_count: usize) -> Result<u32, String> {
    let head = token.split('/').next().unwrap_or("");
    let raw: i64 = head
        .parse()
        .map_err(|_| format!("bad face index `{token}`"))?;
    let resolved = match raw {
        0 => return Err("face index 0 is invalid (OBJ indices are 1-based)".into()),
        r if r > 0 => r - 1,
        r => vertex_count as i64 + r,
    };
    if resolved < 0 || resolved >= vertex_count as i64 {
        return Err(format!(
            "face index {raw} out of range ({vertex_count} vertices defined)"
        ));
    }
    Ok(resolved as u32)
}
