use std::f64::consts::PI;

use crate::math::{Pose, Vec3};

/// Faces with area below this (m²) are considered degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub const EMPTY: Aabb = Aabb {
        min: Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
        max: Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
    };

    pub fn from_points(points: impl IntoIterator<Item = Vec3>) -> Aabb {
        points.into_iter().fold(Aabb::EMPTY, |b, p| b.grow(p))
    }

    pub fn grow(self, p: Vec3) -> Aabb {
        Aabb {
            min: self.min.min(p),
            max: self.max.max(p),
        }
    }

    pub fn union(self, o: Aabb) -> Aabb {
        Aabb {
            min: self.min.min(o.min),
            max: self.max.max(o.max),
        }
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    pub fn extent(&self) -> Vec3 {
        self.max - self.min
    }

    pub fn is_finite(&self) -> bool {
        self.min.is_finite() && self.max.is_finite()
    }

    pub fn surface_area(&self) -> f64 {
        let e = self.extent();
        if e.x < 0.0 {
            return 0.0;
        }
        2.0 * (e.x * e.y + e.y * e.z + e.z * e.x)
    }

    /// Closed-interval overlap test.
    pub fn overlaps(&self, o: &Aabb) -> bool {
        self.min.x <= o.max.x
            && o.min.x <= self.max.x
            && self.min.y <= o.max.y
            && o.min.y <= self.max.y
            && self.min.z <= o.max.z
            && o.min.z <= self.max.z
    }

    pub fn corners(&self) -> [Vec3; 8] {
        let (a, b) = (self.min, self.max);
        [
            Vec3::new(a.x, a.y, a.z),
            Vec3::new(b.x, a.y, a.z),
            Vec3::new(a.x, b.y, a.z),
            Vec3::new(b.x, b.y, a.z),
            Vec3::new(a.x, a.y, b.z),
            Vec3::new(b.x, a.y, b.z),
            Vec3::new(a.x, b.y, b.z),
            Vec3::new(b.x, b.y, b.z),
        ]
    }
}

/// Indexed triangle mesh with one material id per face.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
    pub material_ids: Vec<u32>,
}

impl TriangleMesh {
    /// Builds a mesh, dropping degenerate faces. Returns the mesh and the
    /// number of faces dropped. Indices must already be in range.
    pub fn from_parts(
        vertices: Vec<Vec3>,
        triangles: Vec<[u32; 3]>,
        material_ids: Vec<u32>,
    ) -> (TriangleMesh, usize) {
        debug_assert_eq!(triangles.len(), material_ids.len());
        let mut mesh = TriangleMesh {
            vertices,
            triangles: Vec::new(),
            material_ids: Vec::new(),
        };
        let mut dropped = 0;
        for (tri, mat) in triangles.into_iter().zip(material_ids) {
            assert!(
                tri.iter().all(|&i| (i as usize) < mesh.vertices.len()),
                "triangle index out of range"
            );
            if mesh.face_area_of(tri) < DEGENERATE_AREA {
                dropped += 1;
            } else {
                mesh.triangles.push(tri);
                mesh.material_ids.push(mat);
            }
        }
        (mesh, dropped)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle(&self, i: usize) -> [Vec3; 3] {
        self.triangles[i].map(|v| self.vertices[v as usize])
    }

    fn face_area_of(&self, tri: [u32; 3]) -> f64 {
        let [a, b, c] = tri.map(|v| self.vertices[v as usize]);
        0.5 * (b - a).cross(c - a).length()
    }

    pub fn face_area(&self, i: usize) -> f64 {
        self.face_area_of(self.triangles[i])
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.triangle_count()).map(|i| self.face_area(i)).sum()
    }

    pub fn bounds(&self) -> Aabb {
        Aabb::from_points(self.vertices.iter().copied())
    }

    pub fn transformed(&self, pose: &Pose) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|&v| pose.apply(v)).collect(),
            triangles: self.triangles.clone(),
            material_ids: self.material_ids.clone(),
        }
    }

    /// Box spanning `min..max`, outward-wound.
    pub fn cuboid(min: Vec3, max: Vec3) -> TriangleMesh {
        let vertices = Aabb { min, max }.corners().to_vec();
        #[rustfmt::skip]
        let triangles = vec![
            [0, 2, 1], [1, 2, 3], // bottom
            [4, 5, 6], [5, 7, 6], // top
            [0, 1, 4], [1, 5, 4], // -y
            [2, 6, 3], [3, 6, 7], // +y
            [0, 4, 2], [2, 4, 6], // -x
            [1, 3, 5], [3, 7, 5], // +x
        ];
        let n = triangles.len();
        TriangleMesh {
            vertices,
            triangles,
            material_ids: vec![0; n],
        }
    }

    /// Box of the given size centered at the origin.
    pub fn centered_box(size: Vec3) -> TriangleMesh {
        TriangleMesh::cuboid(size * -0.5, size * 0.5)
    }

    /// Latitude/longitude sphere centered at the origin.
    pub fn uv_sphere(radius: f64, segments: u32, rings: u32) -> TriangleMesh {
        let segments = segments.max(3);
        let rings = rings.max(2);
        let mut vertices = vec![Vec3::new(0.0, 0.0, radius)];
        for r in 1..rings {
            let theta = PI * r as f64 / rings as f64;
            for s in 0..segments {
                let phi = 2.0 * PI * s as f64 / segments as f64;
                vertices.push(
                    radius
                        * Vec3::new(
                            theta.sin() * phi.cos(),
                            theta.sin() * phi.sin(),
                            theta.cos(),
                        ),
                );
            }
        }
        vertices.push(Vec3::new(0.0, 0.0, -radius));
        let south = vertices.len() as u32 - 1;
        let ring = |r: u32, s: u32| 1 + (r - 1) * segments + (s % segments);
        let mut triangles = Vec::new();
        for s in 0..segments {
            triangles.push([0, ring(1, s), ring(1, s + 1)]);
        }
        for r in 1..rings - 1 {
            for s in 0..segments {
                let (a, b, c, d) = (
                    ring(r, s),
                    ring(r, s + 1),
                    ring(r + 1, s),
                    ring(r + 1, s + 1),
                );
                triangles.push([a, c, b]);
                triangles.push([b, c, d]);
            }
        }
        for s in 0..segments {
            triangles.push([south, ring(rings - 1, s + 1), ring(rings - 1, s)]);
        }
        let n = triangles.len();
        TriangleMesh {
            vertices,
            triangles,
            material_ids: vec![0; n],
        }
    }

    /// Right circular cone with its base disc at z = 0 and apex at z = height.
    pub fn cone(radius: f64, height: f64, segments: u32) -> TriangleMesh {
        let segments = segments.max(3);
        let mut vertices = vec![Vec3::new(0.0, 0.0, height), Vec3::ZERO];
        for s in 0..segments {
            let phi = 2.0 * PI * s as f64 / segments as f64;
            vertices.push(Vec3::new(radius * phi.cos(), radius * phi.sin(), 0.0));
        }
        let rim = |s: u32| 2 + s % segments;
        let mut triangles = Vec::new();
        for s in 0..segments {
            triangles.push([0, rim(s), rim(s + 1)]);
            triangles.push([1, rim(s + 1), rim(s)]);
        }
        let n = triangles.len();
        TriangleMesh {
            vertices,
            triangles,
            material_ids: vec![0; n],
        }
    }
}
