//! Bounding volume hierarchy over triangles (binned SAH build, stack traversal).

use super::camera::Ray;
use super::mesh::Aabb;
use crate::math::Vec3;

const LEAF_SIZE: usize = 4;
const BINS: usize = 16;
const MAX_DEPTH: usize = 48;
const STACK_SIZE: usize = MAX_DEPTH + 2;

/// Triangle in vertex + two-edge form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub v0: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
}

impl Triangle {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Self {
        Triangle {
            v0: a,
            e1: b - a,
            e2: c - a,
        }
    }

    pub fn vertices(&self) -> [Vec3; 3] {
        [self.v0, self.v0 + self.e1, self.v0 + self.e2]
    }

    pub fn bounds(&self) -> Aabb {
        Aabb::from_points(self.vertices())
    }

    pub fn centroid(&self) -> Vec3 {
        self.v0 + (self.e1 + self.e2) / 3.0
    }

    /// Unit geometric normal (counter-clockwise winding).
    pub fn normal(&self) -> Vec3 {
        self.e1.cross(self.e2).normalized()
    }

    /// Möller-Trumbore. Returns the hit distance in `(t_min, t_max)`.
    pub fn intersect(&self, ray: &Ray, t_min: f64, t_max: f64) -> Option<f64> {
        let p = ray.dir.cross(self.e2);
        let det = self.e1.dot(p);
        if det == 0.0 {
            return None;
        }
        let inv = 1.0 / det;
        let s = ray.origin - self.v0;
        let u = s.dot(p) * inv;
        if !(0.0..=1.0).contains(&u) {
            return None;
        }
        let q = s.cross(self.e1);
        let v = ray.dir.dot(q) * inv;
        if v < 0.0 || u + v > 1.0 {
            return None;
        }
        let t = self.e2.dot(q) * inv;
        (t > t_min && t < t_max).then_some(t)
    }
}

/// Nearest triangle hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriHit {
    pub t: f64,
    pub index: usize,
}

fn closer(t: f64, index: usize, best: &Option<TriHit>) -> bool {
    match best {
        None => true,
        Some(b) => t < b.t || (t == b.t && index < b.index),
    }
}

/// Reference intersection by scanning every triangle.
pub fn intersect_linear(tris: &[Triangle], ray: &Ray, t_min: f64, t_max: f64) -> Option<TriHit> {
    let mut best = None;
    for (i, tri) in tris.iter().enumerate() {
        if let Some(t) = tri.intersect(ray, t_min, t_max) {
            if closer(t, i, &best) {
                best = Some(TriHit { t, index: i });
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy)]
struct Node {
    bounds: Aabb,
    /// Leaf: first index into `order`. Interior: index of the right child
    /// (left child is the next node).
    offset: u32,
    /// Zero for interior nodes.
    count: u32,
}

#[derive(Debug, Clone, Default)]
pub struct Bvh {
    nodes: Vec<Node>,
    order: Vec<u32>,
}

struct BuildItem {
    bounds: Aabb,
    centroid: Vec3,
    index: u32,
}

impl Bvh {
    pub fn build(tris: &[Triangle]) -> Bvh {
        let mut items: Vec<BuildItem> = tris
            .iter()
            .enumerate()
            .map(|(i, t)| BuildItem {
                bounds: t.bounds(),
                centroid: t.centroid(),
                index: i as u32,
            })
            .collect();
        let mut bvh = Bvh {
            nodes: Vec::with_capacity(2 * tris.len().max(1)),
            order: Vec::with_capacity(tris.len()),
        };
        if !items.is_empty() {
            bvh.build_recursive(&mut items, 0);
        }
        bvh
    }

    fn build_recursive(&mut self, items: &mut [BuildItem], depth: usize) -> usize {
        let bounds = items.iter().fold(Aabb::EMPTY, |b, it| b.union(it.bounds));
        let pad = 1e-9
            * (1.0
                + bounds
                    .min
                    .max_abs_component()
                    .max(bounds.max.max_abs_component()));
        let bounds = Aabb {
            min: bounds.min - Vec3::splat(pad),
            max: bounds.max + Vec3::splat(pad),
        };
        let node_index = self.nodes.len();
        self.nodes.push(Node {
            bounds,
            offset: 0,
            count: 0,
        });

        let split = if items.len() <= LEAF_SIZE || depth >= MAX_DEPTH {
            None
        } else {
            find_split(items)
        };
        match split {
            None => {
                self.nodes[node_index].offset = self.order.len() as u32;
                self.nodes[node_index].count = items.len() as u32;
                self.order.extend(items.iter().map(|it| it.index));
            }
            Some(mid) => {
                let (left, right) = items.split_at_mut(mid);
                self.build_recursive(left, depth + 1);
                let right_index = self.build_recursive(right, depth + 1);
                self.nodes[node_index].offset = right_index as u32;
            }
        }
        node_index
    }

    pub fn triangle_count(&self) -> usize {
        self.order.len()
    }

    pub fn intersect(
        &self,
        tris: &[Triangle],
        ray: &Ray,
        t_min: f64,
        t_max: f64,
    ) -> Option<TriHit> {
        if self.nodes.is_empty() {
            return None;
        }
        let inv = Vec3::new(1.0 / ray.dir.x, 1.0 / ray.dir.y, 1.0 / ray.dir.z);
        let mut best: Option<TriHit> = None;
        let mut stack = [0usize; STACK_SIZE];
        let mut sp = 1;
        while sp > 0 {
            sp -= 1;
            let idx = stack[sp];
            let node = &self.nodes[idx];
            let limit = best.map_or(t_max, |b| b.t);
            // Equal-distance hits may still win on index, so the box test is inclusive of `limit`.
            if slab(&node.bounds, ray, &inv, t_min, limit).is_none() {
                continue;
            }
            if node.count > 0 {
                let start = node.offset as usize;
                for &ti in &self.order[start..start + node.count as usize] {
                    let ti = ti as usize;
                    if let Some(t) = tris[ti].intersect(ray, t_min, t_max) {
                        if closer(t, ti, &best) {
                            best = Some(TriHit { t, index: ti });
                        }
                    }
                }
            } else {
                stack[sp] = node.offset as usize;
                stack[sp + 1] = idx + 1;
                sp += 2;
            }
        }
        best
    }

    /// True when any triangle blocks the ray within `(t_min, t_max)`.
    pub fn occluded(&self, tris: &[Triangle], ray: &Ray, t_min: f64, t_max: f64) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let inv = Vec3::new(1.0 / ray.dir.x, 1.0 / ray.dir.y, 1.0 / ray.dir.z);
        let mut stack = [0usize; STACK_SIZE];
        let mut sp = 1;
        while sp > 0 {
            sp -= 1;
            let idx = stack[sp];
            let node = &self.nodes[idx];
            if slab(&node.bounds, ray, &inv, t_min, t_max).is_none() {
                continue;
            }
            if node.count > 0 {
                let start = node.offset as usize;
                if self.order[start..start + node.count as usize]
                    .iter()
                    .any(|&ti| tris[ti as usize].intersect(ray, t_min, t_max).is_some())
                {
                    return true;
                }
            } else {
                stack[sp] = node.offset as usize;
                stack[sp + 1] = idx + 1;
                sp += 2;
            }
        }
        false
    }
}

/// Ray/box overlap; returns the entry distance.
fn slab(b: &Aabb, ray: &Ray, inv: &Vec3, t_min: f64, t_max: f64) -> Option<f64> {
    let mut t0 = t_min;
    let mut t1 = t_max;
    for axis in 0..3 {
        let (o, i) = (ray.origin[axis], inv[axis]);
        let mut near = (b.min[axis] - o) * i;
        let mut far = (b.max[axis] - o) * i;
        if near > far {
            std::mem::swap(&mut near, &mut far);
        }
        // NaN (0 * inf) leaves the interval untouched.
        if near > t0 {
            t0 = near;
        }
        if far < t1 {
            t1 = far;
        }
        if t0 > t1 {
            return None;
        }
    }
    Some(t0)
}

/// Binned SAH partition. Reorders `items` and returns the split point.
fn find_split(items: &mut [BuildItem]) -> Option<usize> {
    let cbounds = items.iter().fold(Aabb::EMPTY, |b, it| b.grow(it.centroid));
    let extent = cbounds.extent();
    let axis = if extent.x >= extent.y && extent.x >= extent.z {
        0
    } else if extent.y >= extent.z {
        1
    } else {
        2
    };
    let (lo, span) = (cbounds.min[axis], extent[axis]);
    if !(span > 0.0) {
        // All centroids coincide: split by index to keep leaves small.
        return Some(items.len() / 2);
    }
    let bin_of = |c: f64| (((c - lo) / span * BINS as f64) as usize).min(BINS - 1);
    let mut counts = [0usize; BINS];
    let mut boxes = [Aabb::EMPTY; BINS];
    for it in items.iter() {
        let b = bin_of(it.centroid[axis]);
        counts[b] += 1;
        boxes[b] = boxes[b].union(it.bounds);
    }
    let mut best = (f64::INFINITY, 0);
    for split in 1..BINS {
        let (lb, lc) = (0..split).fold((Aabb::EMPTY, 0), |(b, c), i| {
            (b.union(boxes[i]), c + counts[i])
        });
        let (rb, rc) = (split..BINS).fold((Aabb::EMPTY, 0), |(b, c), i| {
            (b.union(boxes[i]), c + counts[i])
        });
        if lc == 0 || rc == 0 {
            continue;
        }
        let cost = lb.surface_area() * lc as f64 + rb.surface_area() * rc as f64;
        if cost < best.0 {
            best = (cost, split);
        }
    }
    if best.0.is_infinite() {
        return Some(items.len() / 2);
    }
    let split_bin = best.1;
    let mut i = 0;
    for j in 0..items.len() {
        if bin_of(items[j].centroid[axis]) < split_bin {
            items.swap(i, j);
            i += 1;
        }
    }
    Some(i)
}
