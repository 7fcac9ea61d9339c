#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use cage::geometry::{CollisionKernel, ObjectShape, Obstacle, Scene, Vec2};
use cage::lie::{Pose2, Twist2};
use cage::planner::{branch_order, PoseGrid};
use cage::scene_file::SceneFile;
use cage::sweep::{sample_collision, SimpleMove, DENSE_SAMPLES};
use rand::Rng;

pub const CORPUS: [&str; 6] = [
    "bar_between_walls",
    "empty_square",
    "figure1_nshape",
    "ring_of_discs",
    "single_disc",
    "wall_with_gap",
];

pub fn scene_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenes")
        .join(format!("{name}.toml"))
}

pub fn load(name: &str) -> SceneFile {
    SceneFile::load(scene_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Dense-sampling edge test over the same branches the planner tries.
pub fn sampled_edge(kernel: &CollisionKernel, a: &Pose2, b: &Pose2, k_max: u32) -> bool {
    let rel = b.compose(&a.inverse());
    branch_order(k_max).any(|k| match rel.log(k) {
        Ok(g) => sample_collision(kernel, &SimpleMove::new(g, *a), DENSE_SAMPLES).is_none(),
        Err(_) => false,
    })
}

/// Placement reached by rotating about the centroid and sliding it, blended
/// linearly; used for neighbour steps in the flood fill.
fn blended(centroid: &Vec2, a: (f64, f64, f64), b: (f64, f64, f64), s: f64) -> Pose2 {
    let th = a.2 + (b.2 - a.2) * s;
    let cx = a.0 + (b.0 - a.0) * s;
    let cy = a.1 + (b.1 - a.1) * s;
    let r = Pose2::from_xy_angle(0.0, 0.0, th);
    let c = r.apply(centroid);
    Pose2::from_xy_angle(cx - c.x, cy - c.y, th)
}

/// Component count by breadth-first flood fill over the six grid neighbours,
/// with cells and steps tested by sampling instead of certification.
pub fn flood_fill_components(scene: &Scene, grid: &PoseGrid, step_samples: usize) -> Vec<usize> {
    let kernel = CollisionKernel::new(scene);
    let centroid = scene.object.centroid();
    let n = grid.cell_count();
    let free: Vec<bool> = (0..n)
        .map(|i| !kernel.intersects_at(&grid.cell_pose(i, &centroid)))
        .collect();
    let step_ok = |a: usize, b: usize| {
        let ca = grid.cell_center(a);
        let mut cb = grid.cell_center(b);
        let d = cb.2 - ca.2;
        if d > std::f64::consts::PI {
            cb.2 -= std::f64::consts::TAU;
        } else if d < -std::f64::consts::PI {
            cb.2 += std::f64::consts::TAU;
        }
        (0..=step_samples).all(|j| !kernel.intersects_at(&blended(&centroid, ca, cb, j as f64 / step_samples as f64)))
    };
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if !free[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut size = 0;
        while let Some(c) = queue.pop_front() {
            size += 1;
            let (ix, iy, it) = grid.coords(c);
            let mut nbrs = vec![
                grid.index(ix, iy, (it + 1) % grid.ntheta),
                grid.index(ix, iy, (it + grid.ntheta - 1) % grid.ntheta),
            ];
            if ix + 1 < grid.nx {
                nbrs.push(grid.index(ix + 1, iy, it));
            }
            if ix > 0 {
                nbrs.push(grid.index(ix - 1, iy, it));
            }
            if iy + 1 < grid.ny {
                nbrs.push(grid.index(ix, iy + 1, it));
            }
            if iy > 0 {
                nbrs.push(grid.index(ix, iy - 1, it));
            }
            for m in nbrs {
                if free[m] && !seen[m] && step_ok(c, m) {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Star-shaped polygon around the origin.
pub fn random_object(rng: &mut impl Rng) -> ObjectShape {
    let n = rng.gen_range(3..8);
    let step = std::f64::consts::TAU / n as f64;
    let angles: Vec<f64> = (0..n).map(|i| (i as f64 + rng.gen_range(-0.3..0.3)) * step).collect();
    let verts = angles
        .iter()
        .map(|a| {
            let r = rng.gen_range(0.2..1.0);
            Vec2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    ObjectShape::new(verts).expect("star-shaped polygon is simple")
}

pub fn random_cage(rng: &mut impl Rng, count: usize, spread: f64) -> Vec<Obstacle> {
    (0..count)
        .map(|i| {
            let p = Vec2::new(rng.gen_range(-spread..spread), rng.gen_range(-spread..spread));
            let r = rng.gen_range(0.0..0.4);
            if rng.gen_bool(0.5) {
                Obstacle::disc(p, r, i)
            } else {
                let q = p + Vec2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                Obstacle::capsule(p, q, r, i)
            }
        })
        .collect()
}

pub fn random_pose(rng: &mut impl Rng, spread: f64) -> Pose2 {
    Pose2::from_xy_angle(
        rng.gen_range(-spread..spread),
        rng.gen_range(-spread..spread),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

pub fn random_twist(rng: &mut impl Rng, xi: f64, theta: f64) -> Twist2 {
    Twist2::new(
        Vec2::new(rng.gen_range(-xi..xi), rng.gen_range(-xi..xi)),
        rng.gen_range(-theta..theta),
    )
    .unwrap()
}
