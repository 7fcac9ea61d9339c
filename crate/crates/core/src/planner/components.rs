use rayon::prelude::*;
use serde::Serialize;

use super::{FreeSpace, Planner};
use crate::geometry::{CollisionKernel, Scene};
use crate::lie::Pose2;
use crate::sweep::{Certifier, SimpleMove};

/// Connected components of the free grid under short certified moves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentLabeling {
    /// Label per grid cell; `None` for blocked cells.
    pub labels: Vec<Option<u32>>,
    /// Cells per label.
    pub sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn label(&self, cell: usize) -> Option<u32> {
        self.labels[cell]
    }
}

struct DisjointSet {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if self.rank[ra as usize] < self.rank[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo as usize] = hi;
        if self.rank[lo as usize] == self.rank[hi as usize] {
            self.rank[hi as usize] += 1;
        }
    }
}

/// Short move from `a` to its grid neighbour `b`: a single-cell translation,
/// or a single-bin rotation about the object centroid. Both are the
/// principal-branch screw between the two cell poses.
fn neighbour_move_is_free(certifier: &Certifier, a: &Pose2, b: &Pose2) -> bool {
    match b.compose(&a.inverse()).log(0) {
        Ok(twist) => certifier.certify_fast(&SimpleMove::new(twist, *a)).is_free(),
        Err(_) => false,
    }
}

pub(crate) fn label_components(kernel: &CollisionKernel, fs: &FreeSpace) -> ComponentLabeling {
    let grid = fs.grid();
    let n = grid.cell_count();
    let certifier = Certifier::new(kernel);
    let links: Vec<(u32, u32)> = (0..n)
        .into_par_iter()
        .filter(|&i| fs.is_free(i))
        .flat_map_iter(|i| {
            let (ix, iy, it) = grid.coords(i);
            let mut out = Vec::with_capacity(3);
            let mut neighbours = Vec::with_capacity(3);
            if ix + 1 < grid.nx {
                neighbours.push(grid.index(ix + 1, iy, it));
            }
            if iy + 1 < grid.ny {
                neighbours.push(grid.index(ix, iy + 1, it));
            }
            neighbours.push(grid.index(ix, iy, (it + 1) % grid.ntheta));
            let a = fs.cell_pose(i);
            for j in neighbours {
                if fs.is_free(j) && neighbour_move_is_free(&certifier, &a, &fs.cell_pose(j)) {
                    out.push((i as u32, j as u32));
                }
            }
            out.into_iter()
        })
        .collect();

    let mut sets = DisjointSet::new(n);
    for (a, b) in links {
        sets.union(a, b);
    }
    let mut root_label = vec![u32::MAX; n];
    let mut labels = vec![None; n];
    let mut sizes = Vec::new();
    for (i, label) in labels.iter_mut().enumerate() {
        if !fs.is_free(i) {
            continue;
        }
        let r = sets.find(i as u32) as usize;
        if root_label[r] == u32::MAX {
            root_label[r] = sizes.len() as u32;
            sizes.push(0);
        }
        *label = Some(root_label[r]);
        sizes[root_label[r] as usize] += 1;
    }
    ComponentLabeling { labels, sizes }
}

/// Labels the free cells by `K^c`-congruence class at grid resolution.
pub fn connected_components(fs: &FreeSpace, scene: &Scene) -> ComponentLabeling {
    label_components(&CollisionKernel::new(scene), fs)
}

impl Planner {
    pub fn components(&self) -> ComponentLabeling {
        label_components(self.kernel(), self.free_space())
    }
}
