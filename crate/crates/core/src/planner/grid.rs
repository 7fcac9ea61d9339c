use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PlannerError;
use crate::geometry::{CollisionKernel, Scene, Vec2};
use crate::lie::Pose2;

/// Cell counts used when nothing else is requested (5° angular bins).
pub const DEFAULT_RESOLUTION: (usize, usize, usize) = (64, 64, 72);

/// Default cap on `|k|` for log branches tried per candidate edge.
pub const DEFAULT_K_MAX: u32 = 2;

/// A regular grid over placements `(x, y, θ)` of the object's centroid.
///
/// Cell `(ix, iy, iθ)` stands for the placement whose centroid sits at the
/// cell center and whose rotation is `iθ · 2π / ntheta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoseGrid {
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    pub ntheta: usize,
    pub k_max: u32,
}

impl PoseGrid {
    /// A square grid centered on the caging set, wide enough that the object
    /// can sit one diameter outside the cage's bounding circle.
    pub fn around_scene(scene: &Scene, nx: usize, ny: usize, ntheta: usize, k_max: u32) -> Self {
        let diameter = scene.object.diameter();
        let (center, half) = match scene.cage_bounding_circle() {
            Some((c, r)) => (c, r + 2.0 * diameter),
            None => (Vec2::zeros(), 2.0 * diameter),
        };
        Self {
            x_range: [center.x - half, center.x + half],
            y_range: [center.y - half, center.y + half],
            nx,
            ny,
            ntheta,
            k_max,
        }
    }

    pub fn with_resolution(&self, nx: usize, ny: usize, ntheta: usize) -> Self {
        Self {
            nx,
            ny,
            ntheta,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<(), PlannerError> {
        let bad = |m: &str| Err(PlannerError::InvalidGrid(m.to_string()));
        if self.nx < 2 || self.ny < 2 {
            return bad("nx and ny must be at least 2");
        }
        if self.ntheta < 4 {
            return bad("ntheta must be at least 4");
        }
        let ranges = [self.x_range, self.y_range];
        if ranges.iter().flatten().any(|v| !v.is_finite()) {
            return bad("grid ranges must be finite");
        }
        if ranges.iter().any(|r| r[0] >= r[1]) {
            return bad("grid ranges must be increasing");
        }
        if self.cell_count() > u32::MAX as usize {
            return bad("grid has too many cells");
        }
        Ok(())
    }

    /// Validity plus coverage of the cage bounds inflated by the object
    /// diameter.
    pub fn validate_for(&self, scene: &Scene) -> Result<(), PlannerError> {
        self.validate()?;
        if let Some((lo, hi)) = scene.cage_bounds() {
            let d = scene.object.diameter();
            let covers = self.x_range[0] <= lo.x - d
                && self.x_range[1] >= hi.x + d
                && self.y_range[0] <= lo.y - d
                && self.y_range[1] >= hi.y + d;
            if !covers {
                return Err(PlannerError::GridDoesNotCoverCage);
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny * self.ntheta
    }

    /// Lexicographic `(ix, iy, iθ)` index.
    pub fn index(&self, ix: usize, iy: usize, it: usize) -> usize {
        (ix * self.ny + iy) * self.ntheta + it
    }

    pub fn coords(&self, index: usize) -> (usize, usize, usize) {
        let it = index % self.ntheta;
        let rest = index / self.ntheta;
        (rest / self.ny, rest % self.ny, it)
    }

    pub fn dx(&self) -> f64 {
        (self.x_range[1] - self.x_range[0]) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_range[1] - self.y_range[0]) / self.ny as f64
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.ntheta as f64
    }

    /// `(x, y, θ)` of the cell center.
    pub fn cell_center(&self, index: usize) -> (f64, f64, f64) {
        let (ix, iy, it) = self.coords(index);
        (
            self.x_range[0] + (ix as f64 + 0.5) * self.dx(),
            self.y_range[0] + (iy as f64 + 0.5) * self.dy(),
            it as f64 * self.dtheta(),
        )
    }

    /// Pose that puts the object's `centroid` at the cell center.
    pub fn cell_pose(&self, index: usize, centroid: &Vec2) -> Pose2 {
        let (x, y, theta) = self.cell_center(index);
        let rot = Pose2::from_xy_angle(0.0, 0.0, theta);
        let c = rot.apply(centroid);
        Pose2::from_xy_angle(x - c.x, y - c.y, theta)
    }

    /// Human-readable statement of what a result at this resolution means.
    pub fn resolution_note(&self) -> String {
        format!(
            "grid {}x{}x{} over x [{}, {}], y [{}, {}], log branches |k| <= {}: \
             move counts are certified upper bounds; unreachability and lower bounds \
             hold only at this resolution",
            self.nx,
            self.ny,
            self.ntheta,
            self.x_range[0],
            self.x_range[1],
            self.y_range[0],
            self.y_range[1],
            self.k_max
        )
    }
}

/// The placements of the grid whose cell-center pose misses the caging set.
#[derive(Debug, Clone)]
pub struct FreeSpace {
    grid: PoseGrid,
    centroid: Vec2,
    words: Vec<u64>,
}

impl FreeSpace {
    pub fn grid(&self) -> &PoseGrid {
        &self.grid
    }

    pub fn is_free(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn free_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Free cell indices in lexicographic order.
    pub fn free_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.grid.cell_count()).filter(|&i| self.is_free(i))
    }

    pub fn cell_pose(&self, index: usize) -> Pose2 {
        self.grid.cell_pose(index, &self.centroid)
    }

    pub fn object_centroid(&self) -> Vec2 {
        self.centroid
    }
}

/// Exhaustive cell-center collision test over the grid.
pub fn build_free_space(scene: &Scene, grid: &PoseGrid) -> Result<FreeSpace, PlannerError> {
    grid.validate_for(scene)?;
    let kernel = CollisionKernel::new(scene);
    Ok(build_with_kernel(&kernel, grid))
}

pub(crate) fn build_with_kernel(kernel: &CollisionKernel, grid: &PoseGrid) -> FreeSpace {
    let centroid = kernel.centroid();
    let n = grid.cell_count();
    let words: Vec<u64> = (0..n.div_ceil(64))
        .into_par_iter()
        .map(|w| {
            let mut bits = 0u64;
            for b in 0..64 {
                let i = w * 64 + b;
                if i < n && !kernel.intersects_at(&grid.cell_pose(i, &centroid)) {
                    bits |= 1 << b;
                }
            }
            bits
        })
        .collect();
    FreeSpace {
        grid: *grid,
        centroid,
        words,
    }
}
