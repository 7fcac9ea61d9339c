//! Congruence classes and minimal simple-move counts on a pose grid.
//!
//! Nodes are the free cell-center placements of a [`PoseGrid`] plus the query
//! placements. A directed edge `a → b` exists when, for some log branch
//! `|k| ≤ k_max` tried in the order `0, 1, −1, 2, −2, …`, the simple move
//! `exp(t · log_k(b ∘ a⁻¹)) ∘ a` certifies collision-free. Breadth-first
//! search over that graph gives the least number `ℓ` of simple moves. Found
//! paths are certified end to end, so `ℓ` is an upper bound for the
//! continuum; "unreachable" and `ℓ` lower bounds only hold at the grid's
//! resolution.

mod classify;
mod components;
mod grid;
mod oracle;
mod search;

pub use classify::{classify_caging, CagingClassification, CagingVerdict};
pub use components::{connected_components, ComponentLabeling};
pub use grid::{build_free_space, FreeSpace, PoseGrid, DEFAULT_K_MAX, DEFAULT_RESOLUTION};
pub use oracle::brute_force_min_moves;
pub use search::{escape_to_exterior, min_simple_moves, EscapeReport};

use thiserror::Error;

use crate::geometry::{CollisionKernel, Scene};
use crate::lie::{Pose2, Twist2};
use crate::sweep::{Certifier, SimpleMove};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlannerError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid does not cover cage")]
    GridDoesNotCoverCage,
    #[error("query pose not in K^c")]
    QueryPoseColliding,
    #[error("grid has no exterior")]
    NoExterior,
    #[error("ell0 must be at least 1")]
    InvalidEll0,
}

/// The generator and log branch of a certified simple move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeWitness {
    pub twist: Twist2,
    pub branch: i32,
}

/// Log branches `0, 1, −1, 2, −2, …, k_max, −k_max`.
pub fn branch_order(k_max: u32) -> impl Iterator<Item = i32> {
    std::iter::once(0).chain((1..=k_max as i32).flat_map(|k| [k, -k]))
}

/// Whether a single simple move carries `a` to `b` without touching the
/// caging set; returns the first certified generator in branch order.
pub fn edge_exists(scene: &Scene, a: &Pose2, b: &Pose2, k_max: u32) -> Option<EdgeWitness> {
    let kernel = CollisionKernel::new(scene);
    find_edge(&Certifier::new(&kernel), a, b, k_max)
}

pub(crate) fn find_edge(certifier: &Certifier, a: &Pose2, b: &Pose2, k_max: u32) -> Option<EdgeWitness> {
    let relative = b.compose(&a.inverse());
    branch_order(k_max).find_map(|branch| {
        let twist = relative.log(branch).ok()?;
        certifier
            .certify_fast(&SimpleMove::new(twist, *a))
            .is_free()
            .then_some(EdgeWitness { twist, branch })
    })
}

/// A scene prepared for repeated queries on one grid.
#[derive(Debug, Clone)]
pub struct Planner {
    scene: Scene,
    kernel: CollisionKernel,
    space: FreeSpace,
    /// Free cell indices, lexicographic.
    cells: Vec<usize>,
    /// Cell-center pose of each entry of `cells`.
    poses: Vec<Pose2>,
}

impl Planner {
    pub fn new(scene: &Scene, grid: &PoseGrid) -> Result<Self, PlannerError> {
        grid.validate_for(scene)?;
        let kernel = CollisionKernel::new(scene);
        let space = grid::build_with_kernel(&kernel, grid);
        let cells: Vec<usize> = space.free_cells().collect();
        let poses = cells.iter().map(|&i| space.cell_pose(i)).collect();
        Ok(Self {
            scene: scene.clone(),
            kernel,
            space,
            cells,
            poses,
        })
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    pub fn grid(&self) -> &PoseGrid {
        self.space.grid()
    }

    pub fn free_space(&self) -> &FreeSpace {
        &self.space
    }

    pub fn kernel(&self) -> &CollisionKernel {
        &self.kernel
    }

    pub(crate) fn certifier(&self) -> Certifier<'_> {
        Certifier::new(&self.kernel)
    }

    /// Free cell indices in lexicographic order.
    pub fn free_cells(&self) -> &[usize] {
        &self.cells
    }

    pub(crate) fn slot_pose(&self, slot: usize) -> &Pose2 {
        &self.poses[slot]
    }

    pub fn edge(&self, a: &Pose2, b: &Pose2) -> Option<EdgeWitness> {
        find_edge(&self.certifier(), a, b, self.grid().k_max)
    }

    pub fn is_free(&self, pose: &Pose2) -> bool {
        !self.kernel.intersects_at(pose)
    }

    pub(crate) fn require_free(&self, pose: &Pose2) -> Result<(), PlannerError> {
        if self.is_free(pose) {
            Ok(())
        } else {
            Err(PlannerError::QueryPoseColliding)
        }
    }
}
