use serde::Serialize;

use super::{Planner, PlannerError, PoseGrid};
use crate::geometry::Scene;
use crate::lie::Pose2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CagingVerdict {
    /// One congruence class, and every sampled pair is joined by fewer than
    /// `ell0` simple moves.
    CongruentSet,
    /// The free grid splits into several congruence classes.
    CompleteCagingSet { component_count: usize },
    /// One congruence class, but some sampled pair needs at least `ell0`
    /// simple moves.
    DissociatedAt { ell0: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CagingClassification {
    pub verdict: CagingVerdict,
    pub component_count: usize,
    /// Cells per component.
    pub component_sizes: Vec<usize>,
    /// Number of placements paired up when testing dissociation.
    pub landmark_count: usize,
    /// A pair needing at least `ell0` moves, when dissociated.
    pub witness: Option<(Pose2, Pose2)>,
    pub grid: PoseGrid,
    pub resolution_note: String,
}

/// Directions whose extreme free cells serve as landmarks.
const LANDMARK_DIRECTIONS: [(f64, f64); 8] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
    (1.0, 1.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (-1.0, 1.0),
];

impl Planner {
    /// For each component, the free cells maximizing `d · (x, y)` over the
    /// eight compass directions `d`, first in lexicographic order on ties.
    /// Returned as cell indices without duplicates, in first-found order.
    pub fn landmark_cells(&self, labels: &super::ComponentLabeling) -> Vec<usize> {
        let grid = self.grid();
        let mut best: Vec<[Option<(f64, usize)>; 8]> = vec![[None; 8]; labels.count()];
        for &cell in self.free_cells() {
            let Some(label) = labels.label(cell) else { continue };
            let (x, y, _) = grid.cell_center(cell);
            for (slot, (dx, dy)) in best[label as usize].iter_mut().zip(LANDMARK_DIRECTIONS) {
                let score = dx * x + dy * y;
                if slot.is_none_or(|(s, _)| score > s) {
                    *slot = Some((score, cell));
                }
            }
        }
        let mut out = Vec::new();
        for cell in best.iter().flatten().flatten().map(|&(_, c)| c) {
            if !out.contains(&cell) {
                out.push(cell);
            }
        }
        out
    }

    /// Classifies the scene at this grid's resolution.
    ///
    /// `extra` placements (for instance named poses from a scene file) join
    /// the landmark set when they are collision-free.
    pub fn classify(&self, ell0: usize, extra: &[Pose2]) -> Result<CagingClassification, PlannerError> {
        if ell0 == 0 {
            return Err(PlannerError::InvalidEll0);
        }
        let labels = self.components();
        let grid = *self.grid();
        let mut out = CagingClassification {
            verdict: CagingVerdict::CongruentSet,
            component_count: labels.count(),
            component_sizes: labels.sizes.clone(),
            landmark_count: 0,
            witness: None,
            grid,
            resolution_note: grid.resolution_note(),
        };
        if labels.count() >= 2 {
            out.verdict = CagingVerdict::CompleteCagingSet {
                component_count: labels.count(),
            };
            return Ok(out);
        }
        let mut landmarks: Vec<Pose2> = self
            .landmark_cells(&labels)
            .into_iter()
            .map(|c| self.free_space().cell_pose(c))
            .collect();
        landmarks.extend(extra.iter().filter(|p| self.is_free(p)).copied());
        out.landmark_count = landmarks.len();
        for (i, a) in landmarks.iter().enumerate() {
            for b in &landmarks[i + 1..] {
                if !self.reachable_within(a, b, ell0 - 1) {
                    out.verdict = CagingVerdict::DissociatedAt { ell0 };
                    out.witness = Some((*a, *b));
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }
}

pub fn classify_caging(scene: &Scene, grid: &PoseGrid, ell0: usize) -> Result<CagingClassification, PlannerError> {
    Planner::new(scene, grid)?.classify(ell0, &[])
}
