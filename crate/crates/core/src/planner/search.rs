use rayon::prelude::*;

use super::{EdgeWitness, Planner, PlannerError, PoseGrid};
use crate::geometry::Scene;
use crate::lie::Pose2;
use crate::sweep::{PiecewiseMove, SweepVerdict};

/// Result of a minimal-move query.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeReport {
    /// Least number of simple moves found; `None` when unreachable at this
    /// resolution.
    pub ell: Option<usize>,
    /// The witness chain; `None` when unreachable or when `ell == 0`.
    pub moves: Option<PiecewiseMove>,
    /// Placements visited, starting with `from_pose`.
    pub waypoints: Vec<Pose2>,
    /// Log branch used by each move.
    pub branches: Vec<i32>,
    pub from_pose: Pose2,
    /// The requested target, or the exterior cell reached.
    pub to_pose: Option<Pose2>,
    /// Certification of the whole witness chain.
    pub certificate: Option<SweepVerdict>,
    pub grid: PoseGrid,
    pub resolution_note: String,
}

impl EscapeReport {
    pub fn is_reachable(&self) -> bool {
        self.ell.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    Source,
    Target,
    Slot(u32),
}

pub(crate) enum Goal<'a> {
    Pose(Pose2),
    /// Free-cell slots flagged as acceptable targets.
    Slots(&'a [bool]),
}

pub(crate) enum Outcome {
    Found {
        /// Path nodes after the source, each with the edge that reached it.
        path: Vec<(Node, EdgeWitness)>,
    },
    /// Every reachable node was expanded without meeting the goal.
    Exhausted,
    /// The level cap was hit first.
    Capped,
}

impl Planner {
    fn node_pose<'a>(&'a self, node: Node, source: &'a Pose2, target: Option<&'a Pose2>) -> &'a Pose2 {
        match node {
            Node::Source => source,
            Node::Target => target.expect("target node without a target pose"),
            Node::Slot(s) => self.slot_pose(s as usize),
        }
    }

    /// Level-synchronous breadth-first search from `source`.
    ///
    /// Each level first looks for the goal among the nodes adjacent to the
    /// frontier, then expands the frontier to every unvisited non-goal cell.
    /// Frontiers stay in lexicographic cell order and each new node keeps the
    /// first frontier node (in that order) with a certified edge to it, so
    /// results do not depend on thread scheduling.
    pub(crate) fn search(&self, source: &Pose2, goal: Goal, max_levels: usize) -> Outcome {
        let n = self.free_cells().len();
        let target_pose = match goal {
            Goal::Pose(p) => Some(p),
            Goal::Slots(_) => None,
        };
        let is_goal_slot = |s: usize| match goal {
            Goal::Slots(flags) => flags[s],
            Goal::Pose(_) => false,
        };
        let mut parent: Vec<Option<(Node, EdgeWitness)>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut frontier = vec![Node::Source];

        let edge_from_frontier = |frontier: &[Node], to: &Pose2| {
            frontier.iter().find_map(|&u| {
                self.edge(self.node_pose(u, source, target_pose.as_ref()), to)
                    .map(|w| (u, w))
            })
        };

        for _level in 0..max_levels {
            let hit = match goal {
                Goal::Pose(ref to) => frontier.par_iter().find_map_first(|&u| {
                    self.edge(self.node_pose(u, source, None), to)
                        .map(|w| (Node::Target, u, w))
                }),
                Goal::Slots(flags) => {
                    let open: Vec<usize> = (0..n).filter(|&s| flags[s] && !visited[s]).collect();
                    open.par_iter().find_map_first(|&s| {
                        edge_from_frontier(&frontier, self.slot_pose(s)).map(|(u, w)| (Node::Slot(s as u32), u, w))
                    })
                }
            };
            if let Some((end, via, w)) = hit {
                let mut path = vec![(end, w)];
                let mut cur = via;
                while let Node::Slot(s) = cur {
                    let (p, w) = parent[s as usize].expect("visited slot without parent");
                    path.push((cur, w));
                    cur = p;
                }
                path.reverse();
                return Outcome::Found { path };
            }

            let open: Vec<usize> = (0..n).filter(|&s| !visited[s] && !is_goal_slot(s)).collect();
            let reached: Vec<(usize, Node, EdgeWitness)> = open
                .par_iter()
                .filter_map(|&s| edge_from_frontier(&frontier, self.slot_pose(s)).map(|(u, w)| (s, u, w)))
                .collect();
            if reached.is_empty() {
                return Outcome::Exhausted;
            }
            frontier.clear();
            for (s, u, w) in reached {
                visited[s] = true;
                parent[s] = Some((u, w));
                frontier.push(Node::Slot(s as u32));
            }
        }
        Outcome::Capped
    }

    pub(crate) fn build_report(
        &self,
        from: &Pose2,
        to: Option<&Pose2>,
        path: Option<Vec<(Node, EdgeWitness)>>,
    ) -> EscapeReport {
        let grid = *self.grid();
        let mut report = EscapeReport {
            ell: None,
            moves: None,
            waypoints: vec![*from],
            branches: Vec::new(),
            from_pose: *from,
            to_pose: to.copied(),
            certificate: None,
            grid,
            resolution_note: grid.resolution_note(),
        };
        let Some(path) = path else {
            return report;
        };
        report.ell = Some(path.len());
        for (node, w) in &path {
            report.waypoints.push(*self.node_pose(*node, from, to));
            report.branches.push(w.branch);
        }
        if let Some(&(last, _)) = path.last() {
            if report.to_pose.is_none() {
                report.to_pose = Some(*self.node_pose(last, from, to));
            }
        }
        report.moves = PiecewiseMove::new(*from, path.iter().map(|(_, w)| w.twist).collect());
        report.certificate = report.moves.as_ref().map(|m| self.certifier().certify_piecewise(m));
        report
    }

    /// Least number of simple moves from `from` to `to`.
    pub fn min_simple_moves(&self, from: &Pose2, to: &Pose2) -> Result<EscapeReport, PlannerError> {
        self.require_free(from)?;
        self.require_free(to)?;
        if from.max_abs_diff(to) <= crate::geometry::DISTANCE_TOLERANCE {
            return Ok(self.build_report(from, Some(to), Some(Vec::new())));
        }
        let path = match self.search(from, Goal::Pose(*to), usize::MAX) {
            Outcome::Found { path } => Some(path),
            _ => None,
        };
        Ok(self.build_report(from, Some(to), path))
    }

    /// Whether `to` is reachable from `from` within `max_moves` simple moves.
    pub fn reachable_within(&self, from: &Pose2, to: &Pose2, max_moves: usize) -> bool {
        if from.max_abs_diff(to) <= crate::geometry::DISTANCE_TOLERANCE {
            return true;
        }
        matches!(self.search(from, Goal::Pose(*to), max_moves), Outcome::Found { .. })
    }

    /// Free cells whose placed object lies entirely outside the cage's
    /// bounding circle grown by one object diameter. With no cage, every
    /// free cell qualifies.
    pub fn exterior_slots(&self) -> Vec<bool> {
        let n = self.free_cells().len();
        let Some((center, radius)) = self.scene().cage_bounding_circle() else {
            return vec![true; n];
        };
        let limit = radius + self.scene().object.diameter();
        (0..n)
            .into_par_iter()
            .map(|s| {
                let posed = self.scene().object.transform(self.slot_pose(s));
                posed.distance_to_point(&center) > limit
            })
            .collect()
    }

    /// Least number of simple moves from `from` to any exterior cell.
    pub fn escape_to_exterior(&self, from: &Pose2) -> Result<EscapeReport, PlannerError> {
        self.require_free(from)?;
        let targets = self.exterior_slots();
        if !targets.iter().any(|&t| t) {
            return Err(PlannerError::NoExterior);
        }
        let path = match self.search(from, Goal::Slots(&targets), usize::MAX) {
            Outcome::Found { path } => Some(path),
            _ => None,
        };
        Ok(self.build_report(from, None, path))
    }
}

pub fn min_simple_moves(
    scene: &Scene,
    from: &Pose2,
    to: &Pose2,
    grid: &PoseGrid,
) -> Result<EscapeReport, PlannerError> {
    Planner::new(scene, grid)?.min_simple_moves(from, to)
}

pub fn escape_to_exterior(scene: &Scene, from: &Pose2, grid: &PoseGrid) -> Result<EscapeReport, PlannerError> {
    Planner::new(scene, grid)?.escape_to_exterior(from)
}
