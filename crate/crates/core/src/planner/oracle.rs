use std::collections::VecDeque;

use rayon::prelude::*;

use super::search::{EscapeReport, Node};
use super::{branch_order, EdgeWitness, Planner, PlannerError, PoseGrid};
use crate::geometry::{CollisionKernel, Scene, DISTANCE_TOLERANCE};
use crate::lie::Pose2;
use crate::sweep::{sample_collision, SimpleMove, DENSE_SAMPLES};

fn sampled_edge(kernel: &CollisionKernel, a: &Pose2, b: &Pose2, k_max: u32) -> Option<EdgeWitness> {
    let relative = b.compose(&a.inverse());
    branch_order(k_max).find_map(|branch| {
        let twist = relative.log(branch).ok()?;
        sample_collision(kernel, &SimpleMove::new(twist, *a), DENSE_SAMPLES)
            .is_none()
            .then_some(EdgeWitness { twist, branch })
    })
}

/// Reference answer for [`min_simple_moves`](super::min_simple_moves).
///
/// Plain first-in first-out breadth-first search over the same nodes, where
/// an edge exists when none of 4096 evenly spaced samples of some branch's
/// orbit collides. Every popped node is tested against the target and then
/// against every unvisited cell. Slow by design; meant for tests and
/// cross-checks on coarse grids.
pub fn brute_force_min_moves(
    scene: &Scene,
    from: &Pose2,
    to: &Pose2,
    grid: &PoseGrid,
) -> Result<EscapeReport, PlannerError> {
    let planner = Planner::new(scene, grid)?;
    planner.require_free(from)?;
    planner.require_free(to)?;
    if from.max_abs_diff(to) <= DISTANCE_TOLERANCE {
        return Ok(planner.build_report(from, Some(to), Some(Vec::new())));
    }
    let kernel = planner.kernel();
    let k_max = grid.k_max;
    let n = planner.free_cells().len();
    let pose_of = |node: Node| match node {
        Node::Source => from,
        Node::Target => to,
        Node::Slot(s) => planner.slot_pose(s as usize),
    };

    let mut parent: Vec<Option<(Node, EdgeWitness)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = VecDeque::from([Node::Source]);
    while let Some(u) = queue.pop_front() {
        let here = pose_of(u);
        if let Some(w) = sampled_edge(kernel, here, to, k_max) {
            let mut path = vec![(Node::Target, w)];
            let mut cur = u;
            while let Node::Slot(s) = cur {
                let (p, w) = parent[s as usize].expect("queued slot without parent");
                path.push((cur, w));
                cur = p;
            }
            path.reverse();
            return Ok(planner.build_report(from, Some(to), Some(path)));
        }
        let open: Vec<usize> = (0..n).filter(|&s| !visited[s]).collect();
        let found: Vec<(usize, EdgeWitness)> = open
            .par_iter()
            .filter_map(|&s| sampled_edge(kernel, here, planner.slot_pose(s), k_max).map(|w| (s, w)))
            .collect();
        for (s, w) in found {
            visited[s] = true;
            parent[s] = Some((u, w));
            queue.push_back(Node::Slot(s as u32));
        }
    }
    Ok(planner.build_report(from, Some(to), None))
}
