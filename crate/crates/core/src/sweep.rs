//! Certification that a whole orbit `t ↦ exp(t𝔤)·start`, `t ∈ [0, 1]`,
//! keeps the object disjoint from the caging set.
//!
//! The parameter interval is bisected; an interval of half-width `h` around
//! `t_m` is certified once `clearance(t_m) > L·h`, where `L` bounds the speed
//! of every object point. `Free` is only ever returned when every interval
//! was certified this way.

use std::collections::VecDeque;

use serde::Serialize;

use crate::geometry::{CollisionKernel, ObjectShape, Scene};
use crate::lie::{Pose2, Twist2};

/// Bisection depth cap; intervals narrower than `2^-MAX_DEPTH` are never split.
pub const MAX_DEPTH: u32 = 32;

/// Cap on clearance evaluations per certification.
pub const MAX_EVALUATIONS: usize = 1 << 20;

/// Samples used by the dense-sampling checker.
pub const DENSE_SAMPLES: usize = 4096;

/// One simple euclidean move: `t ↦ exp(t𝔤) ∘ start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleMove {
    pub twist: Twist2,
    pub start: Pose2,
}

impl SimpleMove {
    pub fn new(twist: Twist2, start: Pose2) -> Self {
        Self { twist, start }
    }

    pub fn pose_at(&self, t: f64) -> Pose2 {
        self.twist.exp(t).compose(&self.start)
    }

    pub fn end(&self) -> Pose2 {
        self.pose_at(1.0)
    }
}

/// A finite chain of simple moves, each traversed over its own unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseMove {
    pub start: Pose2,
    pub segments: Vec<Twist2>,
}

impl PiecewiseMove {
    /// `None` when `segments` is empty.
    pub fn new(start: Pose2, segments: Vec<Twist2>) -> Option<Self> {
        (!segments.is_empty()).then_some(Self { start, segments })
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// `[start, end of segment 1, …, end of segment ℓ]`.
    pub fn endpoints(&self) -> Vec<Pose2> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        out.push(self.start);
        for g in &self.segments {
            let prev = *out.last().unwrap();
            out.push(g.exp(1.0).compose(&prev));
        }
        out
    }

    pub fn simple_moves(&self) -> Vec<SimpleMove> {
        let ends = self.endpoints();
        self.segments
            .iter()
            .zip(ends)
            .map(|(g, s)| SimpleMove::new(*g, s))
            .collect()
    }

    pub fn end(&self) -> Pose2 {
        *self.endpoints().last().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    DepthExhausted,
    EvaluationBudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SweepVerdict {
    Free,
    Colliding { t_hit: f64 },
    Unknown { reason: UnknownReason },
}

impl SweepVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, SweepVerdict::Free)
    }
}

/// Speed bound `L`: no object point moves farther than `L·Δt` over a
/// parameter span `Δt`.
pub fn velocity_bound(m: &SimpleMove, shape: &ObjectShape) -> f64 {
    let screw = m.twist.screw();
    if screw.is_pure_translation {
        return m.twist.xi().norm();
    }
    // Planar motions with θ ≠ 0 are rotations about −ξ₀, which preserve the
    // distance of every point to that center.
    let center = screw.rotation_center();
    let radius = shape
        .vertices()
        .iter()
        .map(|v| (m.start.apply(v) - center).norm())
        .fold(0.0, f64::max);
    m.twist.theta().abs() * radius
}

pub fn certify_simple_move(scene: &Scene, m: &SimpleMove) -> SweepVerdict {
    Certifier::new(&CollisionKernel::new(scene)).certify(m)
}

pub fn certify_piecewise(scene: &Scene, m: &PiecewiseMove) -> SweepVerdict {
    Certifier::new(&CollisionKernel::new(scene)).certify_piecewise(m)
}

/// Bisection certifier over a prepared collision kernel.
#[derive(Debug, Clone, Copy)]
pub struct Certifier<'a> {
    kernel: &'a CollisionKernel,
    max_depth: u32,
    max_evaluations: usize,
}

struct Run<'m> {
    m: &'m SimpleMove,
    speed: f64,
    evaluations: usize,
}

impl<'a> Certifier<'a> {
    pub fn new(kernel: &'a CollisionKernel) -> Self {
        Self {
            kernel,
            max_depth: MAX_DEPTH,
            max_evaluations: MAX_EVALUATIONS,
        }
    }

    pub fn kernel(&self) -> &CollisionKernel {
        self.kernel
    }

    fn start_run<'m>(&self, m: &'m SimpleMove) -> Run<'m> {
        Run {
            m,
            speed: velocity_bound(m, self.kernel.object()),
            evaluations: 0,
        }
    }

    /// Full certification. A `Colliding` verdict reports the earliest
    /// collision parameter found, refined down to the depth cap.
    pub fn certify(&self, m: &SimpleMove) -> SweepVerdict {
        let mut run = self.start_run(m);
        self.refine(&mut run, 0.0, 1.0, 0)
    }

    fn refine(&self, run: &mut Run, lo: f64, hi: f64, depth: u32) -> SweepVerdict {
        if run.evaluations >= self.max_evaluations {
            return SweepVerdict::Unknown {
                reason: UnknownReason::EvaluationBudgetExhausted,
            };
        }
        run.evaluations += 1;
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let clearance = self.kernel.clearance_at(&run.m.pose_at(mid));
        if clearance == 0.0 {
            if depth >= self.max_depth {
                return SweepVerdict::Colliding { t_hit: mid };
            }
            return match self.refine(run, lo, mid, depth + 1) {
                hit @ SweepVerdict::Colliding { .. } => hit,
                _ => SweepVerdict::Colliding { t_hit: mid },
            };
        }
        if clearance > run.speed * half {
            return SweepVerdict::Free;
        }
        if depth >= self.max_depth {
            return SweepVerdict::Unknown {
                reason: UnknownReason::DepthExhausted,
            };
        }
        let left = self.refine(run, lo, mid, depth + 1);
        if let SweepVerdict::Colliding { .. } = left {
            return left;
        }
        let right = self.refine(run, mid, hi, depth + 1);
        match (left, right) {
            (_, SweepVerdict::Colliding { .. }) => right,
            (SweepVerdict::Unknown { .. }, _) => left,
            _ => right,
        }
    }

    /// Same decision as [`Certifier::certify`] on whether the move is free,
    /// but intervals are visited coarse-to-fine and the search stops at the
    /// first collision found, whose parameter is not refined.
    pub fn certify_fast(&self, m: &SimpleMove) -> SweepVerdict {
        let mut run = self.start_run(m);
        let mut queue = VecDeque::from([(0.0f64, 1.0f64, 0u32)]);
        let mut unknown = None;
        while let Some((lo, hi, depth)) = queue.pop_front() {
            if run.evaluations >= self.max_evaluations {
                return SweepVerdict::Unknown {
                    reason: UnknownReason::EvaluationBudgetExhausted,
                };
            }
            run.evaluations += 1;
            let mid = 0.5 * (lo + hi);
            let clearance = self.kernel.clearance_at(&m.pose_at(mid));
            if clearance == 0.0 {
                return SweepVerdict::Colliding { t_hit: mid };
            }
            if clearance > run.speed * 0.5 * (hi - lo) {
                continue;
            }
            if depth >= self.max_depth {
                unknown.get_or_insert(UnknownReason::DepthExhausted);
                continue;
            }
            queue.push_back((lo, mid, depth + 1));
            queue.push_back((mid, hi, depth + 1));
        }
        match unknown {
            Some(reason) => SweepVerdict::Unknown { reason },
            None => SweepVerdict::Free,
        }
    }

    /// Certifies each segment from the composed end pose of the previous
    /// ones; the first non-free verdict is returned with its parameter
    /// rescaled to the whole move.
    pub fn certify_piecewise(&self, m: &PiecewiseMove) -> SweepVerdict {
        let n = m.segments.len() as f64;
        for (j, seg) in m.simple_moves().iter().enumerate() {
            match self.certify(seg) {
                SweepVerdict::Free => {}
                SweepVerdict::Colliding { t_hit } => {
                    return SweepVerdict::Colliding {
                        t_hit: (j as f64 + t_hit) / n,
                    }
                }
                unknown => return unknown,
            }
        }
        SweepVerdict::Free
    }
}

/// `i`-th of `n` uniform parameters visited in bit-reversed order, so that
/// coarse samples come first. `n` must be a power of two.
fn bit_reversed_sample(i: usize, n: usize) -> f64 {
    let bits = n.trailing_zeros();
    let j = i.reverse_bits() >> (usize::BITS - bits);
    j as f64 / (n - 1) as f64
}

/// Dense-sampling collision check at `samples` uniform parameters in `[0, 1]`
/// (a power of two). Returns a colliding parameter if one is found.
pub fn sample_collision(kernel: &CollisionKernel, m: &SimpleMove, samples: usize) -> Option<f64> {
    assert!(samples.is_power_of_two() && samples >= 2);
    (0..samples)
        .map(|i| bit_reversed_sample(i, samples))
        .find(|&t| kernel.intersects_at(&m.pose_at(t)))
}
