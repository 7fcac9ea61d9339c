//! Planar objects, obstacles, and the collision/clearance predicates between
//! a posed object and the caging set.
//!
//! All sets are closed: an obstacle touching the object boundary collides.
//! Distance comparisons carry an absolute tolerance of [`DISTANCE_TOLERANCE`].

use nalgebra::Vector2;
use thiserror::Error;

use crate::lie::Pose2;

pub type Vec2 = Vector2<f64>;

pub const DISTANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("object polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("object polygon has a non-finite coordinate")]
    NonFinite,
    #[error("object polygon is not simple (edge {0} × edge {1})")]
    NotSimple(usize, usize),
    #[error("object polygon must be counter-clockwise with positive area")]
    NotCounterClockwise,
    #[error("obstacle {index}: {reason}")]
    BadObstacle { index: usize, reason: String },
    #[error("obstacle component ids must cover 0..{expected} contiguously; missing {missing}")]
    ComponentGap { expected: usize, missing: usize },
}

/// A simple counter-clockwise polygon: the rigid object `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectShape {
    vertices: Vec<Vec2>,
}

impl ObjectShape {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if !vertices.iter().all(|v| v.x.is_finite() && v.y.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let shape = Self { vertices };
        if let Some((i, j)) = shape.first_self_intersection() {
            return Err(GeometryError::NotSimple(i, j));
        }
        if shape.signed_area() <= 0.0 {
            return Err(GeometryError::NotCounterClockwise);
        }
        Ok(shape)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Edges as `(start, end)` pairs; edge `i` runs from vertex `i` to `i+1`.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| cross(a, b)).sum::<f64>()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Vec2 {
        let mut acc = Vec2::zeros();
        let mut twice_area = 0.0;
        for (a, b) in self.edges() {
            let c = cross(a, b);
            twice_area += c;
            acc += (a + b) * c;
        }
        acc / (3.0 * twice_area)
    }

    /// Largest distance from `about` to any point of the polygon; always
    /// attained at a vertex.
    pub fn bounding_radius(&self, about: &Vec2) -> f64 {
        self.vertices.iter().map(|v| (v - about).norm()).fold(0.0, f64::max)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn transform(&self, pose: &Pose2) -> ObjectShape {
        ObjectShape {
            vertices: self.vertices.iter().map(|v| pose.apply(v)).collect(),
        }
    }

    /// Closed-region containment (crossing-number test; boundary points are
    /// reported through the distance functions).
    pub fn contains(&self, p: &Vec2) -> bool {
        point_in_polygon(&self.vertices, p)
    }

    /// Distance from `p` to the closed polygon region (0 inside).
    pub fn distance_to_point(&self, p: &Vec2) -> f64 {
        region_point_distance(&self.vertices, p)
    }

    /// Distance from segment `a`–`b` to the closed polygon region.
    pub fn distance_to_segment(&self, a: &Vec2, b: &Vec2) -> f64 {
        region_segment_distance(&self.vertices, a, b)
    }

    fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        let edges: Vec<_> = self.edges().collect();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if adjacent {
                    // Neighbouring edges share exactly one vertex; they fail
                    // only if they fold back onto each other.
                    let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    if cross(p - shared, q - shared).abs() <= DISTANCE_TOLERANCE
                        && (p - shared).dot(&(q - shared)) > 0.0
                    {
                        return Some((i, j));
                    }
                } else if segment_segment_distance(&a, &b, &c, &d) <= DISTANCE_TOLERANCE {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObstacleKind {
    Disc { center: Vec2, radius: f64 },
    Capsule { a: Vec2, b: Vec2, radius: f64 },
}

/// One piece of the caging set; pieces sharing `component` form one
/// connected part `K_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub kind: ObstacleKind,
    pub component: usize,
}

impl Obstacle {
    pub fn disc(center: Vec2, radius: f64, component: usize) -> Self {
        Self {
            kind: ObstacleKind::Disc { center, radius },
            component,
        }
    }

    /// A capsule; coincident endpoints degenerate to a disc.
    pub fn capsule(a: Vec2, b: Vec2, radius: f64, component: usize) -> Self {
        if a == b {
            return Self::disc(a, radius, component);
        }
        Self {
            kind: ObstacleKind::Capsule { a, b, radius },
            component,
        }
    }

    pub fn radius(&self) -> f64 {
        match self.kind {
            ObstacleKind::Disc { radius, .. } | ObstacleKind::Capsule { radius, .. } => radius,
        }
    }

    pub fn transform(&self, pose: &Pose2) -> Obstacle {
        let kind = match self.kind {
            ObstacleKind::Disc { center, radius } => ObstacleKind::Disc {
                center: pose.apply(&center),
                radius,
            },
            ObstacleKind::Capsule { a, b, radius } => ObstacleKind::Capsule {
                a: pose.apply(&a),
                b: pose.apply(&b),
                radius,
            },
        };
        Obstacle {
            kind,
            component: self.component,
        }
    }

    /// Distance from the obstacle's core (point or segment) to `point`.
    pub fn core_distance_to_point(&self, p: &Vec2) -> f64 {
        match self.kind {
            ObstacleKind::Disc { center, .. } => (center - p).norm(),
            ObstacleKind::Capsule { a, b, .. } => point_segment_distance(p, &a, &b),
        }
    }

    /// Signed gap between the obstacle and the closed polygon region:
    /// core distance minus radius.
    pub fn gap_to(&self, shape: &ObjectShape) -> f64 {
        self.gap_to_vertices(&shape.vertices)
    }

    fn gap_to_vertices(&self, poly: &[Vec2]) -> f64 {
        match self.kind {
            ObstacleKind::Disc { center, radius } => region_point_distance(poly, &center) - radius,
            ObstacleKind::Capsule { a, b, radius } => region_segment_distance(poly, &a, &b) - radius,
        }
    }

    /// Axis-aligned bounds of the closed obstacle.
    pub fn bounds(&self) -> (Vec2, Vec2) {
        let r = Vec2::new(self.radius(), self.radius());
        match self.kind {
            ObstacleKind::Disc { center, .. } => (center - r, center + r),
            ObstacleKind::Capsule { a, b, .. } => (a.inf(&b) - r, a.sup(&b) + r),
        }
    }

    fn validate(&self, index: usize) -> Result<(), GeometryError> {
        let bad = |reason: &str| GeometryError::BadObstacle {
            index,
            reason: reason.to_string(),
        };
        let r = self.radius();
        if !r.is_finite() {
            return Err(bad("radius is not finite"));
        }
        if r < 0.0 {
            return Err(bad("radius must be >= 0"));
        }
        let finite = match self.kind {
            ObstacleKind::Disc { center, .. } => center.iter().all(|v| v.is_finite()),
            ObstacleKind::Capsule { a, b, .. } => a.iter().chain(b.iter()).all(|v| v.is_finite()),
        };
        if !finite {
            return Err(bad("coordinates must be finite"));
        }
        Ok(())
    }
}

/// The object and the caging set.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub name: String,
    pub object: ObjectShape,
    pub cage: Vec<Obstacle>,
}

impl Scene {
    pub fn new(name: impl Into<String>, object: ObjectShape, cage: Vec<Obstacle>) -> Result<Self, GeometryError> {
        for (i, o) in cage.iter().enumerate() {
            o.validate(i)?;
        }
        let components = cage.iter().map(|o| o.component + 1).max().unwrap_or(0);
        let mut seen = vec![false; components];
        for o in &cage {
            seen[o.component] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(GeometryError::ComponentGap {
                expected: components,
                missing,
            });
        }
        Ok(Self {
            name: name.into(),
            object,
            cage,
        })
    }

    /// Number `p` of connected parts `K_0 … K_{p−1}`.
    pub fn component_count(&self) -> usize {
        self.cage.iter().map(|o| o.component + 1).max().unwrap_or(0)
    }

    /// Axis-aligned bounds of the whole caging set, `None` when empty.
    pub fn cage_bounds(&self) -> Option<(Vec2, Vec2)> {
        self.cage
            .iter()
            .map(Obstacle::bounds)
            .reduce(|(lo, hi), (l, h)| (lo.inf(&l), hi.sup(&h)))
    }

    /// Circle around the bounding-box center enclosing every obstacle.
    pub fn cage_bounding_circle(&self) -> Option<(Vec2, f64)> {
        let (lo, hi) = self.cage_bounds()?;
        let center = (lo + hi) * 0.5;
        let radius = self
            .cage
            .iter()
            .map(|o| {
                let far = match o.kind {
                    ObstacleKind::Disc { center: c, .. } => (c - center).norm(),
                    ObstacleKind::Capsule { a, b, .. } => (a - center).norm().max((b - center).norm()),
                };
                far + o.radius()
            })
            .fold(0.0, f64::max);
        Some((center, radius))
    }
}

pub fn transform_shape(pose: &Pose2, shape: &ObjectShape) -> ObjectShape {
    shape.transform(pose)
}

/// Minimum signed gap over the cage, `+∞` for an empty cage.
fn min_gap(shape: &ObjectShape, cage: &[Obstacle]) -> f64 {
    cage.iter().map(|o| o.gap_to(shape)).fold(f64::INFINITY, f64::min)
}

/// True iff some closed obstacle meets the closed polygon region.
pub fn intersects(shape: &ObjectShape, cage: &[Obstacle]) -> bool {
    min_gap(shape, cage) <= DISTANCE_TOLERANCE
}

/// Distance between the object and the caging set, 0 when they touch.
pub fn clearance(shape: &ObjectShape, cage: &[Obstacle]) -> f64 {
    clamp_gap(min_gap(shape, cage))
}

fn clamp_gap(gap: f64) -> f64 {
    if gap <= DISTANCE_TOLERANCE {
        0.0
    } else {
        gap
    }
}

pub fn bounding_radius(shape: &ObjectShape, about: &Vec2) -> f64 {
    shape.bounding_radius(about)
}

/// Precomputed evaluator for "clearance of the object at pose `p`", the hot
/// path of sweep certification and grid construction.
///
/// Produces exactly the same numbers as `clearance(&shape.transform(p), cage)`;
/// obstacles whose bounding-circle lower bound already exceeds the running
/// minimum are skipped.
#[derive(Debug, Clone)]
pub struct CollisionKernel {
    object: ObjectShape,
    cage: Vec<Obstacle>,
    centroid: Vec2,
    radius: f64,
}

impl CollisionKernel {
    pub fn new(scene: &Scene) -> Self {
        let centroid = scene.object.centroid();
        let radius = scene.object.bounding_radius(&centroid);
        Self {
            object: scene.object.clone(),
            cage: scene.cage.clone(),
            centroid,
            radius,
        }
    }

    pub fn object(&self) -> &ObjectShape {
        &self.object
    }

    pub fn cage(&self) -> &[Obstacle] {
        &self.cage
    }

    pub fn centroid(&self) -> Vec2 {
        self.centroid
    }

    /// Bounding radius of the object about its centroid.
    pub fn object_radius(&self) -> f64 {
        self.radius
    }

    /// Clamped clearance of the object placed at `pose`.
    pub fn clearance_at(&self, pose: &Pose2) -> f64 {
        clamp_gap(self.gap_at(pose, f64::NEG_INFINITY))
    }

    pub fn intersects_at(&self, pose: &Pose2) -> bool {
        self.gap_at(pose, DISTANCE_TOLERANCE) <= DISTANCE_TOLERANCE
    }

    /// Minimum gap at `pose`; stops early once it drops to `stop_below`.
    fn gap_at(&self, pose: &Pose2, stop_below: f64) -> f64 {
        let c = pose.apply(&self.centroid);
        let mut posed: Option<Vec<Vec2>> = None;
        let mut best = f64::INFINITY;
        for o in &self.cage {
            let lower = o.core_distance_to_point(&c) - self.radius - o.radius();
            if lower >= best {
                continue;
            }
            let verts = posed.get_or_insert_with(|| self.object.vertices.iter().map(|v| pose.apply(v)).collect());
            let g = o.gap_to_vertices(verts);
            if g < best {
                best = g;
                if best <= stop_below {
                    break;
                }
            }
        }
        best
    }
}

#[inline]
pub(crate) fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

pub(crate) fn point_segment_distance(p: &Vec2, a: &Vec2, b: &Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn orientation(a: &Vec2, b: &Vec2, c: &Vec2) -> f64 {
    cross(b - a, c - a)
}

fn segments_cross(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> bool {
    let d1 = orientation(c, d, a);
    let d2 = orientation(c, d, b);
    let d3 = orientation(a, b, c);
    let d4 = orientation(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub(crate) fn segment_segment_distance(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

fn point_in_polygon(poly: &[Vec2], p: &Vec2) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn region_point_distance(poly: &[Vec2], p: &Vec2) -> f64 {
    if point_in_polygon(poly, p) {
        return 0.0;
    }
    let n = poly.len();
    (0..n)
        .map(|i| point_segment_distance(p, &poly[i], &poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

fn region_segment_distance(poly: &[Vec2], a: &Vec2, b: &Vec2) -> f64 {
    if point_in_polygon(poly, a) {
        return 0.0;
    }
    let n = poly.len();
    (0..n)
        .map(|i| segment_segment_distance(a, b, &poly[i], &poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_square() -> ObjectShape {
        ObjectShape::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bow_tie() {
        let err = ObjectShape::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap_err();
        assert_eq!(err, GeometryError::NotSimple(0, 2));
        assert_eq!(err.to_string(), "object polygon is not simple (edge 0 × edge 2)");
    }

    #[test]
    fn rejects_clockwise_and_degenerate() {
        let cw = ObjectShape::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ]);
        assert_eq!(cw.unwrap_err(), GeometryError::NotCounterClockwise);
        assert_eq!(
            ObjectShape::new(vec![Vec2::zeros(), Vec2::x()]).unwrap_err(),
            GeometryError::TooFewVertices(2)
        );
    }

    #[test]
    fn transform_identity_and_translation() {
        let s = unit_square();
        assert_eq!(s.transform(&Pose2::identity()), s);
        let moved = s.transform(&Pose2::from_xy_angle(1.0, 0.0, 0.0));
        assert_eq!(moved.vertices()[0], Vec2::new(1.0, 0.0));
        assert_eq!(moved.vertices()[2], Vec2::new(2.0, 1.0));
    }

    #[test]
    fn transform_half_turn_reflects_through_origin() {
        let tri = ObjectShape::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let r = tri.transform(&Pose2::from_xy_angle(0.0, 0.0, PI));
        let expected = [Vec2::new(0.0, 0.0), Vec2::new(-1.0, 0.0), Vec2::new(0.0, -1.0)];
        for (v, e) in r.vertices().iter().zip(expected) {
            assert!((v - e).amax() < 1e-15);
        }
    }

    #[test]
    fn intersects_examples() {
        let s = unit_square();
        assert!(!intersects(&s, &[Obstacle::disc(Vec2::new(5.0, 5.0), 0.1, 0)]));
        assert!(intersects(&s, &[Obstacle::disc(Vec2::new(0.5, 0.5), 0.0, 0)]));
        assert!(intersects(&s, &[Obstacle::disc(Vec2::new(2.0, 0.5), 1.0, 0)]));
    }

    #[test]
    fn clearance_examples() {
        let s = unit_square();
        assert_eq!(clearance(&s, &[Obstacle::disc(Vec2::new(3.0, 0.5), 1.0, 0)]), 1.0);
        assert_eq!(clearance(&s, &[Obstacle::disc(Vec2::new(0.5, 0.5), 0.2, 0)]), 0.0);
        assert_eq!(clearance(&s, &[]), f64::INFINITY);
        let cap = Obstacle::capsule(Vec2::new(2.0, -1.0), Vec2::new(2.0, 2.0), 0.5, 0);
        assert!((clearance(&s, &[cap]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn capsule_crossing_polygon_without_endpoint_inside() {
        let s = unit_square();
        let cap = Obstacle::capsule(Vec2::new(-1.0, 0.5), Vec2::new(2.0, 0.5), 0.0, 0);
        assert!(intersects(&s, &[cap]));
    }

    #[test]
    fn degenerate_capsule_becomes_disc() {
        let o = Obstacle::capsule(Vec2::new(1.0, 1.0), Vec2::new(1.0, 1.0), 0.3, 2);
        assert_eq!(o, Obstacle::disc(Vec2::new(1.0, 1.0), 0.3, 2));
    }

    #[test]
    fn bounding_radius_examples() {
        let s = unit_square();
        assert!((bounding_radius(&s, &Vec2::zeros()) - 2f64.sqrt()).abs() < 1e-15);
        assert!((bounding_radius(&s, &Vec2::new(0.5, 0.5)) - 2f64.sqrt() / 2.0).abs() < 1e-15);
        let tri = ObjectShape::new(vec![Vec2::new(0.0, 0.0), Vec2::new(4.0, 0.0), Vec2::new(0.0, 3.0)]).unwrap();
        assert_eq!(bounding_radius(&tri, &Vec2::zeros()), 4.0);
    }

    #[test]
    fn scene_rejects_negative_radius_and_component_gaps() {
        let bad = Scene::new("x", unit_square(), vec![Obstacle::disc(Vec2::zeros(), -1.0, 0)]);
        assert!(matches!(bad, Err(GeometryError::BadObstacle { index: 0, .. })));
        let gap = Scene::new("x", unit_square(), vec![Obstacle::disc(Vec2::zeros(), 1.0, 1)]);
        assert_eq!(
            gap.unwrap_err(),
            GeometryError::ComponentGap {
                expected: 2,
                missing: 0
            }
        );
        let empty = Scene::new("x", unit_square(), vec![]).unwrap();
        assert_eq!(empty.component_count(), 0);
    }

    #[test]
    fn kernel_matches_direct_clearance() {
        let scene = Scene::new(
            "k",
            unit_square(),
            vec![
                Obstacle::disc(Vec2::new(3.0, 0.5), 0.2, 0),
                Obstacle::capsule(Vec2::new(-2.0, -2.0), Vec2::new(-2.0, 3.0), 0.1, 1),
            ],
        )
        .unwrap();
        let kernel = CollisionKernel::new(&scene);
        for i in 0..50 {
            let p = Pose2::from_xy_angle(0.1 * i as f64 - 2.0, 0.05 * i as f64, 0.3 * i as f64);
            let direct = clearance(&scene.object.transform(&p), &scene.cage);
            assert_eq!(kernel.clearance_at(&p), direct);
            assert_eq!(kernel.intersects_at(&p), direct == 0.0);
        }
    }

    #[test]
    fn centroid_of_square() {
        assert!((unit_square().centroid() - Vec2::new(0.5, 0.5)).amax() < 1e-15);
    }
}
