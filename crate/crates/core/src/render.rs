//! SVG drawings of a scene and of a chain of simple moves.
//!
//! The first panel shows the object at its start placement. Each following
//! panel shows one simple move: the placement before it (dashed), after it
//! (filled), and the path of every vertex. Numbers are written with fixed
//! precision, so equal input gives equal bytes.

use std::fmt::Write as _;

use crate::geometry::{ObjectShape, ObstacleKind, Scene, Vec2};
use crate::lie::Pose2;
use crate::sweep::SimpleMove;

/// Samples per vertex path in each move panel.
pub const TRACE_SAMPLES: usize = 64;

const PANEL: f64 = 320.0;
const MARGIN: f64 = 12.0;
const CAPTION: f64 = 22.0;

struct View {
    lo: Vec2,
    scale: f64,
    extent: Vec2,
}

impl View {
    fn fit(points: &[Vec2]) -> Self {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        for p in points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let pad = 0.05 * (hi - lo).amax().max(1.0);
        lo -= Vec2::new(pad, pad);
        hi += Vec2::new(pad, pad);
        let extent = hi - lo;
        let scale = (PANEL - 2.0 * MARGIN) / extent.amax();
        Self { lo, scale, extent }
    }

    /// Pixel position inside a panel whose top-left corner is `(ox, 0)`.
    fn px(&self, ox: f64, p: &Vec2) -> (f64, f64) {
        let inner = PANEL - 2.0 * MARGIN;
        let shift = (Vec2::repeat(inner) - self.extent * self.scale) * 0.5;
        (
            ox + MARGIN + shift.x + (p.x - self.lo.x) * self.scale,
            CAPTION + MARGIN + shift.y + (self.lo.y + self.extent.y - p.y) * self.scale,
        )
    }
}

fn polygon(out: &mut String, view: &View, ox: f64, shape: &ObjectShape, class: &str) {
    let pts: Vec<String> = shape
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = view.px(ox, v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, "<polygon class=\"{class}\" points=\"{}\"/>", pts.join(" "));
}

fn obstacles(out: &mut String, view: &View, ox: f64, scene: &Scene) {
    for o in &scene.cage {
        match o.kind {
            ObstacleKind::Disc { center, radius } => {
                let (x, y) = view.px(ox, &center);
                let r = (radius * view.scale).max(1.5);
                let _ = writeln!(
                    out,
                    "<circle class=\"obstacle\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r:.3}\"/>"
                );
            }
            ObstacleKind::Capsule { a, b, radius } => {
                let (x1, y1) = view.px(ox, &a);
                let (x2, y2) = view.px(ox, &b);
                let w = (2.0 * radius * view.scale).max(1.5);
                let _ = writeln!(
                    out,
                    "<line class=\"obstacle\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" \
                     stroke-width=\"{w:.3}\"/>"
                );
            }
        }
    }
}

fn trace(m: &SimpleMove, v: &Vec2) -> Vec<Vec2> {
    (0..TRACE_SAMPLES)
        .map(|j| m.pose_at(j as f64 / (TRACE_SAMPLES - 1) as f64).apply(v))
        .collect()
}

fn panel_label(i: usize) -> String {
    if i < 26 {
        format!("({})", (b'a' + i as u8) as char)
    } else {
        format!("({})", i + 1)
    }
}

/// One panel for the start placement plus one per move.
pub fn render_svg(scene: &Scene, start: &Pose2, moves: &[SimpleMove]) -> String {
    let object = &scene.object;
    let mut points: Vec<Vec2> = object.transform(start).vertices().to_vec();
    let traces: Vec<Vec<Vec<Vec2>>> = moves
        .iter()
        .map(|m| object.vertices().iter().map(|v| trace(m, &m.start.apply(v))).collect())
        .collect();
    for m in moves {
        points.extend_from_slice(object.transform(&m.end()).vertices());
    }
    for t in traces.iter().flatten() {
        points.extend_from_slice(t);
    }
    if let Some((lo, hi)) = scene.cage_bounds() {
        points.push(lo);
        points.push(hi);
    }
    let view = View::fit(&points);

    let panels = moves.len() + 1;
    let width = PANEL * panels as f64;
    let height = PANEL + CAPTION;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(
        out,
        "<style>.obstacle{{fill:#222;stroke:#222;stroke-linecap:round}} \
         .object{{fill:#7aa6d8;fill-opacity:0.7;stroke:#1d4f8a;stroke-width:1}} \
         .before{{fill:none;stroke:#1d4f8a;stroke-dasharray:4 3;stroke-width:1}} \
         .trace{{fill:none;stroke:#c0392b;stroke-width:0.8}} \
         .frame{{fill:none;stroke:#bbb}} text{{font:14px sans-serif}}</style>"
    );
    for i in 0..panels {
        let ox = PANEL * i as f64;
        let _ = writeln!(out, "<g class=\"panel\">");
        let _ = writeln!(
            out,
            "<rect class=\"frame\" x=\"{:.3}\" y=\"{CAPTION:.3}\" width=\"{:.3}\" height=\"{PANEL:.3}\"/>",
            ox + 0.5,
            PANEL - 1.0
        );
        let _ = writeln!(out, "<text x=\"{:.3}\" y=\"16\">{}</text>", ox + 8.0, panel_label(i));
        obstacles(&mut out, &view, ox, scene);
        if i == 0 {
            polygon(&mut out, &view, ox, &object.transform(start), "object");
        } else {
            let m = &moves[i - 1];
            polygon(&mut out, &view, ox, &object.transform(&m.start), "before");
            for path in &traces[i - 1] {
                let pts: Vec<String> = path
                    .iter()
                    .map(|p| {
                        let (x, y) = view.px(ox, p);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let _ = writeln!(out, "<polyline class=\"trace\" points=\"{}\"/>", pts.join(" "));
            }
            polygon(&mut out, &view, ox, &object.transform(&m.end()), "object");
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Obstacle;
    use crate::lie::Twist2;

    fn square_scene(cage: Vec<Obstacle>) -> Scene {
        let sq = ObjectShape::new(vec![
            Vec2::new(-0.5, -0.5),
            Vec2::new(0.5, -0.5),
            Vec2::new(0.5, 0.5),
            Vec2::new(-0.5, 0.5),
        ])
        .unwrap();
        Scene::new("sq", sq, cage).unwrap()
    }

    #[test]
    fn scene_only_gives_one_panel() {
        let s = square_scene(vec![Obstacle::disc(Vec2::new(2.0, 0.0), 0.3, 0)]);
        let svg = render_svg(&s, &Pose2::identity(), &[]);
        assert_eq!(svg.matches("class=\"panel\"").count(), 1);
        assert_eq!(svg.matches("class=\"obstacle\"").count(), 1);
    }

    #[test]
    fn empty_cage_has_no_obstacle_elements() {
        let s = square_scene(vec![]);
        let svg = render_svg(&s, &Pose2::identity(), &[]);
        assert_eq!(svg.matches("class=\"obstacle\"").count(), 0);
    }

    #[test]
    fn one_panel_per_move_with_vertex_traces() {
        let s = square_scene(vec![Obstacle::capsule(
            Vec2::new(0.0, 3.0),
            Vec2::new(4.0, 3.0),
            0.1,
            0,
        )]);
        let first = SimpleMove::new(Twist2::new([2.0, 0.0].into(), 0.0).unwrap(), Pose2::identity());
        let second = SimpleMove::new(Twist2::new([0.0, 1.0].into(), 1.0).unwrap(), first.end());
        let svg = render_svg(&s, &Pose2::identity(), &[first, second]);
        assert_eq!(svg.matches("class=\"panel\"").count(), 3);
        assert_eq!(svg.matches("class=\"trace\"").count(), 8);
        let trace = svg.lines().find(|l| l.contains("class=\"trace\"")).unwrap();
        assert_eq!(trace.matches(',').count(), TRACE_SAMPLES);
        assert_eq!(svg, render_svg(&s, &Pose2::identity(), &[first, second]));
    }
}
