//! Analysis reports in the `report_v1` layout, as JSON or plain text.
//!
//! JSON output carries no timing unless asked for, so two runs with the same
//! input produce the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lie::{PlanarPose, Pose2, Twist2};
use crate::planner::{CagingClassification, CagingVerdict, EscapeReport, PoseGrid};
use crate::sweep::SweepVerdict;

pub const SCHEMA_VERSION: &str = "report_v1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: CommandEcho,
    pub scene: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<PoseGrid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution_note: Option<String>,
    pub result: ReportResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// The command name and its effective arguments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoseEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl PoseEntry {
    pub fn labelled(label: &str, x: f64, y: f64, theta: f64) -> Self {
        Self {
            label: Some(label.to_string()),
            x,
            y,
            theta,
        }
    }

    pub fn pose(&self) -> Pose2 {
        Pose2::from_xy_angle(self.x, self.y, self.theta)
    }
}

impl From<&Pose2> for PoseEntry {
    fn from(p: &Pose2) -> Self {
        let q = PlanarPose::from(p);
        Self {
            label: None,
            x: q.x,
            y: q.y,
            theta: q.theta,
        }
    }
}

/// One simple move of a witness chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentEntry {
    pub branch: i32,
    pub xi: [f64; 2],
    pub theta: f64,
    pub start: PoseEntry,
    pub end: PoseEntry,
}

impl SegmentEntry {
    pub fn twist(&self) -> Option<Twist2> {
        Twist2::new(self.xi.into(), self.theta).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleEntry {
    pub ell: Option<usize>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MovesEntry {
    pub reachable: bool,
    pub ell: Option<usize>,
    pub from: PoseEntry,
    pub to: Option<PoseEntry>,
    pub segments: Vec<SegmentEntry>,
    pub certificate: Option<SweepVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
}

impl MovesEntry {
    /// `from` and `to` replace the report's own poses so that labels and the
    /// numbers as written in the scene file are kept.
    pub fn new(r: &EscapeReport, from: PoseEntry, to: Option<PoseEntry>) -> Self {
        let mut segments = Vec::new();
        if let Some(m) = &r.moves {
            for (i, sm) in m.simple_moves().iter().enumerate() {
                segments.push(SegmentEntry {
                    branch: r.branches[i],
                    xi: [sm.twist.xi().x, sm.twist.xi().y],
                    theta: sm.twist.theta(),
                    start: PoseEntry::from(&sm.start),
                    end: PoseEntry::from(&sm.end()),
                });
            }
        }
        Self {
            reachable: r.is_reachable(),
            ell: r.ell,
            from,
            to: to.or_else(|| r.to_pose.as_ref().map(PoseEntry::from)),
            segments,
            certificate: r.certificate,
            oracle: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationEntry {
    pub ell0: usize,
    pub verdict: CagingVerdict,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
    pub landmark_count: usize,
    pub witness: Option<[PoseEntry; 2]>,
}

impl ClassificationEntry {
    pub fn new(c: &CagingClassification, ell0: usize) -> Self {
        Self {
            ell0,
            verdict: c.verdict,
            component_count: c.component_count,
            component_sizes: c.component_sizes.clone(),
            landmark_count: c.landmark_count,
            witness: c.witness.map(|(a, b)| [PoseEntry::from(&a), PoseEntry::from(&b)]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportResult {
    Check {
        pose: PoseEntry,
        free: bool,
        /// `None` when the caging set is empty.
        clearance: Option<f64>,
    },
    Components {
        total_cells: usize,
        free_cells: usize,
        component_count: usize,
        component_sizes: Vec<usize>,
        classification: Option<ClassificationEntry>,
    },
    Moves(MovesEntry),
    Classify(ClassificationEntry),
    Render {
        out: String,
        panels: usize,
    },
}

fn pose_text(p: &PoseEntry) -> String {
    let body = format!("({}, {}, {})", p.x, p.y, p.theta);
    match &p.label {
        Some(l) => format!("{l} {body}"),
        None => body,
    }
}

fn verdict_text(v: &Option<SweepVerdict>) -> String {
    match v {
        None => "none".into(),
        Some(SweepVerdict::Free) => "free".into(),
        Some(SweepVerdict::Colliding { t_hit }) => format!("colliding at t = {t_hit}"),
        Some(SweepVerdict::Unknown { reason }) => format!("unknown ({reason:?})"),
    }
}

fn classification_text(out: &mut String, c: &ClassificationEntry) {
    let verdict = match c.verdict {
        CagingVerdict::CongruentSet => "congruent set".to_string(),
        CagingVerdict::CompleteCagingSet { component_count } => {
            format!("complete caging set ({component_count} components)")
        }
        CagingVerdict::DissociatedAt { ell0 } => format!("dissociated at ell0 = {ell0}"),
    };
    let _ = writeln!(out, "classification (ell0 = {}): {verdict}", c.ell0);
    let _ = writeln!(out, "landmarks: {}", c.landmark_count);
    if let Some([a, b]) = &c.witness {
        let _ = writeln!(out, "witness pair: {} and {}", pose_text(a), pose_text(b));
    }
}

impl Report {
    pub fn new(command: CommandEcho, scene: &str, grid: Option<PoseGrid>, result: ReportResult) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command,
            scene: scene.to_string(),
            resolution_note: grid.as_ref().map(PoseGrid::resolution_note),
            grid,
            result,
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.name);
        let _ = writeln!(out, "scene: {}", self.scene);
        if let Some(g) = &self.grid {
            let _ = writeln!(out, "grid: {}x{}x{}, k_max {}", g.nx, g.ny, g.ntheta, g.k_max);
        }
        match &self.result {
            ReportResult::Check { pose, free, clearance } => {
                let _ = writeln!(out, "pose: {}", pose_text(pose));
                let _ = writeln!(out, "free: {free}");
                match clearance {
                    Some(c) => writeln!(out, "clearance: {c}"),
                    None => writeln!(out, "clearance: unbounded (no obstacles)"),
                }
                .ok();
            }
            ReportResult::Components {
                total_cells,
                free_cells,
                component_count,
                component_sizes,
                classification,
            } => {
                let _ = writeln!(out, "free cells: {free_cells} of {total_cells}");
                let _ = writeln!(out, "components: {component_count}");
                for (i, n) in component_sizes.iter().enumerate() {
                    let _ = writeln!(out, "  component {i}: {n} cells");
                }
                if let Some(c) = classification {
                    classification_text(&mut out, c);
                }
            }
            ReportResult::Moves(m) => {
                let _ = writeln!(out, "from: {}", pose_text(&m.from));
                if let Some(to) = &m.to {
                    let _ = writeln!(out, "to: {}", pose_text(to));
                }
                match m.ell {
                    Some(ell) => writeln!(out, "ell: {ell}"),
                    None => writeln!(out, "ell: unreachable at this resolution"),
                }
                .ok();
                for (i, s) in m.segments.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  move {}: branch {}, xi ({}, {}), theta {}",
                        i + 1,
                        s.branch,
                        s.xi[0],
                        s.xi[1],
                        s.theta
                    );
                }
                if m.reachable && !m.segments.is_empty() {
                    let _ = writeln!(out, "certificate: {}", verdict_text(&m.certificate));
                }
                if let Some(o) = &m.oracle {
                    let ell = o.ell.map_or("unreachable".to_string(), |e| e.to_string());
                    let _ = writeln!(out, "oracle: ell {ell}, agrees {}", o.agrees);
                }
            }
            ReportResult::Classify(c) => {
                let _ = writeln!(out, "components: {}", c.component_count);
                classification_text(&mut out, c);
            }
            ReportResult::Render { out: path, panels } => {
                let _ = writeln!(out, "wrote {path} ({panels} panels)");
            }
        }
        if let Some(note) = &self.resolution_note {
            let _ = writeln!(out, "note: {note}");
        }
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(out, "time: {ms:.1} ms");
        }
        out
    }
}

/// The parts of a moves report that rendering needs.
#[derive(Debug, Clone, Deserialize)]
pub struct MovesInput {
    pub from: PoseEntry,
    pub segments: Vec<SegmentEntry>,
}

#[derive(Deserialize)]
struct ReportInput {
    schema: String,
    result: MovesInput,
}

/// Reads the witness chain back from a JSON moves report.
pub fn read_moves(json: &str) -> Result<MovesInput, String> {
    let r: ReportInput = serde_json::from_str(json).map_err(|e| format!("not a moves report: {e}"))?;
    if r.schema != SCHEMA_VERSION {
        return Err(format!("unsupported report schema \"{}\"", r.schema));
    }
    Ok(r.result)
}
