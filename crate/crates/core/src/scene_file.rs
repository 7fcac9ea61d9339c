//! TOML scene files.
//!
//! ```toml
//! name = "square and disc"
//!
//! [object]
//! vertices = [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]
//!
//! [[obstacle]]
//! type = "disc"
//! center = [2.0, 0.0]
//! radius = 0.25
//! component = 0
//!
//! [[obstacle]]
//! type = "capsule"
//! a = [-2.0, -1.0]
//! b = [-2.0, 1.0]
//! radius = 0.1
//! component = 1
//!
//! [[pose]]
//! label = "start"
//! x = 0.0
//! y = 0.0
//! theta = 0.0
//!
//! [grid]
//! resolution = [32, 32, 36]
//! k_max = 2
//! ```
//!
//! Poses are rigid transforms applied to the vertex coordinates as written;
//! angles are in radians. `[grid]` and each of its keys are optional. Unknown
//! keys are rejected.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use crate::geometry::{GeometryError, ObjectShape, Obstacle, ObstacleKind, Scene, Vec2};
use crate::lie::Pose2;
use crate::planner::{PoseGrid, DEFAULT_K_MAX, DEFAULT_RESOLUTION};

/// 1-based position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn locate(text: &str, offset: usize) -> Location {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Location { line, column }
}

#[derive(Debug, Error)]
pub enum SceneFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{at}: {source}")]
    Geometry {
        at: Location,
        #[source]
        source: GeometryError,
    },
    #[error("{at}: {message}")]
    Invalid { at: Location, message: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDoc {
    name: String,
    object: ObjectDoc,
    #[serde(default)]
    obstacle: Vec<Spanned<ObstacleDoc>>,
    #[serde(default)]
    pose: Vec<Spanned<NamedPose>>,
    grid: Option<Spanned<GridOverride>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectDoc {
    vertices: Spanned<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ObstacleDoc {
    Disc {
        center: [f64; 2],
        radius: f64,
        component: usize,
    },
    Capsule {
        a: [f64; 2],
        b: [f64; 2],
        radius: f64,
        component: usize,
    },
}

impl From<&Obstacle> for ObstacleDoc {
    fn from(o: &Obstacle) -> Self {
        let p = |v: Vec2| [v.x, v.y];
        match o.kind {
            ObstacleKind::Disc { center, radius } => ObstacleDoc::Disc {
                center: p(center),
                radius,
                component: o.component,
            },
            ObstacleKind::Capsule { a, b, radius } => ObstacleDoc::Capsule {
                a: p(a),
                b: p(b),
                radius,
                component: o.component,
            },
        }
    }
}

impl From<&ObstacleDoc> for Obstacle {
    fn from(d: &ObstacleDoc) -> Self {
        let v = |p: [f64; 2]| Vec2::new(p[0], p[1]);
        match *d {
            ObstacleDoc::Disc {
                center,
                radius,
                component,
            } => Obstacle::disc(v(center), radius, component),
            ObstacleDoc::Capsule {
                a,
                b,
                radius,
                component,
            } => Obstacle::capsule(v(a), v(b), radius, component),
        }
    }
}

/// A labelled placement of the object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPose {
    pub label: String,
    pub x: f64,
    pub y: f64,
    /// Radians.
    pub theta: f64,
}

impl NamedPose {
    pub fn pose(&self) -> Pose2 {
        Pose2::from_xy_angle(self.x, self.y, self.theta)
    }
}

/// Grid settings stored with a scene; missing keys fall back to defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverride {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_range: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_range: Option<[f64; 2]>,
}

impl GridOverride {
    fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// A parsed scene with its named poses and grid settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneFile {
    pub scene: Scene,
    pub poses: Vec<NamedPose>,
    pub grid: GridOverride,
}

#[derive(Serialize)]
struct SceneOut<'a> {
    name: &'a str,
    object: ObjectOut,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    obstacle: Vec<ObstacleDoc>,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    pose: &'a [NamedPose],
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<&'a GridOverride>,
}

#[derive(Serialize)]
struct ObjectOut {
    vertices: Vec<[f64; 2]>,
}

impl SceneFile {
    pub fn parse(text: &str) -> Result<Self, SceneFileError> {
        let doc: SceneDoc = toml::from_str(text)?;
        let at = |span: std::ops::Range<usize>| locate(text, span.start);

        let vertices = doc
            .object
            .vertices
            .get_ref()
            .iter()
            .map(|p| Vec2::new(p[0], p[1]))
            .collect();
        let object = ObjectShape::new(vertices).map_err(|source| SceneFileError::Geometry {
            at: at(doc.object.vertices.span()),
            source,
        })?;

        let cage: Vec<Obstacle> = doc.obstacle.iter().map(|o| o.get_ref().into()).collect();
        let scene = Scene::new(doc.name, object, cage).map_err(|source| {
            let span = match source {
                GeometryError::BadObstacle { index, .. } => doc.obstacle[index].span(),
                _ => doc.obstacle.first().map_or(0..0, |o| o.span()),
            };
            SceneFileError::Geometry { at: at(span), source }
        })?;

        let mut poses: Vec<NamedPose> = Vec::with_capacity(doc.pose.len());
        for p in &doc.pose {
            let pose = p.get_ref();
            let invalid = |message: String| SceneFileError::Invalid {
                at: at(p.span()),
                message,
            };
            if ![pose.x, pose.y, pose.theta].iter().all(|v| v.is_finite()) {
                return Err(invalid(format!("pose \"{}\" has a non-finite value", pose.label)));
            }
            if poses.iter().any(|q| q.label == pose.label) {
                return Err(invalid(format!("duplicate pose label \"{}\"", pose.label)));
            }
            poses.push(pose.clone());
        }

        let grid = match doc.grid {
            Some(g) => {
                let span = g.span();
                let g = g.into_inner();
                let ranges = g.x_range.iter().chain(g.y_range.iter());
                if !ranges.flatten().all(|v| v.is_finite()) {
                    return Err(SceneFileError::Invalid {
                        at: at(span),
                        message: "grid ranges must be finite".into(),
                    });
                }
                g
            }
            None => GridOverride::default(),
        };
        Ok(Self { scene, poses, grid })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SceneFileError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SceneFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml_string(&self) -> String {
        let out = SceneOut {
            name: &self.scene.name,
            object: ObjectOut {
                vertices: self.scene.object.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            obstacle: self.scene.cage.iter().map(ObstacleDoc::from).collect(),
            pose: &self.poses,
            grid: (!self.grid.is_empty()).then_some(&self.grid),
        };
        toml::to_string(&out).expect("scene documents always serialize")
    }

    pub fn pose(&self, label: &str) -> Option<&NamedPose> {
        self.poses.iter().find(|p| p.label == label)
    }

    /// The grid for this scene: explicit arguments first, then the file's
    /// `[grid]` table, then the defaults around the caging set.
    pub fn pose_grid(&self, resolution: Option<(usize, usize, usize)>, k_max: Option<u32>) -> PoseGrid {
        let file_res = self.grid.resolution.map(|[a, b, c]| (a, b, c));
        let (nx, ny, nt) = resolution.or(file_res).unwrap_or(DEFAULT_RESOLUTION);
        let k = k_max.or(self.grid.k_max).unwrap_or(DEFAULT_K_MAX);
        let mut grid = PoseGrid::around_scene(&self.scene, nx, ny, nt, k);
        if let Some(r) = self.grid.x_range {
            grid.x_range = r;
        }
        if let Some(r) = self.grid.y_range {
            grid.y_range = r;
        }
        grid
    }
}
