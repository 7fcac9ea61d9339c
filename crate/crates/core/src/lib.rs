//! Caging analysis for a rigid planar object among codimension-2 obstacles.
//!
//! The crate decides whether two placements of an object are connected by a
//! chain of simple euclidean moves (rotations about a fixed center or
//! translations) that never touch the caging set, and how many such moves are
//! needed at least.
//!
//! - [`lie`]: SE(2)/SE(3) exponential, logarithm branches, screw decomposition.
//! - [`geometry`]: polygon objects, disc/capsule obstacles, collision and clearance.
//! - [`sweep`]: certified collision-freeness of whole move orbits.
//! - [`planner`]: free configuration grid, congruence classes, minimal move counts.
//! - [`scene_file`], [`report`], [`render`], [`cli`]: the `cage` command-line tool.

pub mod cli;
pub mod geometry;
pub mod lie;
pub mod planner;
pub mod render;
pub mod report;
pub mod scene_file;
pub mod sweep;
