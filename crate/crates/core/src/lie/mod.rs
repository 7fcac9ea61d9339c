//! Euclidean motions: the groups SE(2), SE(3) and their Lie algebras.
//!
//! A twist `𝔤 = (ξ, ω)` generates the one-parameter orbit `t ↦ exp(t𝔤)`,
//! which acts on a point as `x ↦ e^{tω} x + v_t(ω) ξ` with
//! `v_t(ω) = ∫₀ᵗ e^{sω} ds`. Every such orbit is a rotation about a fixed
//! center, a translation, or (in 3D) a screw along the rotation axis.
//!
//! Poses act on points from the left; `p.compose(&q)` is `p ∘ q`, i.e. `q`
//! is applied first.

mod planar;
mod spatial;

pub use planar::{principal_angle, v_factor2, Twist2};
pub use spatial::{hat, v_factor3, vee, Twist3};

use nalgebra::{Const, DimMin, SMatrix, SVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Per-entry tolerance for the `SO(n)` membership test.
pub const ROTATION_TOLERANCE: f64 = 1e-9;

/// Below this rotation magnitude `|θ|·t` the `v_t` factor is evaluated by
/// its power series instead of the closed form.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Number of power-series terms used below [`SERIES_THRESHOLD`].
pub const SERIES_TERMS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("invalid generator")]
    InvalidGenerator,
    #[error("invalid pose: {0}")]
    InvalidPose(&'static str),
    #[error("no screw on this branch (k = {branch})")]
    NoScrewOnBranch { branch: i32 },
    #[error("log branch {branch} is not supported in 3D; only the principal branch is")]
    UnsupportedBranch { branch: i32 },
}

/// An element of SE(n): `x ↦ A x + u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose<const N: usize> {
    rotation: SMatrix<f64, N, N>,
    translation: SVector<f64, N>,
}

pub type Pose2 = Pose<2>;
pub type Pose3 = Pose<3>;

impl<const N: usize> Pose<N> {
    /// Builds a pose after checking that `rotation` lies in SO(n).
    pub fn new(rotation: SMatrix<f64, N, N>, translation: SVector<f64, N>) -> Result<Self, KinematicsError>
    where
        Const<N>: DimMin<Const<N>, Output = Const<N>>,
    {
        let pose = Self::from_parts_unchecked(rotation, translation);
        pose.validate()?;
        Ok(pose)
    }

    pub(crate) fn from_parts_unchecked(rotation: SMatrix<f64, N, N>, translation: SVector<f64, N>) -> Self {
        Self { rotation, translation }
    }

    pub fn identity() -> Self {
        Self {
            rotation: SMatrix::identity(),
            translation: SVector::zeros(),
        }
    }

    pub fn from_translation(translation: SVector<f64, N>) -> Self {
        Self {
            rotation: SMatrix::identity(),
            translation,
        }
    }

    pub fn rotation(&self) -> &SMatrix<f64, N, N> {
        &self.rotation
    }

    pub fn translation(&self) -> &SVector<f64, N> {
        &self.translation
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation.transpose();
        Self {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    pub fn apply(&self, x: &SVector<f64, N>) -> SVector<f64, N> {
        self.rotation * x + self.translation
    }

    /// Largest absolute entry difference between the homogeneous matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let r = (self.rotation - other.rotation).amax();
        let t = (self.translation - other.translation).amax();
        r.max(t)
    }

    pub fn is_finite(&self) -> bool {
        self.rotation.iter().all(|v| v.is_finite()) && self.translation.iter().all(|v| v.is_finite())
    }

    /// Checks `ᵗA·A = I` and `det A = 1` within [`ROTATION_TOLERANCE`].
    pub fn validate(&self) -> Result<(), KinematicsError>
    where
        Const<N>: DimMin<Const<N>, Output = Const<N>>,
    {
        if !self.is_finite() {
            return Err(KinematicsError::InvalidPose("non-finite entry"));
        }
        let gram = self.rotation.transpose() * self.rotation;
        if (gram - SMatrix::<f64, N, N>::identity()).amax() > ROTATION_TOLERANCE {
            return Err(KinematicsError::InvalidPose("rotation is not orthogonal"));
        }
        if (self.rotation.determinant() - 1.0).abs() > ROTATION_TOLERANCE {
            return Err(KinematicsError::InvalidPose("rotation has det != 1"));
        }
        Ok(())
    }
}

impl Pose2 {
    /// Rotation by `theta` about the origin followed by translation `(x, y)`.
    pub fn from_xy_angle(x: f64, y: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            rotation: SMatrix::<f64, 2, 2>::new(c, -s, s, c),
            translation: SVector::<f64, 2>::new(x, y),
        }
    }

    /// Rotation angle in `(-π, π]`.
    pub fn angle(&self) -> f64 {
        principal_angle(self.rotation[(1, 0)].atan2(self.rotation[(0, 0)]))
    }

    pub fn x(&self) -> f64 {
        self.translation[0]
    }

    pub fn y(&self) -> f64 {
        self.translation[1]
    }
}

/// `(x, y, θ)` form used by scene files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl From<&Pose2> for PlanarPose {
    fn from(p: &Pose2) -> Self {
        Self {
            x: p.x(),
            y: p.y(),
            theta: p.angle(),
        }
    }
}

impl From<PlanarPose> for Pose2 {
    fn from(p: PlanarPose) -> Self {
        Pose2::from_xy_angle(p.x, p.y, p.theta)
    }
}

/// Splits `ξ = ω ξ₀ + ξ₁` with `ξ₁ ∈ ker ω`, so that the orbit reads
/// `ψ(t)x = e^{tω}(x + ξ₀) − ξ₀ + ξ₁ t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewDecomposition<const N: usize> {
    pub center_offset: SVector<f64, N>,
    pub kernel_translation: SVector<f64, N>,
    pub is_pure_translation: bool,
}

impl<const N: usize> ScrewDecomposition<N> {
    /// The point `−ξ₀`, fixed by the rotational part of the motion.
    pub fn rotation_center(&self) -> SVector<f64, N> {
        -self.center_offset
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn compose_with_identity_is_noop() {
        let p = Pose2::from_xy_angle(1.5, -2.0, 0.7);
        assert_eq!(Pose2::identity().compose(&p), p);
        assert_eq!(p.compose(&Pose2::identity()), p);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let p = Pose2::from_xy_angle(1.5, -2.0, 0.7);
        assert!(p.compose(&p.inverse()).max_abs_diff(&Pose2::identity()) < 1e-12);
        assert!(p.inverse().compose(&p).max_abs_diff(&Pose2::identity()) < 1e-12);
    }

    #[test]
    fn two_eighth_turns_make_a_quarter_turn() {
        let q = Pose2::from_xy_angle(0.0, 0.0, FRAC_PI_4);
        let half = Pose2::from_xy_angle(0.0, 0.0, 2.0 * FRAC_PI_4);
        assert!(q.compose(&q).max_abs_diff(&half) < 1e-12);
    }

    #[test]
    fn validate_rejects_shear() {
        let bad = Pose2::new(
            SMatrix::<f64, 2, 2>::new(1.0, 0.1, 0.0, 1.0),
            SVector::<f64, 2>::zeros(),
        );
        assert!(matches!(bad, Err(KinematicsError::InvalidPose(_))));
        let reflection = Pose2::new(
            SMatrix::<f64, 2, 2>::new(1.0, 0.0, 0.0, -1.0),
            SVector::<f64, 2>::zeros(),
        );
        assert!(reflection.is_err());
    }

    #[test]
    fn angle_is_principal() {
        assert_eq!(
            Pose2::from_xy_angle(0.0, 0.0, std::f64::consts::PI).angle(),
            std::f64::consts::PI
        );
        assert!((Pose2::from_xy_angle(0.0, 0.0, -3.0).angle() + 3.0).abs() < 1e-15);
    }
}
