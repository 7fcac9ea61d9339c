use nalgebra::{Matrix3, Vector3};

use super::{KinematicsError, Pose3, ScrewDecomposition, SERIES_TERMS, SERIES_THRESHOLD};

/// Angles within this distance of `π` use the symmetric-part axis extraction.
const NEAR_HALF_TURN: f64 = 1e-6;

/// The antisymmetric matrix with `hat(w) x = w × x`.
pub fn hat(w: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0)
}

/// Inverse of [`hat`], reading the antisymmetric part of `m`.
pub fn vee(m: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(
        0.5 * (m[(2, 1)] - m[(1, 2)]),
        0.5 * (m[(0, 2)] - m[(2, 0)]),
        0.5 * (m[(1, 0)] - m[(0, 1)]),
    )
}

fn rodrigues(w: &Vector3<f64>, t: f64) -> Matrix3<f64> {
    let theta = w.norm();
    let x = theta * t;
    let k = hat(w);
    if x.abs() >= SERIES_THRESHOLD {
        let h = (0.5 * x).sin();
        Matrix3::identity() + k * (x.sin() / theta) + k * k * (2.0 * h * h / (theta * theta))
    } else {
        let mut term = Matrix3::identity();
        let mut sum = term;
        for j in 1..SERIES_TERMS {
            term = k * term * (t / j as f64);
            sum += term;
        }
        sum
    }
}

fn v_factor_unchecked(w: &Vector3<f64>, t: f64) -> Matrix3<f64> {
    let theta = w.norm();
    let x = theta * t;
    let k = hat(w);
    if x.abs() >= SERIES_THRESHOLD {
        let h = (0.5 * x).sin();
        let t2 = theta * theta;
        Matrix3::identity() * t + k * (2.0 * h * h / t2) + k * k * ((x - x.sin()) / (t2 * theta))
    } else {
        let mut term = Matrix3::identity() * t;
        let mut sum = term;
        for j in 1..SERIES_TERMS {
            term = k * term * (t / (j as f64 + 1.0));
            sum += term;
        }
        sum
    }
}

/// `v_t(ω) = ∫₀ᵗ e^{sω} ds` for `ω = hat(w)`.
pub fn v_factor3(w: &Vector3<f64>, t: f64) -> Result<Matrix3<f64>, KinematicsError> {
    if !t.is_finite() || !w.iter().all(|v| v.is_finite()) {
        return Err(KinematicsError::InvalidGenerator);
    }
    Ok(v_factor_unchecked(w, t))
}

/// A spatial twist: translation generator `ξ` and axis-angle vector `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist3 {
    xi: Vector3<f64>,
    omega: Vector3<f64>,
}

impl Twist3 {
    pub fn new(xi: Vector3<f64>, omega: Vector3<f64>) -> Result<Self, KinematicsError> {
        if !xi.iter().chain(omega.iter()).all(|v| v.is_finite()) {
            return Err(KinematicsError::InvalidGenerator);
        }
        Ok(Self { xi, omega })
    }

    pub fn zero() -> Self {
        Self {
            xi: Vector3::zeros(),
            omega: Vector3::zeros(),
        }
    }

    pub fn xi(&self) -> &Vector3<f64> {
        &self.xi
    }

    pub fn omega_vector(&self) -> &Vector3<f64> {
        &self.omega
    }

    pub fn omega(&self) -> Matrix3<f64> {
        hat(&self.omega)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            xi: self.xi * s,
            omega: self.omega * s,
        }
    }

    pub fn exp(&self, t: f64) -> Pose3 {
        let v = v_factor_unchecked(&self.omega, t);
        Pose3::from_parts_unchecked(rodrigues(&self.omega, t), v * self.xi)
    }

    /// `ξ₁` is the projection of `ξ` on the rotation axis; `ξ₀ ⊥ axis`.
    pub fn screw(&self) -> ScrewDecomposition<3> {
        let t2 = self.omega.norm_squared();
        if t2 == 0.0 {
            return ScrewDecomposition {
                center_offset: Vector3::zeros(),
                kernel_translation: self.xi,
                is_pure_translation: true,
            };
        }
        let along = self.omega * (self.omega.dot(&self.xi) / t2);
        let across = self.xi - along;
        // ω × (ξ⊥ × ω) = |ω|² ξ⊥
        let center_offset = across.cross(&self.omega) / t2;
        ScrewDecomposition {
            center_offset,
            kernel_translation: along,
            is_pure_translation: false,
        }
    }

    pub fn orbit_point(&self, start: &Pose3, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        self.exp(t).compose(start).apply(x)
    }
}

impl Pose3 {
    /// Principal-branch logarithm (rotation angle in `[0, π]`).
    pub fn log(&self, branch: i32) -> Result<Twist3, KinematicsError> {
        if branch != 0 {
            return Err(KinematicsError::UnsupportedBranch { branch });
        }
        if !self.is_finite() {
            return Err(KinematicsError::InvalidPose("non-finite entry"));
        }
        let r = self.rotation();
        let cos = ((r.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
        let theta = cos.acos();
        let skew = vee(r);
        let w = if theta < SERIES_THRESHOLD {
            // sin θ ≈ θ, so vee(R) ≈ w
            skew
        } else if std::f64::consts::PI - theta < NEAR_HALF_TURN {
            // (R + ᵗR)/2 − cos θ I = (1 − cos θ) a ᵗa
            let b = (r + r.transpose()) * 0.5 - Matrix3::identity() * cos;
            let mut col = 0;
            for i in 1..3 {
                if b[(i, i)] > b[(col, col)] {
                    col = i;
                }
            }
            let mut axis = b.column(col).into_owned().normalize();
            if axis.dot(&skew) < 0.0 {
                axis = -axis;
            }
            axis * theta
        } else {
            skew * (theta / theta.sin())
        };
        let v = v_factor_unchecked(&w, 1.0);
        let xi = v
            .lu()
            .solve(self.translation())
            .ok_or(KinematicsError::NoScrewOnBranch { branch })?;
        Twist3::new(xi, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exp_log_roundtrip_generic() {
        let g = Twist3::new(Vector3::new(0.3, -0.2, 1.1), Vector3::new(0.4, 0.9, -0.5)).unwrap();
        let p = g.exp(1.0);
        p.validate().unwrap();
        let back = p.log(0).unwrap();
        assert!((back.xi() - g.xi()).amax() < 1e-12);
        assert!((back.omega_vector() - g.omega_vector()).amax() < 1e-12);
    }

    #[test]
    fn log_half_turn_uses_axis_extraction() {
        let g = Twist3::new(Vector3::new(0.0, 1.0, 0.5), Vector3::new(0.0, 0.0, PI)).unwrap();
        let p = g.exp(1.0);
        let back = p.log(0).unwrap();
        assert!(back.exp(1.0).max_abs_diff(&p) < 1e-9);
        assert!((back.omega_vector().norm() - PI).abs() < 1e-9);
    }

    #[test]
    fn log_rejects_other_branches() {
        assert_eq!(
            Pose3::identity().log(1),
            Err(KinematicsError::UnsupportedBranch { branch: 1 })
        );
    }

    #[test]
    fn screw_of_z_rotation_with_axial_drift() {
        let g = Twist3::new(Vector3::new(0.0, 0.0, 1.0), Vector3::new(0.0, 0.0, 0.8)).unwrap();
        let s = g.screw();
        assert!((s.kernel_translation - Vector3::new(0.0, 0.0, 1.0)).amax() < 1e-15);
        assert_eq!(s.center_offset.dot(&Vector3::z()), 0.0);
        assert!(!s.is_pure_translation);
    }

    #[test]
    fn screw_reconstructs_xi() {
        let g = Twist3::new(Vector3::new(1.0, -2.0, 0.5), Vector3::new(0.2, 0.3, -0.7)).unwrap();
        let s = g.screw();
        let rebuilt = g.omega() * s.center_offset + s.kernel_translation;
        assert!((rebuilt - g.xi()).norm() <= 1e-10 * g.xi().norm());
        assert!((g.omega() * s.kernel_translation).norm() <= 1e-10 * (1.0 + s.kernel_translation.norm()));
    }

    #[test]
    fn v_factor_identity_holds() {
        let w = Vector3::new(1.0, 2.0, -2.0);
        for &t in &[0.0, 1e-6, 0.3, 1.0] {
            let v = v_factor3(&w, t).unwrap();
            let lhs = hat(&w) * v;
            let rhs = rodrigues(&w, t) - Matrix3::identity();
            assert!((lhs - rhs).amax() < 1e-12);
        }
    }

    #[test]
    fn screw_orbit_closed_form() {
        let g = Twist3::new(Vector3::new(0.5, 0.1, 0.7), Vector3::new(0.0, 0.6, 0.8)).unwrap();
        let s = g.screw();
        let x = Vector3::new(0.2, -0.4, 1.0);
        for i in 0..=8 {
            let t = i as f64 / 8.0;
            let closed =
                rodrigues(g.omega_vector(), t) * (x + s.center_offset) - s.center_offset + s.kernel_translation * t;
            assert!((g.orbit_point(&Pose3::identity(), &x, t) - closed).amax() < 1e-10);
        }
    }
}
