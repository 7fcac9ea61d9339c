use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix2, Vector2};

use super::{KinematicsError, Pose2, ScrewDecomposition, SERIES_TERMS, SERIES_THRESHOLD};

/// Below this angle a branch `k != 0` log is treated as the full-turn
/// rotation `2πk`, where `v₁(ω)` is singular.
const FULL_TURN_TOLERANCE: f64 = 1e-9;

/// Maps an angle into `(-π, π]`.
pub fn principal_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

/// The generator `ω = θ J` with `J` the quarter-turn matrix.
fn omega_matrix(theta: f64) -> Matrix2<f64> {
    Matrix2::new(0.0, -theta, theta, 0.0)
}

fn rotation(angle: f64) -> Matrix2<f64> {
    let (s, c) = angle.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// `v_t(ω) = ∫₀ᵗ e^{sω} ds` for the planar generator `ω = θJ`.
pub fn v_factor2(theta: f64, t: f64) -> Result<Matrix2<f64>, KinematicsError> {
    if !theta.is_finite() || !t.is_finite() {
        return Err(KinematicsError::InvalidGenerator);
    }
    Ok(v_factor_unchecked(theta, t))
}

fn v_factor_unchecked(theta: f64, t: f64) -> Matrix2<f64> {
    let x = theta * t;
    if x.abs() >= SERIES_THRESHOLD {
        // (e^{tω} − I) ω⁻¹ with 1 − cos x written as 2 sin²(x/2).
        let s = x.sin();
        let h = (0.5 * x).sin();
        let c1 = 2.0 * h * h;
        Matrix2::new(s / theta, -c1 / theta, c1 / theta, s / theta)
    } else {
        // Σ_{k≥0} t^{k+1} ω^k / (k+1)!
        let omega = omega_matrix(theta);
        let mut term = Matrix2::identity() * t;
        let mut sum = term;
        for k in 1..SERIES_TERMS {
            term = omega * term * (t / (k as f64 + 1.0));
            sum += term;
        }
        sum
    }
}

/// A planar twist: translation generator `ξ` and rotation rate `θ` (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist2 {
    xi: Vector2<f64>,
    theta: f64,
}

impl Twist2 {
    pub fn new(xi: Vector2<f64>, theta: f64) -> Result<Self, KinematicsError> {
        if !theta.is_finite() || !xi.iter().all(|v| v.is_finite()) {
            return Err(KinematicsError::InvalidGenerator);
        }
        Ok(Self { xi, theta })
    }

    pub fn zero() -> Self {
        Self {
            xi: Vector2::zeros(),
            theta: 0.0,
        }
    }

    pub fn translation(xi: Vector2<f64>) -> Result<Self, KinematicsError> {
        Self::new(xi, 0.0)
    }

    pub fn xi(&self) -> &Vector2<f64> {
        &self.xi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The antisymmetric matrix `ω`.
    pub fn omega(&self) -> Matrix2<f64> {
        omega_matrix(self.theta)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            xi: self.xi * s,
            theta: self.theta * s,
        }
    }

    /// `exp(t𝔤)`: rotation `e^{tω}`, translation `v_t(ω) ξ`.
    pub fn exp(&self, t: f64) -> Pose2 {
        let v = v_factor_unchecked(self.theta, t);
        Pose2::from_parts_unchecked(rotation(self.theta * t), v * self.xi)
    }

    pub fn screw(&self) -> ScrewDecomposition<2> {
        if self.theta == 0.0 {
            return ScrewDecomposition {
                center_offset: Vector2::zeros(),
                kernel_translation: self.xi,
                is_pure_translation: true,
            };
        }
        // ω⁻¹ = −J/θ, and ker ω is trivial.
        let center_offset = Vector2::new(self.xi[1], -self.xi[0]) / self.theta;
        ScrewDecomposition {
            center_offset,
            kernel_translation: Vector2::zeros(),
            is_pure_translation: false,
        }
    }

    /// Position at parameter `t` of the point `x` carried by the orbit that
    /// starts at `start`.
    pub fn orbit_point(&self, start: &Pose2, x: &Vector2<f64>, t: f64) -> Vector2<f64> {
        self.exp(t).compose(start).apply(x)
    }
}

impl Pose2 {
    /// Logarithm on branch `k`: the twist with rotation angle
    /// `principal_angle + 2πk` whose unit-time exponential is `self`.
    pub fn log(&self, branch: i32) -> Result<Twist2, KinematicsError> {
        if !self.is_finite() {
            return Err(KinematicsError::InvalidPose("non-finite entry"));
        }
        let phi = self.angle();
        let u = *self.translation();
        if branch == 0 && phi == 0.0 {
            return Twist2::translation(u);
        }
        if branch != 0 && phi.abs() < FULL_TURN_TOLERANCE {
            if u.norm() > 0.0 {
                return Err(KinematicsError::NoScrewOnBranch { branch });
            }
            return Twist2::new(Vector2::zeros(), phi + TAU * branch as f64);
        }
        let theta = phi + TAU * branch as f64;
        let v = v_factor_unchecked(theta, 1.0);
        // v = [[a, −b], [b, a]] is a scaled rotation; invert it directly.
        let (a, b) = (v[(0, 0)], v[(1, 0)]);
        let det = a * a + b * b;
        if det == 0.0 {
            return Err(KinematicsError::NoScrewOnBranch { branch });
        }
        let xi = Vector2::new(a * u[0] + b * u[1], -b * u[0] + a * u[1]) / det;
        Twist2::new(xi, theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    /// Midpoint-rule quadrature of `∫₀ᵗ e^{sω} ds · ξ`.
    fn quadrature(theta: f64, t: f64, xi: Vector2<f64>, steps: usize) -> Vector2<f64> {
        let h = t / steps as f64;
        let mut acc = Vector2::zeros();
        for i in 0..steps {
            let s = (i as f64 + 0.5) * h;
            acc += rotation(theta * s) * xi;
        }
        acc * h
    }

    #[test]
    fn v_factor_of_zero_generator_is_scaled_identity() {
        let v = v_factor2(0.0, 0.37).unwrap();
        assert_eq!(v, Matrix2::identity() * 0.37);
    }

    #[test]
    fn v_factor_quarter_turn_matches_quadrature() {
        let oracle = quadrature(FRAC_PI_2, 1.0, Vector2::new(1.0, 0.0), 1_000_000);
        let v = v_factor2(FRAC_PI_2, 1.0).unwrap() * Vector2::new(1.0, 0.0);
        let expected = 2.0 / PI;
        assert!((oracle[0] - expected).abs() < 1e-12 && (oracle[1] - expected).abs() < 1e-12);
        assert!((v - oracle).amax() < 1e-12);
    }

    #[test]
    fn v_factor_tiny_angle_is_near_identity() {
        let v = v_factor2(1e-8, 1.0).unwrap();
        assert!((v - Matrix2::identity()).amax() < 1e-7);
    }

    #[test]
    fn v_factor_rejects_non_finite() {
        assert_eq!(v_factor2(f64::NAN, 1.0), Err(KinematicsError::InvalidGenerator));
        assert_eq!(v_factor2(1.0, f64::INFINITY), Err(KinematicsError::InvalidGenerator));
        assert!(Twist2::new(Vector2::new(f64::NAN, 0.0), 0.0).is_err());
    }

    #[test]
    fn v_factor_is_continuous_across_series_switch() {
        for theta in [1.0f64, -1.0, 3.0] {
            let t = SERIES_THRESHOLD / theta.abs();
            let below = v_factor_unchecked(theta, t * (1.0 - 1e-12));
            let above = v_factor_unchecked(theta, t);
            assert!((below - above).amax() < 1e-10);
        }
    }

    #[test]
    fn exp_pure_translation() {
        let g = Twist2::new(Vector2::new(1.0, 2.0), 0.0).unwrap();
        let p = g.exp(0.5);
        assert_eq!(*p.rotation(), Matrix2::identity());
        assert_eq!(*p.translation(), Vector2::new(0.5, 1.0));
    }

    #[test]
    fn exp_quarter_turn() {
        let g = Twist2::new(Vector2::new(1.0, 0.0), FRAC_PI_2).unwrap();
        let p = g.exp(1.0);
        assert!((p.angle() - FRAC_PI_2).abs() < 1e-15);
        let oracle = quadrature(FRAC_PI_2, 1.0, Vector2::new(1.0, 0.0), 1_000_000);
        assert!((p.translation() - oracle).amax() < 1e-12);
    }

    #[test]
    fn exp_at_zero_is_identity() {
        let g = Twist2::new(Vector2::new(3.0, -1.0), 2.5).unwrap();
        assert!(g.exp(0.0).max_abs_diff(&Pose2::identity()) == 0.0);
    }

    #[test]
    fn exp_then_negated_exp_is_identity() {
        let g = Twist2::new(Vector2::new(0.3, -1.7), 2.9).unwrap();
        let round = g.scaled(-1.0).exp(1.0).compose(&g.exp(1.0));
        assert!(round.max_abs_diff(&Pose2::identity()) < 1e-9);
    }

    #[test]
    fn log_identity_is_zero_twist() {
        assert_eq!(Pose2::identity().log(0).unwrap(), Twist2::zero());
    }

    #[test]
    fn log_pure_rotation_about_origin() {
        let g = Pose2::from_xy_angle(0.0, 0.0, FRAC_PI_2).log(0).unwrap();
        assert!((g.theta() - FRAC_PI_2).abs() < 1e-15);
        assert!(g.xi().amax() < 1e-15);
    }

    #[test]
    fn log_branch_one_roundtrips() {
        let p = Pose2::from_xy_angle(2.0 / PI, 2.0 / PI, FRAC_PI_2);
        let g = p.log(1).unwrap();
        assert!((g.theta() - (FRAC_PI_2 + TAU)).abs() < 1e-12);
        assert!(g.exp(1.0).max_abs_diff(&p) < 1e-9);
        // the principal branch recovers the generating twist (1, 0)
        let g0 = p.log(0).unwrap();
        assert!((g0.xi() - Vector2::new(1.0, 0.0)).amax() < 1e-12);
    }

    #[test]
    fn log_full_turn_branch_without_screw() {
        let p = Pose2::from_xy_angle(1.0, 0.0, 0.0);
        assert_eq!(p.log(1), Err(KinematicsError::NoScrewOnBranch { branch: 1 }));
        assert_eq!(p.log(-2), Err(KinematicsError::NoScrewOnBranch { branch: -2 }));
        let g = Pose2::identity().log(1).unwrap();
        assert!((g.theta() - TAU).abs() < 1e-15);
        assert!(g.exp(1.0).max_abs_diff(&Pose2::identity()) < 1e-12);
    }

    #[test]
    fn screw_of_translation() {
        let s = Twist2::new(Vector2::new(3.0, 4.0), 0.0).unwrap().screw();
        assert!(s.is_pure_translation);
        assert_eq!(s.kernel_translation, Vector2::new(3.0, 4.0));
        assert_eq!(s.center_offset, Vector2::zeros());
    }

    #[test]
    fn screw_of_quarter_turn() {
        let g = Twist2::new(Vector2::new(1.0, 0.0), FRAC_PI_2).unwrap();
        let s = g.screw();
        assert!(!s.is_pure_translation);
        assert_eq!(s.kernel_translation, Vector2::zeros());
        assert!((s.center_offset - Vector2::new(0.0, -2.0 / PI)).amax() < 1e-15);
        assert!((g.omega() * s.center_offset - g.xi()).amax() < 1e-15);
    }

    #[test]
    fn rotation_orbit_fixes_its_center() {
        let g = Twist2::new(Vector2::new(0.4, -1.3), 2.2).unwrap();
        let c = g.screw().rotation_center();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            assert!((g.orbit_point(&Pose2::identity(), &c, t) - c).amax() < 1e-14);
        }
    }

    #[test]
    fn translation_orbit_is_linear() {
        let g = Twist2::new(Vector2::new(2.0, -1.0), 0.0).unwrap();
        let x = Vector2::new(0.5, 0.25);
        let p = g.orbit_point(&Pose2::identity(), &x, 0.3);
        assert!((p - (x + g.xi() * 0.3)).amax() < 1e-15);
    }

    #[test]
    fn half_turn_orbit_stays_on_circle() {
        let g = Twist2::new(Vector2::new(0.0, 1.0), PI).unwrap();
        let s = g.screw();
        let c = s.rotation_center();
        let x = Vector2::new(1.0, 0.0);
        let r = (x - c).norm();
        for i in 0..=16 {
            let t = i as f64 / 16.0;
            let p = g.orbit_point(&Pose2::identity(), &x, t);
            // closed form e^{tω}(x + ξ₀) − ξ₀
            let closed = rotation(PI * t) * (x + s.center_offset) - s.center_offset;
            assert!((p - closed).amax() < 1e-10);
            assert!(((p - c).norm() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn principal_angle_range() {
        assert_eq!(principal_angle(PI), PI);
        assert_eq!(principal_angle(-PI), PI);
        assert!((principal_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((principal_angle(TAU + 0.5) - 0.5).abs() < 1e-12);
    }
}
