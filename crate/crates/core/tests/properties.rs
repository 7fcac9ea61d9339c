mod common;

use std::f64::consts::PI;

use cage::geometry::{clearance, intersects, CollisionKernel, ObjectShape, Obstacle, Scene, Vec2};
use cage::lie::{v_factor2, Pose2, Twist2};
use cage::sweep::{certify_piecewise, certify_simple_move, sample_collision, PiecewiseMove, SimpleMove, SweepVerdict};
use nalgebra::Matrix2;
use proptest::prelude::*;

fn twist() -> impl Strategy<Value = Twist2> {
    (-5.0..5.0f64, -5.0..5.0f64, -(PI - 0.1)..(PI - 0.1)).prop_map(|(x, y, t)| Twist2::new(Vec2::new(x, y), t).unwrap())
}

fn pose() -> impl Strategy<Value = Pose2> {
    (-4.0..4.0f64, -4.0..4.0f64, -PI..PI).prop_map(|(x, y, t)| Pose2::from_xy_angle(x, y, t))
}

fn square() -> ObjectShape {
    ObjectShape::new(vec![
        Vec2::new(-0.5, -0.5),
        Vec2::new(0.5, -0.5),
        Vec2::new(0.5, 0.5),
        Vec2::new(-0.5, 0.5),
    ])
    .unwrap()
}

fn discs() -> impl Strategy<Value = Vec<Obstacle>> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64, 0.05..0.6f64), 1..5).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (x, y, r))| Obstacle::disc(Vec2::new(x, y), r, i))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exp_log_roundtrip(g in twist()) {
        let back = g.exp(1.0).log(0).unwrap();
        prop_assert!((back.xi() - g.xi()).amax() < 1e-9);
        prop_assert!((back.theta() - g.theta()).abs() < 1e-9);
    }

    #[test]
    fn one_parameter_subgroup(g in twist(), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        prop_assert!(g.exp(s).compose(&g.exp(t)).max_abs_diff(&g.exp(s + t)) < 1e-9);
        prop_assert!(g.exp(t).inverse().max_abs_diff(&g.exp(-t)) < 1e-9);
    }

    #[test]
    fn v_factor_identity(theta in -7.0..7.0f64, t in -1.0..1.0f64, tiny in -2e-4..2e-4f64) {
        for tt in [t, tiny] {
            let omega = Matrix2::new(0.0, -theta, theta, 0.0);
            let rot = Twist2::new(Vec2::zeros(), theta).unwrap().exp(tt);
            let lhs = omega * v_factor2(theta, tt).unwrap();
            prop_assert!((lhs - (rot.rotation() - Matrix2::identity())).amax() < 1e-12);
        }
    }

    #[test]
    fn every_branch_reaches_the_target(a in pose(), b in pose(), k in -2i32..=2) {
        let rel = b.compose(&a.inverse());
        if let Ok(g) = rel.log(k) {
            prop_assert!(g.exp(1.0).compose(&a).max_abs_diff(&b) < 1e-9);
        }
    }

    #[test]
    fn collision_is_rigid_invariant(cage in discs(), p in pose(), q in pose()) {
        let shape = square().transform(&p);
        let moved: Vec<Obstacle> = cage.iter().map(|o| o.transform(&q)).collect();
        let a = clearance(&shape, &cage);
        let b = clearance(&shape.transform(&q), &moved);
        prop_assert!((a - b).abs() < 1e-9);
        if a > 1e-9 {
            prop_assert!(!intersects(&shape.transform(&q), &moved));
        }
    }

    #[test]
    fn clearance_is_lipschitz_in_pose(cage in discs(), p in pose(), g in twist(), t in 0.0..0.05f64) {
        let scene = Scene::new("p", square(), cage).unwrap();
        let kernel = CollisionKernel::new(&scene);
        let m = SimpleMove::new(g, p);
        let l = cage::sweep::velocity_bound(&m, &scene.object);
        let d = (kernel.clearance_at(&m.pose_at(0.0)) - kernel.clearance_at(&m.pose_at(t))).abs();
        prop_assert!(d <= l * t + 1e-9);
    }

    #[test]
    fn free_sweeps_have_no_sampled_collision(cage in discs(), p in pose(), g in twist()) {
        let scene = Scene::new("p", square(), cage).unwrap();
        let m = SimpleMove::new(g, p);
        if certify_simple_move(&scene, &m) == SweepVerdict::Free {
            prop_assert!(sample_collision(&CollisionKernel::new(&scene), &m, 4096).is_none());
        }
    }

    #[test]
    fn shrinking_obstacles_keeps_free_sweeps_free(cage in discs(), p in pose(), g in twist(), f in 0.1..1.0f64) {
        let m = SimpleMove::new(g, p);
        let big = Scene::new("p", square(), cage.clone()).unwrap();
        if certify_simple_move(&big, &m) == SweepVerdict::Free {
            let small: Vec<Obstacle> = cage.iter().enumerate().map(|(i, o)| match o.kind {
                cage::geometry::ObstacleKind::Disc { center, radius } => Obstacle::disc(center, radius * f, i),
                cage::geometry::ObstacleKind::Capsule { a, b, radius } => Obstacle::capsule(a, b, radius * f, i),
            }).collect();
            let small = Scene::new("p", square(), small).unwrap();
            prop_assert_eq!(certify_simple_move(&small, &m), SweepVerdict::Free);
        }
    }

    #[test]
    fn piecewise_verdict_matches_segments(cage in discs(), p in pose(), g in twist(), h in twist()) {
        let scene = Scene::new("p", square(), cage).unwrap();
        let chain = PiecewiseMove::new(p, vec![g, h]).unwrap();
        let parts: Vec<SweepVerdict> = chain.simple_moves().iter().map(|m| certify_simple_move(&scene, m)).collect();
        let whole = certify_piecewise(&scene, &chain);
        prop_assert_eq!(whole.is_free(), parts.iter().all(SweepVerdict::is_free));
    }
}
